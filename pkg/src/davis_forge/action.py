"""Finite group actions on simplicial complexes."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .complex import SimplicialComplex, Subdivision, full_subcomplex, union, EMPTY
from .errors import InputError


def _compose(p, q):
    return tuple(p[i] for i in q)


def _closure(gens: Iterable[tuple], degree: int) -> list:
    ident = tuple(range(degree))
    gens = [g for g in gens if g != ident]
    seen = {ident: 0}
    out = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _compose(x, g)
            if y not in seen:
                seen[y] = len(out)
                out.append(y)
                queue.append(y)
    return out


@dataclass(frozen=True)
class PermGroup:
    """A finite group given by generating permutations of ``range(degree)``."""

    degree: int
    generators: tuple

    @cached_property
    def elements(self) -> tuple:
        return tuple(_closure(self.generators, self.degree))

    @cached_property
    def id_of(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> tuple:
        return tuple(range(self.degree))

    def mul(self, a: tuple, b: tuple) -> tuple:
        return _compose(a, b)

    def inverse(self, a: tuple) -> tuple:
        inv = [0] * len(a)
        for i, j in enumerate(a):
            inv[j] = i
        return tuple(inv)

    def element_order(self, a: tuple) -> int:
        k, x = 1, a
        while x != self.identity:
            x = _compose(x, a)
            k += 1
        return k

    def subgroup(self, gens: Iterable[tuple]) -> frozenset:
        return frozenset(_closure(gens, self.degree))

    def all_subgroups(self) -> list:
        """Every subgroup, as frozensets of elements (joins of cyclic subgroups)."""
        cyclic = {self.subgroup([g]) for g in self.elements}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            new = set()
            for H in frontier:
                for C in cyclic:
                    if C <= H:
                        continue
                    J = self.subgroup(list(H) + list(C))
                    if J not in found:
                        new.add(J)
            found |= new
            frontier = new
        return sorted(found, key=lambda H: (len(H), sorted(H)))

    def is_soluble(self, H: Iterable[tuple] | None = None) -> bool:
        H = frozenset(self.elements if H is None else H)
        while len(H) > 1:
            comms = {
                _compose(_compose(self.inverse(a), self.inverse(b)), _compose(a, b))
                for a in H for b in H
            }
            D = self.subgroup(comms)
            if D == H:
                return False
            H = D
        return True


@dataclass(frozen=True)
class SimplicialAction:
    """A permutation group acting on a complex through its vertex indices.

    The group acts on ``range(degree)``; the first ``len(complex.vertices)``
    points are the vertices and any further points are auxiliary, which
    lets a nontrivial group act trivially on the complex.
    """

    complex: SimplicialComplex
    group: PermGroup
    generator_names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.complex.vertices)
        if self.group.degree < n:
            raise InputError("PARSE_ERROR", "group domain smaller than the vertex set")
        for g in self.group.generators:
            if sorted(g[:n]) != list(range(n)):
                raise InputError("PARSE_ERROR", "generator does not preserve the vertex set")
            for s in self.complex.simplices:
                if self._image(g, s) not in self.complex.simplices:
                    raise InputError("NOT_SIMPLICIAL", f"image of simplex {s} is not a simplex")

    @cached_property
    def _vindex(self) -> dict:
        return {v: i for i, v in enumerate(self.complex.vertices)}

    def _image(self, g, simplex):
        V = self.complex.vertices
        return tuple(sorted(V[g[self._vindex[v]]] for v in simplex))

    def apply(self, g: tuple, simplex) -> tuple:
        return self._image(g, simplex)

    def vertex_map(self, g: tuple) -> dict:
        V = self.complex.vertices
        return {v: V[g[i]] for i, v in enumerate(V)}

    def vertex_perms(self) -> list:
        return [self.vertex_map(g) for g in self.group.elements]

    def fixes_vertex(self, g, v) -> bool:
        i = self._vindex[v]
        return g[i] == i

    def to_json(self) -> dict:
        V = self.complex.vertices
        domain = list(V) + [f"_aux{i}" for i in range(self.group.degree - len(V))]
        names = self.generator_names or tuple(f"g{i}" for i in range(len(self.group.generators)))
        return {
            "group_generators": {
                name: {domain[i]: domain[j] for i, j in enumerate(g)}
                for name, g in zip(names, self.group.generators)
            }
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def action_from_generators(X: SimplicialComplex, generators: Mapping) -> SimplicialAction:
    """``generators[name] = {point: image}``; points outside the vertex set are auxiliary.

    Vertices missing from a generator's map are fixed.
    """
    extra = sorted({str(p) for m in generators.values() for kv in m.items() for p in kv} - set(X.vertices))
    domain = list(X.vertices) + extra
    pos = {p: i for i, p in enumerate(domain)}
    perms, names = [], []
    for name, m in sorted(generators.items()):
        img = list(range(len(domain)))
        for a, b in m.items():
            img[pos[str(a)]] = pos[str(b)]
        if sorted(img) != list(range(len(domain))):
            raise InputError("PARSE_ERROR", f"generator {name!r} is not a bijection")
        perms.append(tuple(img))
        names.append(str(name))
    return SimplicialAction(X, PermGroup(len(domain), tuple(perms)), tuple(names))


def action_from_json(X: SimplicialComplex, doc) -> SimplicialAction:
    try:
        gens = doc["group_generators"]
        if not isinstance(gens, Mapping):
            raise TypeError
    except (KeyError, TypeError):
        raise InputError("PARSE_ERROR", "action needs 'group_generators'") from None
    return action_from_generators(X, gens)


def trivial_action(X: SimplicialComplex) -> SimplicialAction:
    return SimplicialAction(X, PermGroup(len(X.vertices), ()))


def is_admissible(act: SimplicialAction) -> bool:
    """Setwise stabilizers of simplices fix them pointwise."""
    X = act.complex
    for g in act.group.elements:
        for s in X.simplices:
            if len(s) > 1 and act.apply(g, s) == s and not all(act.fixes_vertex(g, v) for v in s):
                return False
    return True


def transport_to_subdivision(act: SimplicialAction, sd: Subdivision) -> SimplicialAction:
    """The induced action on the barycentric subdivision."""
    if sd.original.simplices != act.complex.simplices:
        raise InputError("AMBIENT_MISMATCH", "subdivision is not of the acted-on complex")
    Xp = sd.complex
    n_old = len(act.complex.vertices)
    aux = act.group.degree - n_old
    pos = {w: i for i, w in enumerate(Xp.vertices)}
    perms = []
    for g in act.group.generators:
        img = [pos[sd.vertex_of[act.apply(g, sd.provenance[w])]] for w in Xp.vertices]
        img += [len(Xp.vertices) + g[n_old + k] - n_old for k in range(aux)]
        perms.append(tuple(img))
    return SimplicialAction(Xp, PermGroup(len(Xp.vertices) + aux, tuple(perms)), act.generator_names)


def _require_admissible(act):
    if not is_admissible(act):
        raise InputError("NOT_ADMISSIBLE", "action is not admissible; subdivide first")


def fixed_subcomplex(act: SimplicialAction, H: Iterable[tuple] | None = None, check: bool = True) -> SimplicialComplex:
    """Fixed set of the subgroup generated by ``H`` (default: the whole group)."""
    if check:
        _require_admissible(act)
    gens = list(act.group.generators if H is None else H)
    fixed = [v for v in act.complex.vertices if all(act.fixes_vertex(g, v) for g in gens)]
    return full_subcomplex(act.complex, fixed)


def prime_order_elements(G: PermGroup) -> list:
    from .linalg import is_prime

    return [g for g in G.elements if is_prime(G.element_order(g))]


def singular_subcomplex(act: SimplicialAction, check: bool = True) -> SimplicialComplex:
    """Union of fixed sets of prime-order elements."""
    if check:
        _require_admissible(act)
    parts = [fixed_subcomplex(act, [g], check=False) for g in prime_order_elements(act.group)]
    return union(*parts) if parts else EMPTY


def orbits_of_simplices(act: SimplicialAction) -> list:
    """Simplex orbits as sorted lists, ordered by their least simplex."""
    X = act.complex
    seen, orbits = set(), []
    for s in X.sorted_simplices():
        if s in seen:
            continue
        orb = {act.apply(g, s) for g in act.group.elements}
        seen |= orb
        orbits.append(sorted(orb, key=lambda t: (len(t), t)))
    return orbits


def stabilizer(act: SimplicialAction, simplex) -> list:
    s = tuple(sorted(simplex))
    return [g for g in act.group.elements if act.apply(g, s) == s]
