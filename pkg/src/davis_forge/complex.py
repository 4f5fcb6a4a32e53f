"""Finite abstract simplicial complexes and the constructions built on them.

Vertices are strings, ordered lexicographically; a simplex is the sorted
tuple of its vertices.  Complexes are immutable.  Subcomplexes are ordinary
``SimplicialComplex`` values whose simplex set is contained in the ambient
one, so union and intersection are plain set operations.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import InputError

Simplex = tuple  # strictly increasing tuple of vertex ids


def _canon(simplex: Iterable) -> Simplex:
    return tuple(sorted(set(str(v) for v in simplex)))


def _all_faces(simplex: Simplex):
    for k in range(1, len(simplex) + 1):
        yield from itertools.combinations(simplex, k)


@dataclass(frozen=True)
class SimplicialComplex:
    """A face-closed finite set of nonempty simplices.

    Build instances with :func:`from_maximal` or :meth:`from_simplices`;
    the constructor itself trusts its arguments.
    """

    vertices: tuple
    simplices: frozenset = field(repr=False)

    @classmethod
    def from_simplices(cls, simplices: Iterable, vertices: Iterable = (), check: bool = True):
        simps = frozenset(_canon(s) for s in simplices)
        verts = set(str(v) for v in vertices)
        for s in simps:
            verts.update(s)
        X = cls(tuple(sorted(verts)), simps | frozenset((v,) for v in verts))
        if check:
            for s in X.simplices:
                if not s:
                    raise InputError("EMPTY_SIMPLEX", "the empty simplex is never stored")
                for face in itertools.combinations(s, len(s) - 1):
                    if face and face not in X.simplices:
                        raise InputError("NOT_FACE_CLOSED", f"face {face} of {s} missing")
        return X

    # -- basic queries -------------------------------------------------
    @cached_property
    def by_dim(self) -> dict:
        out: dict = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        for d in out:
            out[d].sort()
        return out

    @property
    def dim(self) -> int:
        return max(self.by_dim, default=-1)

    def simplices_of_dim(self, d: int) -> list:
        return self.by_dim.get(d, [])

    def f_vector(self) -> tuple:
        return tuple(len(self.simplices_of_dim(d)) for d in range(self.dim + 1))

    def sorted_simplices(self) -> list:
        return [s for d in range(self.dim + 1) for s in self.by_dim[d]]

    def __contains__(self, simplex) -> bool:
        return _canon(simplex) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def __le__(self, other: "SimplicialComplex") -> bool:
        return self.simplices <= other.simplices

    def is_empty(self) -> bool:
        return not self.simplices

    @cached_property
    def maximal_simplices(self) -> list:
        maximal = set(self.simplices)
        for s in self.simplices:
            for face in itertools.combinations(s, len(s) - 1):
                maximal.discard(face)
        return sorted(maximal, key=lambda s: (len(s), s))

    def skeleton(self, k: int) -> "SimplicialComplex":
        return SimplicialComplex(self.vertices, frozenset(s for s in self.simplices if len(s) <= k + 1))

    def graph(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.vertices)
        G.add_edges_from(self.simplices_of_dim(1))
        return G

    def star(self, v) -> "SimplicialComplex":
        """Closed star of a vertex."""
        v = str(v)
        tops = [s for s in self.simplices if v in s]
        return from_maximal(sorted({u for s in tops for u in s}), tops)

    # -- serialisation ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "maximal_simplices": [list(s) for s in self.maximal_simplices],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "SimplicialComplex":
        try:
            vertices = doc["vertices"]
            maximal = doc["maximal_simplices"]
        except (KeyError, TypeError):
            raise InputError("PARSE_ERROR", "complex needs 'vertices' and 'maximal_simplices'") from None
        return from_maximal(vertices, maximal)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


EMPTY = SimplicialComplex((), frozenset())


def from_maximal(vertices: Iterable, maximal_simplices: Iterable) -> SimplicialComplex:
    """Face closure of ``maximal_simplices`` over the listed vertex set."""
    verts = [str(v) for v in vertices]
    vset = set(verts)
    simplices = set((v,) for v in verts)
    for s in maximal_simplices:
        s = _canon(s)
        if not s:
            continue
        missing = [v for v in s if v not in vset]
        if missing:
            raise InputError("UNKNOWN_VERTEX", f"simplex {s} uses unlisted vertices {missing}")
        if s not in simplices:
            simplices.update(_all_faces(s))
    return SimplicialComplex(tuple(sorted(vset)), frozenset(simplices))


def is_flag(X: SimplicialComplex) -> bool:
    """True iff every clique of the 1-skeleton spans a simplex."""
    G = X.graph()
    return all(_canon(c) in X.simplices for c in nx.find_cliques(G))


def is_flag_no_square(X: SimplicialComplex) -> bool:
    """Flag and no induced 4-cycle in the 1-skeleton."""
    if not is_flag(X):
        raise InputError("NOT_FLAG", "flag-no-square is only defined for flag complexes")
    G = X.graph()
    for a, c in itertools.combinations(X.vertices, 2):
        if G.has_edge(a, c):
            continue
        common = [u for u in G[a] if G.has_edge(u, c)]
        for b, d in itertools.combinations(common, 2):
            if not G.has_edge(b, d):
                return False
    return True


def flag_from_graph(graph) -> SimplicialComplex:
    """Clique complex of a simple graph (networkx graph or edge list)."""
    if not isinstance(graph, nx.Graph):
        G = nx.Graph()
        G.add_edges_from(graph)
        graph = G
    G = nx.relabel_nodes(graph, str)
    G.remove_edges_from(nx.selfloop_edges(G))
    return from_maximal(G.nodes, nx.find_cliques(G))


def is_subcomplex(Y: SimplicialComplex, X: SimplicialComplex) -> bool:
    return Y.simplices <= X.simplices


def full_subcomplex(X: SimplicialComplex, vertex_subset: Iterable) -> SimplicialComplex:
    keep = set(str(v) for v in vertex_subset)
    unknown = keep.difference(X.vertices)
    if unknown:
        raise InputError("UNKNOWN_VERTEX", f"{sorted(unknown)} not in complex")
    return SimplicialComplex(
        tuple(v for v in X.vertices if v in keep),
        frozenset(s for s in X.simplices if keep.issuperset(s)),
    )


def is_full_subcomplex(X: SimplicialComplex, Y: SimplicialComplex) -> bool:
    if not is_subcomplex(Y, X):
        raise InputError("NOT_SUBCOMPLEX", "Y is not a subcomplex of X")
    return full_subcomplex(X, Y.vertices).simplices == Y.simplices


def vertex_deletion(X: SimplicialComplex, v) -> SimplicialComplex:
    v = str(v)
    if v not in X.vertices:
        raise InputError("UNKNOWN_VERTEX", f"{v!r} not in complex")
    return full_subcomplex(X, [u for u in X.vertices if u != v])


def cone(X: SimplicialComplex, apex: str) -> SimplicialComplex:
    apex = str(apex)
    if apex in X.vertices:
        raise InputError("NAME_COLLISION", f"apex {apex!r} is already a vertex")
    simps = set(X.simplices)
    simps.add((apex,))
    simps.update(_canon(s + (apex,)) for s in X.simplices)
    return SimplicialComplex(tuple(sorted(X.vertices + (apex,))), frozenset(simps))


def _check_ambient(parts, ambient):
    if ambient is not None:
        for P in parts:
            if not is_subcomplex(P, ambient):
                raise InputError("AMBIENT_MISMATCH", "part is not a subcomplex of the ambient complex")


def union(*parts: SimplicialComplex, ambient: SimplicialComplex | None = None) -> SimplicialComplex:
    _check_ambient(parts, ambient)
    simps = frozenset().union(*(P.simplices for P in parts))
    verts = set().union(*(P.vertices for P in parts))
    return SimplicialComplex(tuple(sorted(verts)), simps)


def intersection(*parts: SimplicialComplex, ambient: SimplicialComplex | None = None) -> SimplicialComplex:
    if not parts:
        if ambient is None:
            raise InputError("AMBIENT_MISMATCH", "empty intersection needs an ambient complex")
        return ambient
    _check_ambient(parts, ambient)
    simps = frozenset.intersection(*(P.simplices for P in parts))
    verts = sorted(s[0] for s in simps if len(s) == 1)
    return SimplicialComplex(tuple(verts), simps)


def euler_characteristic(X: SimplicialComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(X.f_vector()))


# -- barycentric subdivision ----------------------------------------------

@dataclass(frozen=True)
class Subdivision:
    """A barycentric subdivision with its vertex provenance.

    ``provenance[w]`` is the simplex of the original complex that the new
    vertex ``w`` stands for; ``vertex_of`` is the inverse map.
    """

    complex: SimplicialComplex
    provenance: Mapping
    original: SimplicialComplex

    @cached_property
    def vertex_of(self) -> dict:
        return {s: w for w, s in self.provenance.items()}

    def subcomplex_of(self, M: SimplicialComplex) -> SimplicialComplex:
        """The subdivision M' of a subcomplex M, inside this subdivision."""
        if not is_subcomplex(M, self.original):
            raise InputError("NOT_SUBCOMPLEX", "M is not a subcomplex of the subdivided complex")
        return full_subcomplex(self.complex, [self.vertex_of[s] for s in M.simplices])


def simplex_label(simplex: Sequence) -> str:
    return "{" + ",".join(simplex) + "}"


def order_complex(elements: Sequence, less, labels: Mapping | None = None) -> SimplicialComplex:
    """Order complex of a finite poset given by a strict order predicate."""
    labels = labels or {e: str(e) for e in elements}
    up = {e: [f for f in elements if less(e, f)] for e in elements}
    chains = []

    def extend(chain):
        chains.append(tuple(labels[e] for e in chain))
        for f in up[chain[-1]]:
            extend(chain + [f])

    for e in elements:
        extend([e])
    return SimplicialComplex.from_simplices(chains, (labels[e] for e in elements), check=False)


def barycentric_subdivision(X: SimplicialComplex, label=simplex_label) -> Subdivision:
    """Order complex of the face poset; new vertices are labelled by ``label(simplex)``."""
    simplices = X.sorted_simplices()
    labels = {s: label(s) for s in simplices}
    if len(set(labels.values())) != len(labels):
        raise InputError("NAME_COLLISION", "simplex labels are not distinct")
    sets = {s: frozenset(s) for s in simplices}
    Xp = order_complex(simplices, lambda a, b: sets[a] < sets[b], labels)
    provenance = {labels[s]: s for s in simplices}
    return Subdivision(Xp, provenance, X)


# -- covers and nerves -------------------------------------------------------

@dataclass(frozen=True)
class Cover:
    ambient: SimplicialComplex
    parts: tuple  # ((name, SimplicialComplex), ...)

    def __post_init__(self):
        names = [n for n, _ in self.parts]
        if len(set(names)) != len(names):
            raise InputError("NAME_COLLISION", "cover part names must be distinct")
        _check_ambient([P for _, P in self.parts], self.ambient)

    @classmethod
    def of(cls, ambient, parts) -> "Cover":
        items = parts.items() if isinstance(parts, Mapping) else parts
        return cls(ambient, tuple((str(n), P) for n, P in items))

    def union(self) -> SimplicialComplex:
        return union(*(P for _, P in self.parts)) if self.parts else EMPTY

    def to_json(self) -> dict:
        doc = self.ambient.to_json()
        doc["parts"] = [
            {"name": n, "vertices": list(P.vertices), "maximal_simplices": [list(s) for s in P.maximal_simplices]}
            for n, P in self.parts
        ]
        return doc

    @classmethod
    def from_json(cls, doc) -> "Cover":
        ambient = SimplicialComplex.from_json(doc)
        try:
            parts = []
            for p in doc["parts"]:
                maximal = p["maximal_simplices"]
                verts = p.get("vertices", sorted({str(v) for s in maximal for v in s}))
                unknown = set(map(str, verts)).difference(ambient.vertices)
                if unknown:
                    raise InputError("UNKNOWN_VERTEX", f"cover part uses {sorted(unknown)}")
                parts.append((str(p["name"]), from_maximal(verts, maximal)))
        except (KeyError, TypeError, AttributeError):
            raise InputError("PARSE_ERROR", "cover parts need 'name' and 'maximal_simplices'") from None
        return cls.of(ambient, parts)


def nerve_of_cover(cover: Cover) -> SimplicialComplex:
    """Vertices are part names; a set of parts spans a simplex iff they share a simplex."""
    names = [n for n, _ in cover.parts]
    sets = [P.simplices for _, P in cover.parts]
    for n, s in zip(names, sets):
        if not s:
            raise InputError("EMPTY_PART", f"cover part {n!r} is empty")
    simplices = []

    def extend(idx, common):
        simplices.append(tuple(names[i] for i in idx))
        for j in range(idx[-1] + 1, len(names)):
            # intersections of subcomplexes are nonempty iff they share a vertex
            meet = common & sets[j]
            if meet:
                extend(idx + [j], meet)

    for i in range(len(names)):
        extend([i], sets[i])
    return SimplicialComplex.from_simplices(simplices, names, check=False)
