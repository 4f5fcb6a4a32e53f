"""Right-angled Coxeter systems and their finite quotients.

A finite quotient W/N is described by one permutation per generator; N is
the kernel of the induced homomorphism.  Elements of the quotient are
enumerated breadth first from the identity, multiplying on the right by
generators in nerve-vertex order, so element ids are stable.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .complex import SimplicialComplex, is_flag
from .config import DEFAULT_CAPS
from .errors import CapExceeded, InputError


@dataclass(frozen=True)
class CoxeterSystem:
    """(W, S) with S the vertices of a flag nerve; edges are commuting pairs."""

    nerve: SimplicialComplex

    @property
    def generators(self) -> tuple:
        return self.nerve.vertices

    @cached_property
    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.generators)}

    def commute(self, s, t) -> bool:
        return s == t or tuple(sorted((s, t))) in self.nerve.simplices

    def m(self, s, t):
        if s == t:
            return 1
        return 2 if self.commute(s, t) else float("inf")

    def is_spherical(self, T) -> bool:
        T = tuple(sorted(T))
        return not T or T in self.nerve.simplices


def coxeter_from_flag(L: SimplicialComplex) -> CoxeterSystem:
    if not is_flag(L):
        raise InputError("NOT_FLAG", "the nerve of a right-angled Coxeter system must be flag")
    return CoxeterSystem(L)


def _compose(p: tuple, q: tuple) -> tuple:
    """p o q (apply q first)."""
    return tuple(p[i] for i in q)


@dataclass(frozen=True)
class FiniteQuotient:
    """Ḡ = W/N given by permutation images of the generators.

    ``elements[i]`` is a permutation tuple, ``words[i]`` a shortest word (as
    generator indices) reaching it, ``right[i][s]`` the id of element i times
    generator s.  ``parity`` is the sign character when N lies in W^ev and
    ``None`` otherwise.
    """

    system: CoxeterSystem
    degree: int
    images: tuple = field(repr=False)  # one permutation per generator, nerve order
    elements: tuple = field(repr=False)
    words: tuple = field(repr=False)
    right: tuple = field(repr=False)
    parity: tuple | None = field(repr=False)
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def id_of(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}

    def mul(self, a: int, b: int) -> int:
        return self.id_of[_compose(self.elements[a], self.elements[b])]

    def word_element(self, word: Sequence) -> int:
        g = 0
        for s in word:
            g = self.right[g][self.system.index[s] if isinstance(s, str) else s]
        return g

    def generator_element(self, s) -> int:
        return self.right[0][self.system.index[s]]

    def to_json(self) -> dict:
        gens = self.system.generators
        return {
            "domain_size": self.degree,
            "generator_images": {s: list(p) for s, p in zip(gens, self.images)},
        }


def quotient_from_permutations(
    sys: CoxeterSystem,
    images: Mapping | Sequence,
    limit: int | None = None,
    name: str = "",
) -> FiniteQuotient:
    """Check the defining relations and enumerate the image group."""
    limit = DEFAULT_CAPS.quotient if limit is None else limit
    gens = sys.generators
    if isinstance(images, Mapping):
        missing = [s for s in gens if s not in images]
        if missing:
            raise InputError("UNKNOWN_VERTEX", f"no image for generators {missing}")
        perms = [tuple(int(x) for x in images[s]) for s in gens]
    else:
        perms = [tuple(int(x) for x in p) for p in images]
        if len(perms) != len(gens):
            raise InputError("SHAPE_MISMATCH", "one permutation per generator required")
    degree = len(perms[0]) if perms else 0
    ident = tuple(range(degree))
    for s, p in zip(gens, perms):
        if len(p) != degree or sorted(p) != list(ident):
            raise InputError("PARSE_ERROR", f"image of {s} is not a permutation of {degree} points")
        if _compose(p, p) != ident:
            raise InputError("RELATION_VIOLATION", f"image of {s} is not an involution")
    for e in sys.nerve.simplices_of_dim(1):
        a, b = (perms[sys.index[v]] for v in e)
        if _compose(a, b) != _compose(b, a):
            raise InputError("RELATION_VIOLATION", f"images of {e[0]} and {e[1]} do not commute")

    elements, words, right = [ident], [()], []
    id_of = {ident: 0}
    queue = deque([0])
    while queue:
        g = queue.popleft()
        row = []
        for si, p in enumerate(perms):
            h = _compose(elements[g], p)
            j = id_of.get(h)
            if j is None:
                j = len(elements)
                if j >= limit:
                    raise CapExceeded("QUOTIENT_TOO_LARGE", f"quotient has more than {limit} elements")
                id_of[h] = j
                elements.append(h)
                words.append(words[g] + (si,))
                queue.append(j)
            row.append(j)
        right.append(tuple(row))
    parity = _parity(words, right)
    return FiniteQuotient(sys, degree, tuple(perms), tuple(elements), tuple(words), tuple(right), parity, name)


def _parity(words, right):
    sign = [(-1) ** len(w) for w in words]
    for g, row in enumerate(right):
        for h in row:
            if sign[h] == sign[g]:
                return None
    return tuple(sign)


def trivial_quotient(sys: CoxeterSystem) -> FiniteQuotient:
    """Ḡ = 1, N = W."""
    return quotient_from_permutations(sys, [(0,)] * len(sys.generators), name="trivial")


def abelianization_quotient(sys: CoxeterSystem, caps=DEFAULT_CAPS) -> FiniteQuotient:
    """Ḡ = C2^S with s acting as the transposition (2i 2i+1); N = W'."""
    n = len(sys.generators)
    if n > caps.generators or 2**n > caps.quotient:
        raise CapExceeded("QUOTIENT_TOO_LARGE", f"abelianization has order 2^{n}")
    perms = []
    for i in range(n):
        p = list(range(2 * n))
        p[2 * i], p[2 * i + 1] = 2 * i + 1, 2 * i
        perms.append(tuple(p))
    return quotient_from_permutations(sys, perms, limit=caps.quotient, name="abelianization")


def parity_quotient(sys: CoxeterSystem) -> FiniteQuotient:
    """Ḡ = C2, every generator maps to the nontrivial element; N = W^ev."""
    return quotient_from_permutations(sys, [(1, 0)] * len(sys.generators), name="parity")


def even_refinement(Q: FiniteQuotient) -> FiniteQuotient:
    """The quotient by N ∩ W^ev: images (image of s, transposition) on degree+2 points."""
    d = Q.degree
    perms = [p + (d + 1, d) for p in Q.images]
    return quotient_from_permutations(Q.system, perms, name=(Q.name or "quotient") + "+parity")


BUILTIN_QUOTIENTS = {
    "abelianization": abelianization_quotient,
    "parity": parity_quotient,
    "trivial": trivial_quotient,
}


def quotient_from_json(sys: CoxeterSystem, doc, caps=DEFAULT_CAPS) -> FiniteQuotient:
    if isinstance(doc, str):
        doc = {"builtin": doc}
    if "builtin" in doc:
        name = doc["builtin"]
        if name not in BUILTIN_QUOTIENTS:
            raise InputError("PARSE_ERROR", f"unknown built-in quotient {name!r}")
        f = BUILTIN_QUOTIENTS[name]
        return f(sys, caps) if name == "abelianization" else f(sys)
    try:
        images = doc["generator_images"]
        size = int(doc["domain_size"])
    except (KeyError, TypeError, ValueError):
        raise InputError("PARSE_ERROR", "quotient needs 'domain_size' and 'generator_images'") from None
    Q = quotient_from_permutations(sys, images, limit=caps.quotient)
    if Q.degree != size:
        raise InputError("PARSE_ERROR", "domain_size does not match the permutations")
    return Q


def quotient_dumps(Q: FiniteQuotient) -> str:
    return json.dumps(Q.to_json(), sort_keys=True, indent=2) + "\n"


def parity_character(Q: FiniteQuotient) -> tuple:
    """The sign character ε with ε(s̄) = -1, or PARITY_UNDEFINED when N is not in W^ev."""
    if Q.parity is None:
        raise InputError("PARITY_UNDEFINED", "N is not contained in W^ev; pass to N ∩ W^ev first")
    return Q.parity


# -- special parabolic subgroups --------------------------------------------------------

@dataclass(frozen=True)
class ParabolicImage:
    quotient: FiniteQuotient
    T: tuple
    subgroup: tuple  # element ids of the image of W_T, sorted
    cosets: tuple  # left cosets gH as sorted tuples of ids, ordered by least element
    coset_of: tuple  # element id -> coset index

    @property
    def n_cosets(self) -> int:
        return len(self.cosets)


def parabolic_image(Q: FiniteQuotient, T: Sequence) -> ParabolicImage:
    """Image H of W_T in Ḡ and its left cosets.

    gH is the orbit of g under right multiplication by the generators in T,
    so cosets are the components of the Cayley graph restricted to T.
    """
    sys = Q.system
    T = tuple(sorted(T))
    if not sys.is_spherical(T):
        raise InputError("NOT_SPHERICAL", f"{T} does not span a simplex of the nerve")
    tidx = [sys.index[s] for s in T]
    coset_of = [-1] * Q.order
    cosets = []
    for g in range(Q.order):
        if coset_of[g] >= 0:
            continue
        c = len(cosets)
        coset_of[g] = c
        members, stack = [g], [g]
        while stack:
            x = stack.pop()
            for si in tidx:
                y = Q.right[x][si]
                if coset_of[y] < 0:
                    coset_of[y] = c
                    members.append(y)
                    stack.append(y)
        cosets.append(tuple(sorted(members)))
    return ParabolicImage(Q, T, cosets[0], tuple(cosets), tuple(coset_of))


def induced_action_on_quotient(Q: FiniteQuotient, vertex_perms: Sequence[Mapping]) -> tuple:
    """For each vertex permutation q of the nerve, the automorphism s̄ -> (q s)‾ of Ḡ.

    Returns one tuple per q mapping element ids to element ids.  Raises
    NOT_Q_INVARIANT when some q does not descend to Ḡ, i.e. N is not
    q-invariant.
    """
    sys = Q.system
    autos = []
    for q in vertex_perms:
        qs = [sys.index[q[s]] for s in sys.generators]
        alpha = [-1] * Q.order
        alpha[0] = 0
        for g in range(1, Q.order):
            w = Q.words[g]
            parent = Q.word_element(w[:-1]) if len(w) > 1 else 0
            alpha[g] = Q.right[alpha[parent]][qs[w[-1]]]
        for g in range(Q.order):
            for si, h in enumerate(Q.right[g]):
                if alpha[h] != Q.right[alpha[g]][qs[si]]:
                    raise InputError("NOT_Q_INVARIANT", "N is not normalized by the nerve automorphism")
        if len(set(alpha)) != Q.order:
            raise InputError("NOT_Q_INVARIANT", "induced map is not a bijection")
        autos.append(tuple(alpha))
    return tuple(autos)
