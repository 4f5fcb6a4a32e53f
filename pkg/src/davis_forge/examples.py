"""Worked examples and a gallery of small fixtures.

The first is an A5-equivariant acyclic 2-complex: the complete graph on five
vertices with six pentagons attached, subdivided once.  The second is a
Z/q-equivariant cellular chain model whose fixed part is a mod-p Moore
space, given at chain level only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .action import (
    PermGroup,
    SimplicialAction,
    action_from_generators,
    fixed_subcomplex,
    is_admissible,
    singular_subcomplex,
    trivial_action,
)
from .complex import (
    Cover,
    SimplicialComplex,
    barycentric_subdivision,
    from_maximal,
    full_subcomplex,
    is_full_subcomplex,
    vertex_deletion,
)
from .coxeter import (
    FiniteQuotient,
    abelianization_quotient,
    coxeter_from_flag,
    parity_quotient,
    quotient_from_permutations,
    trivial_quotient,
)
from .errors import InputError, VerificationError
from .homology import (
    ChainComplex,
    GroupSummary,
    chain_complex_of,
    cohomology,
    homology,
    relative_chain_complex,
)
from .linalg import IntMatrix, is_prime


# -- A5 two-complex ----------------------------------------------------------------

@dataclass(frozen=True)
class PolygonalComplex:
    vertices: tuple
    edges: tuple  # sorted vertex pairs
    polygons: tuple  # cyclic vertex sequences

    def __post_init__(self):
        E = set(self.edges)
        for poly in self.polygons:
            if len(set(poly)) != len(poly):
                raise InputError("PARSE_ERROR", f"polygon {poly} repeats a vertex")
            for a, b in zip(poly, poly[1:] + poly[:1]):
                if tuple(sorted((a, b))) not in E:
                    raise InputError("PARSE_ERROR", f"polygon edge {a}{b} missing")

    def polygon_edges(self, i: int) -> frozenset:
        poly = self.polygons[i]
        return frozenset(tuple(sorted(e)) for e in zip(poly, poly[1:] + poly[:1]))

    def subdivide(self) -> SimplicialComplex:
        """Barycentric subdivision with labels v<i>, e<ij>, p<k>."""
        tris = []
        for k, poly in enumerate(self.polygons):
            for a, b in zip(poly, poly[1:] + poly[:1]):
                i, j = sorted((a, b))
                tris += [(f"p{k}", f"e{i}{j}", f"v{a}"), (f"p{k}", f"e{i}{j}", f"v{b}")]
        edges = [(f"e{i}{j}", f"v{i}") for i, j in self.edges] + [(f"e{i}{j}", f"v{j}") for i, j in self.edges]
        verts = [f"v{i}" for i in self.vertices] + [f"e{i}{j}" for i, j in self.edges]
        verts += [f"p{k}" for k in range(len(self.polygons))]
        return from_maximal(verts, tris + edges)


def _perm_compose(p, q):
    return tuple(p[i] for i in q)


def _five_cycle_pairs() -> list:
    """The 5-cycles of A5 conjugate to (0 1 2 3 4), one per inverse pair, lexicographically least first."""
    base = (1, 2, 3, 4, 0)
    conj = set()
    for g in PermGroup(5, ((1, 2, 0, 3, 4), base)).elements:
        ginv = tuple(sorted(range(5), key=lambda i: g[i]))
        conj.add(_perm_compose(_perm_compose(g, base), ginv))
    pairs = []
    for s in sorted(conj):
        inv = tuple(sorted(range(5), key=lambda i: s[i]))
        if s < inv:
            pairs.append(s)
    return pairs


def poincare_polygonal_complex() -> PolygonalComplex:
    polys = []
    for s in _five_cycle_pairs():
        cyc, x = [0], s[0]
        while x != 0:
            cyc.append(x)
            x = s[x]
        polys.append(tuple(cyc))
    return PolygonalComplex(tuple(range(5)), tuple(combinations(range(5), 2)), tuple(polys))


def poincare_two_skeleton() -> tuple:
    """(L, A5 action): sd of K5 with six pentagons, acted on by <(0 1 2), (0 1 2 3 4)>."""
    P = poincare_polygonal_complex()
    L = P.subdivide()
    poly_of = {P.polygon_edges(k): k for k in range(len(P.polygons))}
    gens = {"a": (1, 2, 0, 3, 4), "b": (1, 2, 3, 4, 0)}
    maps = {}
    for name, g in gens.items():
        m = {f"v{i}": f"v{g[i]}" for i in range(5)}
        for i, j in P.edges:
            a, b = sorted((g[i], g[j]))
            m[f"e{i}{j}"] = f"e{a}{b}"
        for k in range(len(P.polygons)):
            img = frozenset(tuple(sorted((g[a], g[b]))) for a, b in P.polygon_edges(k))
            m[f"p{k}"] = f"p{poly_of[img]}"
        maps[name] = m
    return L, action_from_generators(L, maps)


def pentagon_barycenters(L: SimplicialComplex) -> list:
    return [v for v in L.vertices if v.startswith("p")]


def _claim(ok: bool, claim: str):
    if not ok:
        raise VerificationError("CLAIM_FAILED", claim)


def verify_poincare(L: SimplicialComplex, act: SimplicialAction, *, with_pi1: bool = True) -> dict:
    from . import pi1

    H = homology(chain_complex_of(L, reduced=True))
    _claim(H.is_zero(), "L is acyclic")
    _claim(is_admissible(act), "the A5 action is admissible")
    _claim(fixed_subcomplex(act).is_empty(), "A5 has no global fixed point")
    K = singular_subcomplex(act)
    _claim(K.simplices == L.skeleton(1).simplices, "the singular set is the 1-skeleton")
    H2 = cohomology(relative_chain_complex(L, K))
    _claim(not H2[2].is_zero(), "H^2(L, L^sing) is nonzero")
    full = is_full_subcomplex(L, K)
    _claim(not full, "L^sing is not a full subcomplex")
    v = pentagon_barycenters(L)[0]
    Hv = cohomology(chain_complex_of(vertex_deletion(L, v)))
    _claim(Hv[1] == GroupSummary(1), "H^1(L - v) is Z for a pentagon barycentre v")
    report = {
        "f_vector": list(L.f_vector()),
        "acyclic": True,
        "group_order": act.group.order,
        "admissible": True,
        "global_fixed_point": False,
        "singular_set_is_1_skeleton": True,
        "H^2(L, L^sing)": str(H2[2]),
        "relative_cohomology": H2.to_json(),
        "singular_set_full": full,
        "barycenter": v,
        "H^1(L - v)": str(Hv[1]),
    }
    if with_pi1:
        pres = pi1.simplify(pi1.presentation_from_two_complex(L))
        order = pi1.todd_coxeter(pres)
        _claim(order == 120, "pi_1(L) has order 120")
        report["pi1_order"] = order
    return report


# -- Moore chain model -------------------------------------------------------------------

@dataclass(frozen=True)
class EquivariantCWChainModel:
    """A cellular chain complex with a signed permutation action of Z/q.

    ``action[k]`` is the matrix of the generator g on C_k.
    """

    p: int
    q: int
    chains: ChainComplex
    action: dict = field(repr=False)
    fixed_cells: tuple = ()

    def commutes(self) -> bool:
        C = self.chains
        for k in range(C.lo + 1, C.hi + 1):
            if C.boundary(k) @ self.action[k] != self.action[k - 1] @ C.boundary(k):
                return False
        return True

    def fixed_labels(self) -> dict:
        fixed = set(self.fixed_cells)
        return {k: [c for c in self.chains.basis(k) if c in fixed] for k in self.chains.degrees()}

    @cached_property
    def fixed_part(self) -> ChainComplex:
        return self.chains.subcomplex(self.fixed_labels())

    @cached_property
    def relative(self) -> ChainComplex:
        return self.chains.quotient(self.fixed_labels())

    def cycle(self, j: int) -> dict:
        """e_j as a {cell: coefficient} chain in degree 2."""
        e = {"f": 1}
        for i in range(self.p):
            name = f"f{(j + i) % self.q}"
            e[name] = e.get(name, 0) - 1
        return e

    def act(self, k: int, chain: dict) -> dict:
        basis = self.chains.basis(k)
        idx = self.chains.index(k)
        out = {}
        for cell, v in chain.items():
            for i, a in self.action[k].data[idx[cell]]:
                out[basis[i]] = out.get(basis[i], 0) + a * v
        return {c: v for c, v in out.items() if v}


def moore_chain_model(p: int, q: int) -> EquivariantCWChainModel:
    if p == q or not is_prime(p) or not is_prime(q):
        raise InputError("BAD_PRIMES", f"need distinct primes, got p={p}, q={q}")
    f = [f"f{i}" for i in range(q)]
    b = [f"b{j}" for j in range(q)]
    bases = {0: ("v",), 1: ("c",), 2: tuple(["f"] + f), 3: tuple(b)}
    d1 = IntMatrix.zeros(1, 1)
    d2 = IntMatrix.from_columns(1, [{0: p}] + [{0: 1}] * q)
    cols = []
    for j in range(q):
        col = {0: 1}
        for i in range(p):
            r = 1 + (j + i) % q
            col[r] = col.get(r, 0) - 1
        cols.append(col)
    d3 = IntMatrix.from_columns(q + 1, cols)
    C = ChainComplex(0, 3, bases, {1: d1, 2: d2, 3: d3})
    shift = [{(i + 1) % q: 1} for i in range(q)]
    action = {
        0: IntMatrix.identity(1),
        1: IntMatrix.identity(1),
        2: IntMatrix.from_columns(q + 1, [{0: 1}] + [{1 + (i + 1) % q: 1} for i in range(q)]),
        3: IntMatrix.from_columns(q, shift),
    }
    return EquivariantCWChainModel(p, q, C, action, ("v", "c", "f"))


def verify_moore(model: EquivariantCWChainModel) -> dict:
    C, p = model.chains, model.p
    H = homology(C)
    reduced = {k: g for k, g in H.nonzero().items() if not (k == 0 and g == GroupSummary(1))}
    _claim(not reduced, "the total complex is acyclic")
    _claim(model.commutes(), "the Z/q action commutes with the boundary")
    HF = homology(model.fixed_part)
    _claim(HF[1] == GroupSummary(0, (p,)), "the fixed part has H_1 = Z/p")
    HR = cohomology(model.relative)
    _claim(HR.nonzero() == {3: GroupSummary(0, (p,))}, "H^3(L, L^Q) = Z/p")
    return {
        "p": p,
        "q": model.q,
        "acyclic": True,
        "H_1(fixed)": str(HF[1]),
        "H^3(L, L^Q)": str(HR[3]),
        "relative_cohomology": HR.to_json(),
        "equivariant": True,
    }


# -- gallery ---------------------------------------------------------------------

@dataclass(frozen=True)
class GalleryInstance:
    name: str
    complex: SimplicialComplex
    action: SimplicialAction
    quotient: FiniteQuotient
    note: str = ""


def _cycle(n: int) -> SimplicialComplex:
    names = "abcdefghij"[:n]
    return from_maximal(names, [tuple(sorted((names[i], names[(i + 1) % n]))) for i in range(n)])


def _renamed_sd(X: SimplicialComplex) -> SimplicialComplex:
    """Barycentric subdivision with short labels s<k> in canonical simplex order."""
    sd = barycentric_subdivision(X)
    order = {s: i for i, s in enumerate(X.sorted_simplices())}
    name = {w: f"s{order[sd.provenance[w]]:02d}" for w in sd.complex.vertices}
    return SimplicialComplex.from_simplices(
        [tuple(sorted(name[w] for w in s)) for s in sd.complex.simplices], check=False
    )


def _instance(name, L, action, quotient_fn, note=""):
    sys = coxeter_from_flag(L)
    return GalleryInstance(name, L, action if action is not None else trivial_action(L), quotient_fn(sys), note)


def gallery() -> list:
    point = from_maximal("a", ["a"])
    edge = from_maximal("ab", ["ab"])
    two = from_maximal("ab", ["a", "b"])
    path = from_maximal("abc", ["ab", "bc"])
    tri = from_maximal("abc", ["abc"])
    c4 = _cycle(4)
    c5 = _cycle(5)
    tetra = _renamed_sd(from_maximal("abcd", ["abc", "abd", "acd", "bcd"]))
    rp2 = _renamed_sd(from_maximal("123456", ["124", "126", "135", "136", "145", "234", "235", "256", "346", "456"]))
    L1, A5 = poincare_two_skeleton()

    swap = action_from_generators(c4, {"q": {"b": "d", "d": "b"}})
    rot = action_from_generators(c5, {"r": {"a": "b", "b": "c", "c": "d", "d": "e", "e": "a"}})

    def d6(sys):
        return quotient_from_permutations(sys, [(0, 2, 1), (1, 0, 2)], name="dihedral-6")

    def kernel_trivial(sys):
        Q = abelianization_quotient(sys)
        return FiniteQuotient(sys, Q.degree, Q.images, Q.elements, Q.words, Q.right, Q.parity, "kernel-trivial")

    return [
        _instance("point-ab", point, None, abelianization_quotient),
        _instance("point-trivial", point, None, trivial_quotient, "N = W; parity undefined"),
        _instance("edge-trivial", edge, None, kernel_trivial, "W = C2^2 is finite, N = 1"),
        _instance("2pts-ab", two, None, abelianization_quotient, "infinite dihedral, Σ/N a circle"),
        _instance("2pts-d6", two, None, d6),
        _instance("path3-ab", path, None, abelianization_quotient),
        _instance("triangle-ab", tri, None, abelianization_quotient),
        _instance("4cycle-c2", c4, swap, abelianization_quotient, "C2 fixing two opposite vertices"),
        _instance("4cycle-parity", c4, swap, parity_quotient),
        _instance("5cycle-ab", c5, rot, abelianization_quotient, "free C5 rotation"),
        _instance("tetra-boundary", tetra, None, parity_quotient, "subdivided 2-sphere"),
        _instance("rp2", rp2, None, parity_quotient, "subdivided 6-vertex RP^2"),
        _instance("poincare-parity", L1, A5, parity_quotient, "A5 two-complex with N = W^ev"),
    ]


def gallery_instance(name: str) -> GalleryInstance:
    for inst in gallery():
        if inst.name == name:
            return inst
    raise InputError("UNKNOWN_EXAMPLE", f"no gallery instance {name!r}")


# -- covers -------------------------------------------------------------------------

def vertex_star_cover(L: SimplicialComplex) -> Cover:
    """Cover of L' by closed stars of the original vertices; its nerve is L."""
    sd = barycentric_subdivision(L)
    parts = {}
    for v in L.vertices:
        keep = [w for w in sd.complex.vertices if v in sd.provenance[w]]
        parts[f"st({v})"] = full_subcomplex(sd.complex, keep)
    return Cover.of(sd.complex, parts)


def involution_fixed_cover(L: SimplicialComplex, act: SimplicialAction) -> Cover:
    """Fixed sets of the involutions of the group, one part each."""
    G = act.group
    parts = {}
    for g in G.elements:
        if g != G.identity and G.element_order(g) == 2:
            parts[f"fix{len(parts):02d}"] = fixed_subcomplex(act, [g], check=False)
    return Cover.of(L, parts)


def gallery_covers() -> dict:
    path = from_maximal("abc", ["ab", "bc"])
    hexagon = from_maximal("012345", ["01", "12", "23", "34", "45", "05"])
    square = _cycle(4)
    L1, A5 = poincare_two_skeleton()
    return {
        "path-edges": Cover.of(path, {"left": from_maximal("ab", ["ab"]), "right": from_maximal("bc", ["bc"])}),
        "circle-arcs": Cover.of(hexagon, {
            "A": from_maximal("012", ["01", "12"]),
            "B": from_maximal("234", ["23", "34"]),
            "C": from_maximal("450", ["45", "05"]),
        }),
        "circle-halves": Cover.of(square, {
            "top": from_maximal("abc", ["ab", "bc"]),
            "bottom": from_maximal("acd", ["cd", "ad"]),
        }),
        "4cycle-stars": vertex_star_cover(square),
        "triangle-stars": vertex_star_cover(from_maximal("abc", ["abc"])),
        "poincare-involutions": involution_fixed_cover(L1, A5),
    }
