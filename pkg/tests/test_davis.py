import pytest

from davis_forge.action import action_from_generators, singular_subcomplex, trivial_action
from davis_forge.complex import EMPTY, from_maximal, order_complex
from davis_forge.coxeter import (
    abelianization_quotient,
    coxeter_from_flag,
    parity_quotient,
    trivial_quotient,
)
from davis_forge.davis import (
    cone_on_subdivision,
    cone_pair_cohomology_check,
    davis_action,
    davis_quotient,
    family_singular_subcomplex,
    invariant_subcomplex,
    product_certificate,
    relative_splitting_maps,
    sing_subcomplex,
    spherical_subsets,
    splitting_maps,
    theorem1_certificate,
    transfer_on_cone,
)
from davis_forge.errors import CapExceeded, InputError
from davis_forge.config import Caps
from davis_forge.examples import gallery, gallery_instance, poincare_two_skeleton
from davis_forge.homology import GroupSummary, chain_complex_of, homology

POINT = from_maximal("a", ["a"])
EDGE = from_maximal("ab", ["ab"])
TWO = from_maximal("ab", ["a", "b"])
SQUARE = from_maximal("abcd", ["ab", "bc", "cd", "ad"])


def _build(L, qfn):
    sys = coxeter_from_flag(L)
    return davis_quotient(sys, qfn(sys))


def _brute_force(L, images):
    """Σ/N as the order complex of (T, coset as a set of permutations)."""
    sys = coxeter_from_flag(L)
    gens = [tuple(p) for p in images]

    def compose(p, q):
        return tuple(p[i] for i in q)

    def closure(ps):
        e = tuple(range(len(gens[0])))
        out, frontier = {e}, [e]
        while frontier:
            nxt = []
            for x in frontier:
                for p in ps:
                    y = compose(x, p)
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return out

    G = closure(gens)
    elems = []
    for T in [()] + L.sorted_simplices():
        H = closure([gens[sys.index[s]] for s in T])
        cosets = {frozenset(compose(g, h) for h in H) for g in G}
        elems += [(frozenset(T), c) for c in cosets]
    labels = {e: str(i) for i, e in enumerate(elems)}
    return order_complex(elems, lambda x, y: x[0] < y[0] and x[1] <= y[1], labels)


@pytest.mark.parametrize("inst", [g for g in gallery() if g.name != "poincare-parity"], ids=lambda g: g.name)
def test_matches_brute_force_poset(inst):
    D = davis_quotient(coxeter_from_flag(inst.complex), inst.quotient)
    B = _brute_force(inst.complex, inst.quotient.images)
    assert D.complex.f_vector() == B.f_vector()
    assert homology(chain_complex_of(D.complex)).same_groups(homology(chain_complex_of(B)))


@pytest.mark.parametrize("inst", gallery(), ids=lambda g: g.name)
def test_chains_are_coset_chains(inst):
    D = davis_quotient(coxeter_from_flag(inst.complex), inst.quotient)
    for s in D.complex.simplices:
        for u, v in zip(s, s[1:]):
            (ti, ci), (tj, cj) = D.vertex_info[u], D.vertex_info[v]
            assert set(D.subsets[ti]) < set(D.subsets[tj])
            assert set(D.parabolics[ti].cosets[ci]) <= set(D.parabolics[tj].cosets[cj])
    assert D.complex.dim == inst.complex.dim + 1


def test_spherical_subsets():
    assert spherical_subsets(coxeter_from_flag(POINT)) == [(), ("a",)]
    assert spherical_subsets(coxeter_from_flag(EDGE)) == [(), ("a",), ("b",), ("a", "b")]


def test_small_quotients():
    D = _build(POINT, trivial_quotient)
    assert D.complex.f_vector() == (2, 1)
    assert sing_subcomplex(D).vertices == ("01|T1|c0",)
    D = _build(EDGE, abelianization_quotient)
    S = sing_subcomplex(D)
    assert S.f_vector() == (5, 4)
    assert homology(chain_complex_of(S)).nonzero() == {0: GroupSummary(1)}
    side = invariant_subcomplex(D, from_maximal("a", ["a"]))
    assert side.f_vector() == (6, 4)
    assert invariant_subcomplex(D, EMPTY).f_vector() == (4,)
    assert invariant_subcomplex(D, EDGE).simplices == D.complex.simplices
    with pytest.raises(InputError) as e:
        invariant_subcomplex(D, SQUARE)
    assert e.value.code == "NOT_SUBCOMPLEX"


def test_cap():
    sys = coxeter_from_flag(SQUARE)
    with pytest.raises(CapExceeded) as e:
        davis_quotient(sys, abelianization_quotient(sys), Caps(simplices=10))
    assert e.value.code == "QUOTIENT_TOO_LARGE"


def test_psi_two_points():
    D = _build(TWO, abelianization_quotient)
    S = splitting_maps(D)
    src, tgt = S.source, S.target
    sa = src.index(1)[("00|T0", "01|T1")]
    col = dict(S.psi[1].data[sa])
    assert len(col) == 4 and sorted(col.values()) == [-1, -1, 1, 1]
    assert all(tgt.basis(1)[i][1].startswith("01|T1") for i in col)


def test_psi_point_parity():
    D = _build(POINT, parity_quotient)
    S = splitting_maps(D)
    assert S.psi[1].to_dense() == [[1], [-1]]
    with pytest.raises(InputError) as e:
        splitting_maps(_build(POINT, trivial_quotient))
    assert e.value.code == "PARITY_UNDEFINED"


def test_psi_vanishes_on_face_of_cone_base():
    D = _build(EDGE, abelianization_quotient)
    C, _, psi = transfer_on_cone(D)
    i = C.index(1)[("01|T1", "02|T3")]
    assert not psi[1].data[i]


def test_relative_extremes():
    D = _build(SQUARE, abelianization_quotient)
    R = relative_splitting_maps(D, SQUARE)
    assert R.source.total_rank() == 0 and R.target.total_rank() == 0
    R0 = relative_splitting_maps(D, EMPTY)
    # for empty K the cone point is the only extra cell killed
    assert R0.source.total_rank() == splitting_maps(D).source.total_rank() - 1
    assert all(R0.verify().values())


def test_family_singular_and_induced_action():
    inst = gallery_instance("4cycle-c2")
    D = davis_quotient(coxeter_from_flag(inst.complex), inst.quotient)
    K = singular_subcomplex(inst.action)
    F = family_singular_subcomplex(D, inst.action)
    assert F.simplices == invariant_subcomplex(D, K).simplices
    A = davis_action(D, inst.action)
    sing = sing_subcomplex(D)
    for g in A.group.elements:
        for sub in (sing, F):
            assert all(A.apply(g, s) in sub.simplices for s in sub.simplices)
    triv = family_singular_subcomplex(D, trivial_action(inst.complex))
    assert triv.simplices == invariant_subcomplex(D, EMPTY).simplices
    fixing = action_from_generators(inst.complex, {"g": {"x": "y", "y": "x"}})
    assert family_singular_subcomplex(D, fixing).simplices == D.complex.simplices


def test_induced_action_on_poincare():
    L, act = poincare_two_skeleton()
    D = davis_quotient(coxeter_from_flag(L), parity_quotient(coxeter_from_flag(L)))
    A = davis_action(D, act)
    assert A.group.order == 60
    sing = sing_subcomplex(D)
    assert all(A.apply(g, s) in sing.simplices for g in A.group.generators for s in sing.simplices)


def test_cone_pair_checks():
    rep = cone_pair_cohomology_check(SQUARE, from_maximal("ac", ["a", "c"]))
    assert rep["degrees"][1]["pair"]["group"] == "Z^2"
    rep = cone_pair_cohomology_check(SQUARE, SQUARE)
    assert all(r["pair"]["group"] == "0" for r in rep["degrees"])
    L, act = poincare_two_skeleton()
    rep = cone_pair_cohomology_check(L, singular_subcomplex(act))
    assert rep["degrees"][2]["cone_pair"]["group"] == "Z^60"
    with pytest.raises(InputError):
        cone_pair_cohomology_check(EDGE, SQUARE)
    cp = cone_on_subdivision(EDGE)
    assert cp.complex.f_vector() == (4, 5, 2)


def test_certificate_cases():
    path = from_maximal("abc", ["ab", "bc"])
    cert = theorem1_certificate(path, trivial_action(path), abelianization_quotient(coxeter_from_flag(path)))
    assert cert["verified"] and cert["groups"]["H^n(L, L^sing)"]["group"] == "0"
    assert any("no lower-bound witness" in n for n in cert["notes"])
    with pytest.raises(InputError) as e:
        tri = from_maximal("abc", ["ab", "bc", "ac"])
        theorem1_certificate(tri, trivial_action(tri), None)
    assert e.value.code == "HYPOTHESIS_FAILED"
    inst = gallery_instance("4cycle-c2")
    with pytest.raises(InputError) as e:
        theorem1_certificate(inst.complex, inst.action, inst.quotient, strict=True)
    assert e.value.code == "HYPOTHESIS_FAILED"
    flip = action_from_generators(EDGE, {"t": {"a": "b", "b": "a"}})
    with pytest.raises(InputError) as e:
        theorem1_certificate(EDGE, flip, abelianization_quotient(coxeter_from_flag(EDGE)))
    assert e.value.code == "NOT_ADMISSIBLE"
    # trivial Ḡ: refined to the parity quotient automatically
    cert = theorem1_certificate(path, trivial_action(path), trivial_quotient(coxeter_from_flag(path)))
    assert cert["quotient"]["parity_refined"] and cert["verified"]


def test_certificate_poincare():
    L, act = poincare_two_skeleton()
    cert = theorem1_certificate(L, act, parity_quotient(coxeter_from_flag(L)), barycenter="p0", strict=True)
    assert cert["verified"]
    assert cert["groups"]["H^n(L, L^sing)"]["group"] == "Z^60"
    assert cert["witnesses"]["vertex_deletion"]["group"] == "Z"
    assert all(b["established"] for b in cert["bounds"])


def test_product_certificate():
    inst = gallery_instance("4cycle-parity")
    factor = (inst.complex, inst.action, inst.quotient)
    for p in (2, 3):
        rep = product_certificate([factor, factor], p)
        assert rep["kunneth_holds"] and rep["lower_bound_established"]
        assert rep["top_degree"] == 4
