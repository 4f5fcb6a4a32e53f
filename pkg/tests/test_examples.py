from collections import Counter

import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from davis_forge.action import singular_subcomplex
from davis_forge.complex import is_flag
from davis_forge.errors import InputError
from davis_forge.examples import (
    gallery,
    gallery_covers,
    gallery_instance,
    moore_chain_model,
    poincare_polygonal_complex,
    poincare_two_skeleton,
    verify_moore,
    verify_poincare,
)
from davis_forge.homology import GroupSummary, homology
from davis_forge.linalg import IntMatrix


def test_pentagons_cover_each_edge_three_times():
    P = poincare_polygonal_complex()
    assert len(P.polygons) == 6
    count = Counter(e for k in range(6) for e in P.polygon_edges(k))
    assert set(count) == set(P.edges) and set(count.values()) == {3}


def test_pentagons_form_one_a5_orbit_of_hamiltonian_cycles():
    # oracle: sympy's A5 acting on undirected 5-cycles of K5
    A5 = PermutationGroup([Permutation([1, 2, 0, 3, 4]), Permutation([1, 2, 3, 4, 0])])
    P = poincare_polygonal_complex()
    pent = {P.polygon_edges(k) for k in range(6)}
    for g in A5.generate():
        for E in pent:
            img = frozenset(tuple(sorted((g(a), g(b)))) for a, b in E)
            assert img in pent


def test_poincare_is_deterministic():
    (L1, a1), (L2, a2) = poincare_two_skeleton(), poincare_two_skeleton()
    assert L1.dumps() == L2.dumps()
    assert a1.to_json() == a2.to_json()
    assert L1.f_vector() == (21, 80, 60)
    assert is_flag(L1)


def test_verify_poincare():
    L, act = poincare_two_skeleton()
    rep = verify_poincare(L, act, with_pi1=False)
    assert rep["group_order"] == 60
    assert rep["H^2(L, L^sing)"] == "Z^60"
    assert rep["H^1(L - v)"] == "Z"
    assert not rep["singular_set_full"]
    assert singular_subcomplex(act).f_vector() == (21, 80)


def test_point_stabilisers_in_poincare_are_soluble():
    _, act = poincare_two_skeleton()
    G = act.group
    for v in act.complex.vertices:
        H = [g for g in G.elements if act.apply(g, (v,)) == (v,)]
        assert G.is_soluble(H)


@pytest.mark.parametrize("p,q", [(2, 3), (3, 2), (2, 5), (5, 3), (3, 7)])
def test_moore_model(p, q):
    M = moore_chain_model(p, q)
    rep = verify_moore(M)
    assert rep["H^3(L, L^Q)"] == f"Z/{p}"
    C = M.chains
    d2 = C.boundary(2)
    idx = C.index(2)
    skeleton = C.subcomplex({k: list(C.basis(k)) for k in (0, 1, 2)} | {3: []})
    assert homology(skeleton)[2] == GroupSummary(q)
    for j in range(q):
        e = M.cycle(j)
        v = IntMatrix.from_columns(C.dim(2), [{idx[c]: a for c, a in e.items()}])
        assert (d2 @ v).is_zero()
        assert M.act(2, e) == M.cycle((j + 1) % q)


def test_moore_bad_primes():
    for p, q in [(2, 2), (4, 3), (3, 1)]:
        with pytest.raises(InputError) as e:
            moore_chain_model(p, q)
        assert e.value.code == "BAD_PRIMES"


def test_gallery():
    names = [g.name for g in gallery()]
    assert len(names) == len(set(names))
    for g in gallery():
        assert is_flag(g.complex)
    with pytest.raises(InputError) as e:
        gallery_instance("nope")
    assert e.value.code == "UNKNOWN_EXAMPLE"
    assert set(gallery_covers()) >= {"path-edges", "circle-halves", "poincare-involutions"}
