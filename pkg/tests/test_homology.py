import pytest
import sympy
from hypothesis import given, settings

from davis_forge.complex import EMPTY, from_maximal
from davis_forge.errors import InputError, VerificationError
from davis_forge.homology import (
    ChainComplex,
    Coefficients,
    GroupSummary,
    chain_complex_of,
    cohomology,
    homology,
    is_acyclic,
    is_chain_map,
    reduced_homology,
    relative_chain_complex,
    subcomplex_acyclic_constraints,
    tensor_product,
)
from davis_forge.linalg import IntMatrix

from strategies import complex_pairs, complexes

RP2 = from_maximal("123456", ["124", "126", "135", "136", "145", "234", "235", "256", "346", "456"])
# 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7
TORUS = from_maximal(
    "0123456",
    [tuple(sorted(str((i + k) % 7) for k in ks)) for i in range(7) for ks in ((0, 1, 3), (0, 2, 3))],
)
SPHERE = from_maximal("abcd", ["abc", "abd", "acd", "bcd"])


def test_known_spaces():
    assert homology(chain_complex_of(SPHERE)).nonzero() == {0: GroupSummary(1), 2: GroupSummary(1)}
    H = homology(chain_complex_of(TORUS))
    assert TORUS.f_vector() == (7, 21, 14)
    assert (H[0], H[1], H[2]) == (GroupSummary(1), GroupSummary(2), GroupSummary(1))
    assert homology(chain_complex_of(RP2))[1] == GroupSummary(0, (2,))
    assert cohomology(chain_complex_of(RP2))[2] == GroupSummary(0, (2,))
    F2 = homology(chain_complex_of(RP2), Coefficients(2))
    assert [F2[k].betti for k in range(3)] == [1, 1, 1]


def test_group_strings_and_summands():
    assert str(GroupSummary(2, (2,))) == "Z^2 + Z/2"
    assert str(GroupSummary()) == "0"
    assert GroupSummary(0, (2,)).is_summand_of(GroupSummary(0, (6,)))
    assert not GroupSummary(0, (4,)).is_summand_of(GroupSummary(0, (2, 2)))
    assert GroupSummary(1).is_summand_of(GroupSummary(3, (5,)))


def test_relative_and_reduced():
    I = from_maximal("ab", ["ab"])
    ends = from_maximal("ab", ["a", "b"])
    assert homology(relative_chain_complex(I, ends)).nonzero() == {1: GroupSummary(1)}
    assert reduced_homology(I).is_zero()
    assert is_acyclic(I) and not is_acyclic(ends)
    assert homology(relative_chain_complex(I, EMPTY, reduced=True)).is_zero()
    with pytest.raises(InputError) as e:
        relative_chain_complex(I, SPHERE)
    assert e.value.code == "NOT_SUBCOMPLEX"


def test_coefficients():
    with pytest.raises(InputError) as e:
        Coefficients(4)
    assert e.value.code == "NOT_PRIME"


def test_chain_complex_checks():
    bad = {1: IntMatrix.from_dense([[1]]), 2: IntMatrix.from_dense([[1]])}
    with pytest.raises(VerificationError):
        ChainComplex(0, 2, {0: ("a",), 1: ("b",), 2: ("c",)}, bad)


def test_tensor_of_intervals_is_a_point():
    C = chain_complex_of(from_maximal("ab", ["ab"]))
    T = tensor_product(C, C)
    assert homology(T).nonzero() == {0: GroupSummary(1)}
    assert is_chain_map({k: IntMatrix.identity(C.dim(k)) for k in C.degrees()}, C, C)


def _betti_oracle(X):
    """Rational Betti numbers from sympy ranks of the boundary matrices."""
    C = chain_complex_of(X)
    ranks = {}
    for k in range(C.lo, C.hi + 2):
        M = C.boundary(k)
        ranks[k] = sympy.Matrix(M.to_dense()).rank() if M.rows and M.cols else 0
    return {k: C.dim(k) - ranks[k] - ranks[k + 1] for k in C.degrees()}


@settings(max_examples=60, deadline=None)
@given(complexes(max_vertices=6, max_dim=3))
def test_betti_numbers_match_rational_ranks(X):
    H = homology(chain_complex_of(X))
    oracle = _betti_oracle(X)
    assert {k: H[k].betti for k in oracle} == oracle


@settings(max_examples=80, deadline=None)
@given(complex_pairs())
def test_euler_characteristic_of_pairs(pair):
    X, A = pair
    C = relative_chain_complex(X, A)
    H = homology(C)
    assert sum((-1) ** k * H[k].betti for k in C.degrees()) == C.euler_characteristic()


def test_acyclic_constraints():
    with pytest.raises(InputError) as e:
        subcomplex_acyclic_constraints(SPHERE, SPHERE)
    assert e.value.code == "HYPOTHESIS_FAILED"
    disk = from_maximal("abc", ["abc"])
    assert subcomplex_acyclic_constraints(disk, from_maximal("ab", ["ab"]))["h2_zero"]
