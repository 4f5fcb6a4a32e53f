import json

import networkx as nx
import pytest
from hypothesis import given, settings

from davis_forge.complex import (
    Cover,
    EMPTY,
    SimplicialComplex,
    barycentric_subdivision,
    cone,
    euler_characteristic,
    flag_from_graph,
    from_maximal,
    full_subcomplex,
    intersection,
    is_flag,
    is_flag_no_square,
    is_full_subcomplex,
    is_subcomplex,
    nerve_of_cover,
    order_complex,
    union,
    vertex_deletion,
)
from davis_forge.errors import InputError

from strategies import complexes

TETRA = from_maximal("abcd", ["abc", "abd", "acd", "bcd"])
SQUARE = from_maximal("abcd", ["ab", "bc", "cd", "ad"])
PENTAGON = from_maximal("abcde", ["ab", "bc", "cd", "de", "ae"])


def test_face_closure_and_vertices():
    X = from_maximal("abcd", ["abc"])
    assert X.f_vector() == (4, 3, 1)
    assert ("d",) in X
    assert set(X.maximal_simplices) == {("d",), ("a", "b", "c")}
    with pytest.raises(InputError) as e:
        SimplicialComplex.from_simplices([("a", "b", "c")])
    assert e.value.code == "NOT_FACE_CLOSED"
    with pytest.raises(InputError) as e:
        from_maximal("ab", ["abc"])
    assert e.value.code == "UNKNOWN_VERTEX"


def test_flag_examples():
    assert not is_flag(TETRA)
    assert is_flag(SQUARE) and not is_flag_no_square(SQUARE)
    assert is_flag_no_square(PENTAGON)
    with pytest.raises(InputError) as e:
        is_flag_no_square(TETRA)
    assert e.value.code == "NOT_FLAG"
    K4 = flag_from_graph(nx.complete_graph(4))
    assert K4.f_vector() == (4, 6, 4, 1)
    assert flag_from_graph([("a", "b"), ("b", "c")]).f_vector() == (3, 2)


def test_full_subcomplexes():
    F = full_subcomplex(TETRA, "abc")
    assert F.f_vector() == (3, 3, 1)
    assert is_full_subcomplex(TETRA, F)
    assert is_full_subcomplex(SQUARE, from_maximal("ac", ["a", "c"]))
    bc = from_maximal("abc", ["ab", "bc"])
    assert not is_full_subcomplex(from_maximal("abc", ["abc"]), bc)
    with pytest.raises(InputError) as e:
        is_full_subcomplex(SQUARE, TETRA)
    assert e.value.code == "NOT_SUBCOMPLEX"
    with pytest.raises(InputError):
        full_subcomplex(SQUARE, "az")


def test_cone_union_intersection():
    C = cone(SQUARE, "z")
    assert C.f_vector() == (5, 8, 4)
    with pytest.raises(InputError) as e:
        cone(SQUARE, "a")
    assert e.value.code == "NAME_COLLISION"
    A = from_maximal("ab", ["ab"])
    B = from_maximal("bc", ["bc"])
    assert union(A, B).f_vector() == (3, 2)
    assert intersection(A, B).f_vector() == (1,)
    with pytest.raises(InputError) as e:
        union(A, TETRA, ambient=SQUARE)
    assert e.value.code == "AMBIENT_MISMATCH"
    assert vertex_deletion(SQUARE, "a").f_vector() == (3, 2)


def test_barycentric_subdivision_counts():
    sd = barycentric_subdivision(from_maximal("abc", ["abc"]))
    assert sd.complex.f_vector() == (7, 12, 6)
    assert sd.vertex_of[("a", "b")] == "{a,b}"
    M = sd.subcomplex_of(from_maximal("ab", ["ab"]))
    assert M.f_vector() == (3, 2)


def test_order_complex_of_chain():
    X = order_complex(range(4), lambda a, b: a < b)
    assert X.f_vector() == (4, 6, 4, 1)


@settings(max_examples=80, deadline=None)
@given(complexes(max_vertices=6))
def test_subdivision_is_flag_and_keeps_euler(X):
    sd = barycentric_subdivision(X).complex
    assert is_flag(sd)
    assert euler_characteristic(sd) == euler_characteristic(X)


@settings(max_examples=80, deadline=None)
@given(complexes())
def test_json_round_trip(X):
    Y = SimplicialComplex.from_json(json.loads(X.dumps()))
    assert Y == X
    assert Y.dumps() == X.dumps()
    assert is_subcomplex(X.skeleton(0), X)


def test_parse_errors():
    with pytest.raises(InputError) as e:
        SimplicialComplex.from_json({"vertices": ["a"]})
    assert e.value.code == "PARSE_ERROR"


def test_nerves():
    path = from_maximal("abc", ["ab", "bc"])
    cover = Cover.of(path, {"l": from_maximal("ab", ["ab"]), "r": from_maximal("bc", ["bc"])})
    assert nerve_of_cover(cover).f_vector() == (2, 1)
    back = Cover.from_json(json.loads(json.dumps(cover.to_json())))
    assert back == cover
    with pytest.raises(InputError) as e:
        Cover.of(path, [("x", EMPTY), ("x", EMPTY)])
    assert e.value.code == "NAME_COLLISION"
    with pytest.raises(InputError):
        nerve_of_cover(Cover.of(path, {"e": EMPTY}))
