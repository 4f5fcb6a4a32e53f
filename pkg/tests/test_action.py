import pytest

from davis_forge.action import (
    PermGroup,
    action_from_generators,
    action_from_json,
    fixed_subcomplex,
    is_admissible,
    orbits_of_simplices,
    singular_subcomplex,
    stabilizer,
    transport_to_subdivision,
)
from davis_forge.complex import barycentric_subdivision, from_maximal
from davis_forge.errors import InputError

EDGE = from_maximal("ab", ["ab"])
SQUARE = from_maximal("abcd", ["ab", "bc", "cd", "ad"])


def test_flip_needs_subdivision():
    flip = action_from_generators(EDGE, {"t": {"a": "b", "b": "a"}})
    assert not is_admissible(flip)
    with pytest.raises(InputError) as e:
        singular_subcomplex(flip)
    assert e.value.code == "NOT_ADMISSIBLE"
    sd = barycentric_subdivision(EDGE)
    moved = transport_to_subdivision(flip, sd)
    assert is_admissible(moved)
    assert singular_subcomplex(moved).vertices == ("{a,b}",)


def test_swap_on_square():
    act = action_from_generators(SQUARE, {"q": {"b": "d", "d": "b"}})
    assert is_admissible(act)
    assert fixed_subcomplex(act).vertices == ("a", "c")
    assert len(orbits_of_simplices(act)) == 5
    assert len(stabilizer(act, ("a",))) == 2


def test_not_simplicial():
    path = from_maximal("abc", ["ab", "bc"])
    with pytest.raises(InputError) as e:
        action_from_generators(path, {"g": {"a": "b", "b": "a"}})
    assert e.value.code == "NOT_SIMPLICIAL"


def test_auxiliary_points_give_kernel():
    act = action_from_generators(EDGE, {"g": {"x": "y", "y": "x"}})
    assert act.group.order == 2
    assert fixed_subcomplex(act).simplices == EDGE.simplices
    assert singular_subcomplex(act).simplices == EDGE.simplices
    back = action_from_json(EDGE, act.to_json())
    assert back.group.order == 2
    with pytest.raises(InputError):
        action_from_json(EDGE, {"generators": {}})


def test_subgroups():
    S3 = PermGroup(3, ((1, 0, 2), (1, 2, 0)))
    assert S3.order == 6
    assert len(S3.all_subgroups()) == 6
    assert S3.is_soluble()
    A5 = PermGroup(5, ((1, 2, 0, 3, 4), (1, 2, 3, 4, 0)))
    subs = A5.all_subgroups()
    assert A5.order == 60 and len(subs) == 59
    assert not A5.is_soluble()
    assert sum(1 for H in subs if A5.is_soluble(H)) == 58
