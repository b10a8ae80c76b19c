import random

import pytest
from hypothesis import given

from branchlab.errors import NotInStabilizerError
from branchlab.presets import gd_system, rist1_generators, xi
from branchlab.sampling import random_stabilizer_word
from branchlab.stabilizers import (
    fractal_lift_exists,
    in_H,
    in_level_stabilizer,
    in_rigid_stabilizer,
    in_rist_of_vertex,
    profile_from_totals,
    tuple_criterion,
)
from branchlab.words import IDENTITY, parse, total_exponent

from conftest import words

G3, G5 = gd_system(3), gd_system(5)


def test_in_H_examples():
    assert in_H(parse("a1^4"), 1)
    assert not in_H(parse("a1^2"), 1)
    assert in_H(parse("a1^8"), 2) and not in_H(parse("a1^4"), 2)


def test_tuple_criterion_examples():
    a1sq = parse("a1^2")
    assert not tuple_criterion([a1sq, IDENTITY, IDENTITY], 3, 1).is_zero()
    assert tuple_criterion([a1sq, a1sq, IDENTITY], 3, 1).is_zero()
    tup = [a1sq, IDENTITY, IDENTITY, IDENTITY, IDENTITY, IDENTITY, a1sq, IDENTITY, IDENTITY]
    prof = tuple_criterion(tup, 3, 2)
    assert prof.residues == ((2, 0, 2), (4,))
    assert prof.violations() == [(1, 0, 2), (1, 2, 2), (2, 0, 4)]


def test_profile_rejects_bad_length():
    with pytest.raises(ValueError):
        profile_from_totals([0, 0], 3)
    with pytest.raises(ValueError):
        tuple_criterion([IDENTITY] * 3, 3, 2)


def test_level_stabilizer_examples():
    assert in_level_stabilizer(G3, parse("a1^2"), 1)
    assert not in_level_stabilizer(G3, parse("a1"), 1)
    assert not in_level_stabilizer(G5, xi(5, 1).word, 1)


@given(words(3, 8))
def test_stabilizer_sections_satisfy_criterion(u):
    from branchlab.sampling import perm_order

    for k in (1, 2):
        w = u ** perm_order(G3, u, k)
        assert in_level_stabilizer(G3, w, k)
        assert tuple_criterion(G3.sections_at_level(w, k), 3, k).is_zero()


def test_rigid_membership():
    for g in rist1_generators(5):
        assert in_rigid_stabilizer(G5, g.word, 1)
    g = {x.name: x for x in rist1_generators(5)}["rist_a_2"]
    assert in_rist_of_vertex(G5, g.word, (2,))
    assert not in_rist_of_vertex(G5, g.word, (1,))
    assert not in_rigid_stabilizer(G3, parse("a1^2"), 1)
    assert in_rist_of_vertex(G3, IDENTITY, ())


def test_fractal_lift():
    rng = random.Random(5)
    for _ in range(100):
        w = random_stabilizer_word(rng, G3, 1)
        tup = fractal_lift_exists(G3, w, 1, 2)
        assert tup[1] == w
        assert tuple_criterion(tup, 3, 1).is_zero()
        assert tup[2] == (w if total_exponent(w) % 4 else IDENTITY)
    with pytest.raises(NotInStabilizerError):
        fractal_lift_exists(G3, parse("a1"), 1, 1)
