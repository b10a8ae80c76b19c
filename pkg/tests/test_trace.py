import itertools
from collections import deque

import hypothesis.strategies as st
from hypothesis import given

from branchlab.presets import gd_system
from branchlab.trace import commutes, growth_count, is_normal, monoid_equal, normal_form
from branchlab.words import GroupWord


def swap_class(w, d):
    """Every word reachable by swapping adjacent commuting letters."""
    seen = {w}
    todo = deque([w])
    while todo:
        u = todo.popleft()
        for i in range(len(u) - 1):
            if commutes(u[i], u[i + 1], d):
                v = u[:i] + (u[i + 1], u[i]) + u[i + 2:]
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
    return seen


def test_commutes_examples():
    assert commutes(1, 3, 5)
    assert not commutes(1, 2, 5) and not commutes(1, 5, 5)
    assert not any(commutes(i, j, 3) for i in range(1, 4) for j in range(1, 4))


def test_normal_form_examples():
    assert normal_form((3, 1), 5) == (1, 3)
    assert normal_form((2, 1), 5) == (2, 1)
    assert normal_form((3, 2, 1), 3) == (3, 2, 1)
    assert normal_form("a3 a1", 5) == (1, 3)


def test_monoid_equal_examples():
    assert monoid_equal((1, 3, 2), (3, 1, 2), 5)
    assert not monoid_equal((1, 2), (2, 1), 5)
    assert monoid_equal((1, 4, 2, 5), (4, 1, 5, 2), 7)


@given(st.integers(5, 9).filter(lambda d: d % 2).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(st.integers(1, d), max_size=7).map(tuple))))
def test_normal_form_is_class_minimum(case):
    d, w = case
    cls = swap_class(w, d)
    nf = normal_form(w, d)
    assert nf == min(cls)
    assert all(normal_form(u, d) == nf for u in cls)
    assert is_normal(nf, d)


def test_bubble_fixed_point_is_not_minimal():
    # no adjacent swap helps (a5, a1 do not commute), yet a3 can move to the front
    assert normal_form((5, 1, 3), 5) == (3, 5, 1)


def test_normal_form_brute_force_d7():
    for w in itertools.product(range(1, 8), repeat=4):
        assert normal_form(w, 7) == min(swap_class(w, 7))


def brute_growth(d, n):
    return len({normal_form(w, d) for w in itertools.product(range(1, d + 1), repeat=n)})


def test_growth_matches_brute_force():
    for d in (3, 5, 7):
        for n in range(5 if d < 7 else 4):
            assert growth_count(d, n) == brute_growth(d, n)


def test_growth_examples():
    assert growth_count(5, 0) == 1 and growth_count(5, 1) == 5
    assert growth_count(5, 2) == 20
    assert [growth_count(3, n) for n in range(6)] == [3**n for n in range(6)]
    assert all(growth_count(5, n) >= 2**n for n in range(11))


@given(st.lists(st.integers(1, 5), max_size=6).map(tuple), st.lists(st.integers(1, 5), max_size=6).map(tuple))
def test_monoid_equality_matches_group(u, v):
    assert monoid_equal(u, v, 5) == gd_system(5).equal(GroupWord(u), GroupWord(v))
