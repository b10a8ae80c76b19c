import itertools
import random

import pytest
from hypothesis import given
import hypothesis.strategies as st

from branchlab import quotient as qk
from branchlab.errors import CosetError, NotInStabilizerError
from branchlab.presets import gd_system
from branchlab.sampling import random_stabilizer_word
from branchlab.words import parse

G3 = gd_system(3)


def admissible(d, k):
    mod = 2 ** (k + 1)
    for n in itertools.product(range(mod), repeat=d**k):
        if not qk.block_violations(n, d, k):
            yield qk.QuotientCoset(d, k, n)


def test_coset_examples():
    c = qk.coset_of(G3, parse("a1^2"), 1)
    assert c.n == (2, 2, 0)
    assert qk.coset_of(G3, parse("a1^4"), 1) == qk.QuotientCoset(3, 1, (0, 0, 0))
    with pytest.raises(NotInStabilizerError):
        qk.coset_of(G3, parse("a1"), 1)


def test_coset_validation():
    with pytest.raises(CosetError):
        qk.QuotientCoset(3, 1, (2, 0, 0))
    with pytest.raises(CosetError):
        qk.QuotientCoset(3, 1, (4, 0, 0))
    with pytest.raises(CosetError):
        qk.QuotientCoset(3, 1, (2, 2))


def test_enumeration_31_brute_force():
    cosets = list(admissible(3, 1))
    assert len(cosets) == 2 ** qk.index_exponent(3, 1) == 16
    assert len({qk.theta(c) for c in cosets}) == 16


def test_index_exponent_matches_alphas():
    for d, k in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)]:
        assert sum(a.bit_length() - 1 for a in qk.alphas(d, k)) == qk.index_exponent(d, k)
    assert qk.index_exponent(3, 2) == 20


def test_theta_examples():
    assert qk.theta(qk.QuotientCoset(3, 1, (2, 2, 0))).l == (2, 2)
    t = qk.theta(qk.QuotientCoset(3, 1, (1, 3, 0)))
    assert qk.theta_inv(t).n == (1, 3, 0)


@given(st.data())
def test_theta_homomorphism_32(data):
    al = qk.alphas(3, 2)
    draw = lambda: qk.ThetaImage(3, 2, tuple(data.draw(st.integers(0, a - 1)) for a in al))
    s, t = draw(), draw()
    assert qk.theta(qk.theta_inv(s) * qk.theta_inv(t)) == s + t


def test_rho_formula():
    rng = random.Random(2)
    for _ in range(200):
        w = random_stabilizer_word(rng, G3, 2)
        c = qk.coset_of(G3, w, 2)
        r = qk.rho(c)
        assert r.n == tuple((sum(c.n[3 * j:3 * j + 3]) // 2) % 4 for j in range(3))
    with pytest.raises(CosetError):
        qk.rho(qk.QuotientCoset.identity(3, 1))


def test_kernel_from_free_examples():
    el = qk.kernel_from_free(3, [[2, 0]])
    assert el.tower[0].n == (2, 0, 2)
    with pytest.raises(CosetError):
        qk.kernel_from_free(3, [[1, 0]])
    with pytest.raises(CosetError):
        qk.kernel_from_free(3, [[2]])


@given(st.lists(st.integers(0, 1), min_size=2, max_size=2), st.integers(2, 6))
def test_torsion_level_one_only(vals, K):
    eta = [vals] + [[0] * (3**k - 3 ** (k - 1)) for k in range(2, K + 1)]
    prof = qk.torsion_profile(qk.phi_inv(3, eta))
    assert all(o <= 4 for o in prof.orders)


def test_kernel_tower_rejects_incompatible():
    good = qk.kernel_from_free(3, [[2, 0], [0] * 6])
    bad_top = qk.QuotientCoset.identity(3, 2)
    with pytest.raises(CosetError):
        qk.KernelElement(3, (good.tower[0], bad_top))


def test_json_round_trips():
    c = qk.QuotientCoset(3, 1, (2, 2, 0))
    assert qk.QuotientCoset.from_json(c.to_json()) == c
    t = qk.theta(c)
    assert qk.ThetaImage.from_json(t.to_json()) == t
    el = qk.kernel_from_free(3, [[2, 0], [2, 4, 0, 6, 2, 0]])
    assert qk.KernelElement.from_json(el.to_json()) == el


def test_branch_kernel_check_examples():
    for d in (3, 5, 7):
        for k in (1, 2, 3):
            rep = qk.branch_kernel_check(d, k)
            assert rep.passed and rep.forced_total == 2 and not rep.forced_in_H
    with pytest.raises(ValueError):
        qk.branch_kernel_check(3, 0)


def test_coset_mul_level_mismatch():
    with pytest.raises(CosetError):
        qk.coset_mul(qk.QuotientCoset.identity(3, 1), qk.QuotientCoset.identity(3, 2))


def test_rho_example():
    c = qk.QuotientCoset(3, 2, (2, 2, 0, 0, 0, 0, 2, 2, 0))
    assert qk.rho(c).n == (2, 0, 2)


def test_kernel_example_tower_and_phi():
    el = qk.kernel_from_free(3, [[2, 0], [0] * 6])
    assert [c.n for c in el.tower] == [(2, 0, 2), (0, 0, 4, 0, 0, 0, 0, 0, 4)]
    assert qk.phi(el) == [[1, 0], [0] * 6]


def test_torsion_examples():
    ident = qk.kernel_from_free(3, [[0, 0], [0] * 6])
    assert qk.torsion_profile(ident).orders == (1, 1)
    for K in range(2, 7):
        free = [[2**k - 2] * (3**k - 3 ** (k - 1)) for k in range(1, K + 1)]
        prof = qk.torsion_profile(qk.kernel_from_free(3, free))
        assert prof.orders[-1] == 2**K
        assert not prof.finite_evidence


def test_rigid_witness_maps_to_trivial_coset():
    from branchlab.presets import rist1_generators

    sys = gd_system(5)
    for g in rist1_generators(5):
        assert qk.coset_of(sys, g.word, 1) == qk.QuotientCoset.identity(5, 1)


def test_rho_agrees_with_restriction():
    rng = random.Random(8)
    for _ in range(200):
        w = random_stabilizer_word(rng, G3, 2)
        assert qk.rho(qk.coset_of(G3, w, 2)) == qk.coset_of(G3, w, 1)
