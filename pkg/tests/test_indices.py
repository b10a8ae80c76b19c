import math

import mpmath
import pytest

from branchlab.indices import (
    aut_index,
    aut_index_wreath,
    gd_index,
    hausdorff_dimension,
    hausdorff_limit,
    index_table,
    rist_index,
    st_step_index,
)
from branchlab.permgroup import group_order
from branchlab.presets import gd_system
from branchlab.quotient import index_exponent


def test_index_examples():
    assert gd_index(3, 1).value == 6
    assert gd_index(3, 2).value == 648
    assert st_step_index(3, 1).value == 108
    assert rist_index(3, 1).value == 16


def test_table_row_one_d3():
    row = index_table(3, 2)[0]
    assert (row.st_step.value, row.gd.value, row.aut.value, row.rist.value) == (108, 648, 1296, 16)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_telescoping(d):
    for k in range(1, 6):
        assert gd_index(d, k + 1).value == gd_index(d, k).value * st_step_index(d, k).value


@pytest.mark.parametrize("d", [3, 5])
def test_aut_matches_wreath_recursion(d):
    for k in range(1, 5):
        assert aut_index(d, k).value == aut_index_wreath(d, k)


def test_rist_matches_quotient_exponent():
    for d, k in [(3, 1), (3, 2), (5, 3)]:
        assert rist_index(d, k).value == 2 ** index_exponent(d, k)


@pytest.mark.parametrize("d,k", [(3, 1), (3, 2), (5, 1)])
def test_oracle_orders(d, k):
    gens = [p.as_tuple() for p in gd_system(d).generator_level_perms(k)]
    assert group_order(gens) == gd_index(d, k).value


def test_large_table_is_exact_and_factored():
    rows = index_table(3, 8)
    top = rows[-1].gd
    assert top.digits() > 4300
    assert top.to_json(max_digits=10**6)["value"] == top.decimal()
    assert top.to_json(max_digits=10)["value"] is None
    assert top.text(max_digits=10) == f"6^{top.e_fact}/2^{top.e_two}"
    assert top.text(max_digits=10**6) == top.decimal()


def test_table_guard():
    with pytest.raises(ValueError):
        index_table(3, 0)
    with pytest.raises(ValueError):
        index_table(3, 100)


def test_hausdorff_d3():
    res = hausdorff_dimension(3, k_max=20, dps=40)
    with mpmath.workdps(40):
        assert abs(res.value - (1 - mpmath.log(2) / (3 * mpmath.log(6)))) < mpmath.mpf(10) ** -35
    assert abs(float(res.value) - 0.8710490642551528) < 1e-15
    assert res.ratios[0] == 1
    assert abs(res.ratios[19] - res.value) < 1e-6


@pytest.mark.parametrize("d", [5, 7])
def test_hausdorff_formula(d):
    assert abs(float(hausdorff_limit(d)) - (1 - math.log(2) / (d * math.log(math.factorial(d))))) < 1e-14
