import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from majstat.cumulants import DegenerateDistribution
from majstat.limits import (
    FamilyExpressionError,
    LimitLaw,
    beta_integral_check,
    classify_family,
    cumulant_decay,
    hook_power_gap,
    irwin_hall_cdf,
    irwin_hall_pdf,
    ks_distance,
    local_limit_deviation,
    maj_table,
    normal_cdf,
    normal_pdf,
    parse_family,
    plot_rows,
    power_gap_bounds,
    shape_metrics,
)
from majstat.qpoly import DistributionTable, IntPolynomial, distribution_from_poly
from majstat.shapes import Partition


def test_irwin_hall_closed_values():
    assert irwin_hall_cdf(1, 0.3) == pytest.approx(0.3)
    assert irwin_hall_cdf(2, 0.5) == pytest.approx(0.125)
    assert irwin_hall_cdf(2, 1.5) == pytest.approx(0.875)
    assert irwin_hall_pdf(2, 1) == 1.0
    assert irwin_hall_pdf(3, 1.5) == pytest.approx(0.75)
    assert irwin_hall_cdf(4, -1) == 0.0 and irwin_hall_cdf(4, 9) == 1.0


@given(st.integers(1, 40))
def test_irwin_hall_symmetry_is_exact(M):
    assert irwin_hall_cdf(M, M / 2) == pytest.approx(0.5, abs=1e-12)
    assert 0.0 <= irwin_hall_cdf(M, M * 0.9) <= 1.0


def test_standardized_irwin_hall_tends_to_normal():
    law = LimitLaw.irwin_hall(40)
    for z in (-2, -0.5, 0.7, 1.9):
        assert law.cdf(z) == pytest.approx(normal_cdf(z), abs=5e-3)


def test_normal_reference():
    assert normal_cdf(0) == 0.5
    assert normal_cdf(1.959963984540054) == pytest.approx(0.975)
    assert normal_pdf(0) == pytest.approx(1 / math.sqrt(2 * math.pi))
    assert normal_pdf(3, 3, 4) == pytest.approx(1 / (2 * math.sqrt(2 * math.pi)))


def test_ks_of_two_point_law_against_normal():
    t = DistributionTable((0, 1), (Fraction(1, 2), Fraction(1, 2)))
    # standardized points -1, 1: the sup is at the left limit of +1
    assert ks_distance(t, LimitLaw.normal()) == pytest.approx(normal_cdf(1) - 0.5)


def test_ks_discrete_law_self_distance():
    t = maj_table((3, 2))
    assert ks_distance(t, LimitLaw.discrete(t)) == 0.0


def test_ks_example_ordering():
    assert shape_metrics((50, 2)).ks_normal > shape_metrics((8, 8, 7, 6, 5, 5, 5, 2, 2)).ks_normal


def test_shape_metrics_two_row_example():
    m = shape_metrics((105, 5))
    assert m.aft == 5
    assert m.kappa4_star == pytest.approx(-0.24127, abs=1e-5)
    assert m.ks_irwin_hall < m.ks_normal


def test_shape_metrics_degenerate():
    m = shape_metrics((7,))
    assert m.kappa4_star is None and m.ks_normal is None


def test_classify_growing_aft():
    shapes = parse_family("ceil(exp(j)),j @ j=1..7")
    assert classify_family(shapes, ks=False).verdict == "i"


def test_classify_fixed_aft():
    r = classify_family(parse_family("N+5,5 @ N=20..100:10"), ks=False)
    assert (r.verdict, r.limit) == ("ii", "IH_5*")


def test_classify_repeating_pair():
    shapes = [Partition((12, 12, 3, 3, 3, 2, 2, 1, 1)), Partition((15, 6, 6, 6, 4, 2))] * 3
    assert classify_family(shapes, ks=False).verdict == "iii"


def test_classify_inconclusive_when_aft_drops():
    shapes = [Partition((3, 3)), Partition((6, 6)), Partition((12, 1))]
    assert classify_family(shapes, ks=False).verdict == "inconclusive"


def test_cumulant_decay_staircase_and_two_row():
    stair = [cumulant_decay(tuple(range(k, 0, -1)), 4) for k in (6, 9, 12)]
    assert stair == sorted(stair, reverse=True)
    assert all(2.0 < v < 2.2 for v in stair)
    assert cumulant_decay((405, 5), 4) == pytest.approx(6 / 5, abs=1e-2)
    with pytest.raises(ValueError):
        cumulant_decay((3, 2), 3)
    with pytest.raises(DegenerateDistribution):
        cumulant_decay((4,), 4)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_beta_integral(d):
    assert beta_integral_check(10_000, d) == pytest.approx(1.0, abs=1e-3)


def test_local_limit_deviation():
    v = local_limit_deviation((50, 3, 1))
    assert 0 < v < 1 / 9
    with pytest.raises(DegenerateDistribution):
        local_limit_deviation((30, 1))


def test_hook_power_gap_small():
    # hooks of (3,2): 4,3,1,2,1 ; 1+4+9+16+25 - (16+9+1+4+1) = 24
    assert hook_power_gap((3, 2), 2) == 24
    assert hook_power_gap((5,), 3) == 0


def test_power_gap_regimes():
    small = power_gap_bounds((5, 4, 3, 2, 1), 2)
    assert small.regime == "small-hook" and small.strict and small.ok
    large = power_gap_bounds((20, 1), 2)
    assert large.regime == "large-hook" and not large.strict and large.ok
    with pytest.raises(ValueError):
        power_gap_bounds((8, 1), 2)


def test_plot_rows_columns():
    rows = plot_rows((2, 2))
    assert [r["count"] for r in rows] == [0, 0, 1, 0, 1]
    assert set(rows[0]) == {"k", "count", "normal_pdf_scaled", "ih_pdf_scaled"}
    assert rows[3]["normal_pdf_scaled"] == pytest.approx(2 * normal_pdf(3, 3, 1))
    assert all(r["ih_pdf_scaled"] == "" for r in plot_rows((5, 1, 1), overlay=("normal",)))


def test_parse_family():
    assert [str(s) for s in parse_family("N+5,5 @ N=20..40:10")] == ["25,5", "35,5", "45,5"]
    assert [s.parts for s in parse_family("j,(1,)*j @ j=2|3")] == [(2, 1, 1), (3, 1, 1, 1)]
    blocks = parse_family("k;k @ k=2")
    assert blocks[0].size == 4
    for bad in ("N,N", "N,N @ =1..2", "N,M @ N=1..2", "__import__('os') @ N=1", "N/2,1 @ N=3"):
        with pytest.raises((FamilyExpressionError, ValueError)):
            parse_family(bad)
