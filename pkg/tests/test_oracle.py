import math

import pytest

from bsinf.invariant import k_at_infinity
from bsinf.oracle import OracleConfig, oracle_k
from bsinf.parsing import parse_poly


def counts_of(report) -> tuple[int, ...]:
    return tuple(sorted(c for _, c in report.directions))


def test_cusp_two_vertical_clusters():
    rep = oracle_k(parse_poly("y^2 - x^3"))
    assert rep.stable
    assert counts_of(rep) == (1, 1)
    dirs = sorted((u for u, _ in rep.directions), key=lambda u: u[1])
    assert math.hypot(dirs[0][0] - 0, dirs[0][1] + 1) < 1e-6
    assert math.hypot(dirs[1][0] - 0, dirs[1][1] - 1) < 1e-6


def test_compact_curve_empty():
    rep = oracle_k(parse_poly("x^2 + y^2 - 1"))
    assert rep.stable and rep.directions == ()


def test_line_plus_parabola_clusters():
    rep = oracle_k(parse_poly("((y-x) - 1)*((y-x)^2 - (y+x))"))
    assert rep.stable
    assert counts_of(rep) == (1, 3)
    by_count = {c: u for u, c in rep.directions}
    r2 = 1 / math.sqrt(2.0)
    assert math.hypot(by_count[3][0] - r2, by_count[3][1] - r2) < 1e-6
    assert math.hypot(by_count[1][0] + r2, by_count[1][1] + r2) < 1e-6


def test_determinism():
    f = parse_poly("((y-x) - 1)*((y-x)^2 - (y+x))")
    a = oracle_k(f)
    b = oracle_k(f)
    assert a == b


def test_monotone_refinement():
    """Doubling the angular grid never loses intersections."""
    for text in ["y^2 - x^3", "((y-x) - 1)*((y-x)^2 - (y+x))", "(y-x-1)*(y-x-2)"]:
        f = parse_poly(text)
        totals = []
        for grid in (2 ** 12, 2 ** 13, 2 ** 14):
            rep = oracle_k(f, OracleConfig(angular_grid=grid))
            totals.append(sum(c for _, c in rep.directions))
        assert totals[0] <= totals[1] <= totals[2]


def test_agreement_with_exact(classic_curves):
    for text in classic_curves.values():
        f = parse_poly(text)
        rep = oracle_k(f)
        exact = k_at_infinity(f)
        assert rep.stable
        assert counts_of(rep) == exact.k.entries
        exact_dirs = []
        for rec in exact.records:
            for side in (rec.plus, rec.minus):
                if side is not None:
                    exact_dirs.append((side.direction.unit, side.count))
        for u, c in rep.directions:
            dist, count = min(
                (math.hypot(u[0] - eu[0], u[1] - eu[1]), ec) for eu, ec in exact_dirs
            )
            assert dist < 1e-6 and count == c


def test_unstable_flag_with_short_schedule():
    # a schedule that ends before the parabola pair resolves cannot certify
    cfg = OracleConfig(radii_exponents=(4, 5), stability_window=3)
    rep = oracle_k(parse_poly("y^2 - x^3"), cfg)
    assert len(rep.radii_used) == 2
    assert not rep.stable or counts_of(rep) == (1, 1)


def test_constant_rejected():
    from bsinf.poly import BivarPoly

    with pytest.raises(ValueError):
        oracle_k(BivarPoly.constant(3))
