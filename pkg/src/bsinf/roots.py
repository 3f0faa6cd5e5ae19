"""Certified real-root tools for univariate polynomials over Q.

Sturm-sequence sign-variation counting plus dyadic bisection; rational roots
are extracted exactly, so isolating intervals for the remaining roots never
have roots at their endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .poly import UnivarPoly

_T = sympy.Symbol("t")


@dataclass(frozen=True)
class RootInterval:
    """An interval containing exactly one real root of the polynomial it isolates.

    If exact_point is set, low == high == exact_point and the root is rational.
    """

    low: Fraction
    high: Fraction
    exact_point: Fraction | None = None

    def __post_init__(self):
        if self.low > self.high:
            raise ValueError("low > high")
        if self.exact_point is not None and not (self.low == self.high == self.exact_point):
            raise ValueError("exact interval must be degenerate")

    @property
    def width(self) -> Fraction:
        return self.high - self.low


def sturm_chain(p: UnivarPoly) -> list[UnivarPoly]:
    """Sturm chain of p; remainders are renormalized by positive factors only."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    chain = [p.primitive()]
    d = p.derivative()
    if d.is_zero():
        return chain
    chain.append(d.primitive())
    while True:
        r = -chain[-2].rem(chain[-1])
        if r.is_zero():
            return chain
        chain.append(r.primitive())


def sign_variations(chain: list[UnivarPoly], t: Fraction) -> int:
    signs = []
    for q in chain:
        v = q(t)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_in(p: UnivarPoly, low: Fraction, high: Fraction) -> int:
    """Number of distinct real roots of p in the half-open interval (low, high]."""
    low, high = Fraction(low), Fraction(high)
    if not low < high:
        raise ValueError("need low < high")
    if p.is_zero():
        raise ValueError("zero polynomial")
    chain = sturm_chain(p.squarefree())
    return sign_variations(chain, low) - sign_variations(chain, high)


def cauchy_root_bound(p: UnivarPoly) -> Fraction:
    """A dyadic B with every real root of p strictly inside (-B, B)."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    lc = abs(p.leading())
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    bound = 1 + m / lc
    b = Fraction(1)
    while b < bound:
        b *= 2
    return b


def _rational_roots(p: UnivarPoly) -> list[Fraction]:
    """All rational roots of p, via exact univariate factorization."""
    rep = {(k,): sympy.Rational(c.numerator, c.denominator) for k, c in enumerate(p.coeffs) if c}
    sp = sympy.Poly.from_dict(rep, _T, domain="QQ")
    roots = []
    for fac, _ in sp.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.nth(1), fac.nth(0)
            roots.append(Fraction(-int(b.p), int(b.q)) / Fraction(int(a.p), int(a.q)))
    return sorted(roots)


def isolate_real_roots(p: UnivarPoly) -> list[RootInterval]:
    """Pairwise-disjoint isolating intervals, one per distinct real root of p,
    sorted by low endpoint; rational roots come back as exact points.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    sf = p.squarefree().primitive()
    if sf.degree <= 0:
        return []

    exact = _rational_roots(sf)
    rest = sf
    for q in exact:
        rest, rem = rest.divmod(UnivarPoly([-q, 1]))
        assert rem.is_zero()

    intervals = [RootInterval(q, q, q) for q in exact]
    if rest.degree > 0:
        chain = sturm_chain(rest)
        b = cauchy_root_bound(rest)
        out: list[tuple[Fraction, Fraction]] = []

        def rec(lo: Fraction, hi: Fraction, vlo: int, vhi: int) -> None:
            k = vlo - vhi
            if k == 0:
                return
            if k == 1:
                out.append((lo, hi))
                return
            mid = (lo + hi) / 2
            vm = sign_variations(chain, mid)  # rest has no rational roots
            rec(lo, mid, vlo, vm)
            rec(mid, hi, vm, vhi)

        rec(-b, b, sign_variations(chain, -b), sign_variations(chain, b))

        for lo, hi in out:
            # shrink until no rational root of p sits inside the interval
            while any(lo <= q <= hi for q in exact):
                mid = (lo + hi) / 2
                if rest(lo) * rest(mid) < 0:
                    hi = mid
                else:
                    lo = mid
            intervals.append(RootInterval(lo, hi))

    return sorted(intervals, key=lambda iv: iv.low)


def refine_root(p: UnivarPoly, interval: RootInterval, max_width: Fraction) -> RootInterval:
    """Shrink an isolating interval of p to the requested width by sign bisection."""
    if interval.exact_point is not None:
        return interval
    sf = p.squarefree()
    lo, hi = interval.low, interval.high
    slo = sf(lo)
    if slo == 0 or sf(hi) == 0 or slo * sf(hi) > 0:
        raise ValueError("not a sign-change isolating interval")
    while hi - lo > max_width:
        mid = (lo + hi) / 2
        smid = sf(mid)
        if smid == 0:
            return RootInterval(mid, mid, mid)
        if slo * smid < 0:
            hi = mid
        else:
            lo, slo = mid, smid
    return RootInterval(lo, hi)


def min_nonzero_root_magnitude(p: UnivarPoly) -> Fraction | None:
    """A positive rational m with m <= |r| for every nonzero real root r of p
    (strictly below unless r is rational and |r| == m).  None when p has no
    nonzero real roots.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    coeffs = list(p.coeffs)
    shift = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    stripped = UnivarPoly(coeffs)
    if stripped.degree <= 0:
        return None
    best: Fraction | None = None
    for iv in isolate_real_roots(stripped):
        if iv.exact_point is not None:
            mag = abs(iv.exact_point)
        else:
            lo, hi = iv.low, iv.high
            sf = stripped.squarefree()
            slo = sf(lo)
            while lo <= 0 <= hi:
                mid = (lo + hi) / 2
                smid = sf(mid)
                # 0 is not a root of stripped, so bisection pushes one endpoint past it
                if smid == 0:
                    lo = hi = mid
                    break
                if slo * smid < 0:
                    hi = mid
                else:
                    lo, slo = mid, smid
            mag = min(abs(lo), abs(hi))
        if mag > 0 and (best is None or mag < best):
            best = mag
    return best
