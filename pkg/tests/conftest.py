"""Shared corpora and independent helper oracles for the test suite."""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from bsinf.poly import BivarPoly, UnivarPoly


def even_sum_tuples(max_entry: int, max_len: int) -> list[tuple[int, ...]]:
    """All nondecreasing tuples over {1..max_entry} of length <= max_len with
    even entry sum."""
    out = []
    for n in range(1, max_len + 1):
        for t in itertools.combinations_with_replacement(range(1, max_entry + 1), n):
            if sum(t) % 2 == 0:
                out.append(t)
    return out


def affine_image(f: BivarPoly, m: tuple[tuple[int, int], tuple[int, int]],
                 t: tuple[int, int]) -> BivarPoly:
    """f composed with the affine map (x, y) -> M(x, y) + t."""
    (a, b), (c, d) = m
    px = BivarPoly({(1, 0): a, (0, 1): b, (0, 0): t[0]})
    py = BivarPoly({(1, 0): c, (0, 1): d, (0, 0): t[1]})
    return f.compose(px, py)


def random_unimodular(rng: random.Random, steps: int = 4) -> tuple[tuple[int, int], tuple[int, int]]:
    """A random integer matrix of determinant +-1 (products of shears, swaps
    and sign flips)."""
    m = [[1, 0], [0, 1]]
    for _ in range(steps):
        kind = rng.randrange(4)
        k = rng.randint(-3, 3)
        if kind == 0:
            m = [[m[0][0] + k * m[1][0], m[0][1] + k * m[1][1]], m[1]]
        elif kind == 1:
            m = [m[0], [m[1][0] + k * m[0][0], m[1][1] + k * m[0][1]]]
        elif kind == 2:
            m = [m[1], m[0]]
        else:
            m = [[-m[0][0], -m[0][1]], m[1]]
    return (tuple(m[0]), tuple(m[1]))


def brute_distinct_real_roots(p: UnivarPoly) -> int:
    """Independent root counter: fine grid sign scan of the squarefree part
    over [-B, B] with B a root bound."""
    sf = p.squarefree()
    if sf.degree <= 0:
        return 0
    lc = abs(sf.leading())
    bound = float(1 + max(abs(c) for c in sf.coeffs) / lc) + 1.0
    xs = np.linspace(-bound, bound, 2 ** 20 + 1)
    coeffs = [float(c) for c in sf.coeffs]
    vals = np.zeros_like(xs)
    for c in reversed(coeffs):
        vals = vals * xs + c
    is_zero = vals == 0.0
    zero_runs = int(is_zero[0]) + int(np.count_nonzero(is_zero[1:] & ~is_zero[:-1]))
    # products are < 0 only when both neighbors are nonzero with opposite sign,
    # so grid-point roots are not double counted
    flips = int(np.count_nonzero(vals[:-1] * vals[1:] < 0.0))
    return zero_runs + flips


def sylvester_resultant(f: BivarPoly, g: BivarPoly, var: str) -> UnivarPoly:
    """Reference resultant: the Sylvester determinant expanded by fraction-free
    Gaussian elimination over polynomials in the other variable."""
    fr = f.coeffs_in(var)
    gr = g.coeffs_in(var)
    m, n = len(fr) - 1, len(gr) - 1
    size = m + n
    one = UnivarPoly.constant(1)
    mat = [[UnivarPoly() for _ in range(size)] for _ in range(size)]
    for row in range(n):
        for k, c in enumerate(reversed(fr)):
            mat[row][row + k] = c
    for row in range(m):
        for k, c in enumerate(reversed(gr)):
            mat[n + row][row + k] = c
    # Bareiss elimination; exact division at each step
    prev = one
    sign = 1
    for col in range(size - 1):
        pivot_row = next((r for r in range(col, size) if not mat[r][col].is_zero()), None)
        if pivot_row is None:
            return UnivarPoly()
        if pivot_row != col:
            mat[col], mat[pivot_row] = mat[pivot_row], mat[col]
            sign = -sign
        for r in range(col + 1, size):
            for c in range(col + 1, size):
                num = mat[r][c] * mat[col][col] - mat[r][col] * mat[col][c]
                q, rem = num.divmod(prev)
                assert rem.is_zero()
                mat[r][c] = q
            mat[r][col] = UnivarPoly()
        prev = mat[col][col]
    det = mat[size - 1][size - 1]
    return det if sign == 1 else -det


def trace_signed_counts(germ: BivarPoly, eps: float, grid: int = 2 ** 14) -> tuple[int, int]:
    """Independent float tracer: sign-change scan of the germ on the eps-circle,
    each crossing bisected and classified by the sign of the second coordinate."""
    import math

    vals = [germ.eval_float(eps * math.cos(2 * math.pi * t / grid),
                            eps * math.sin(2 * math.pi * t / grid))
            for t in range(grid)]
    plus = minus = 0
    for t in range(grid):
        a, b = vals[t], vals[(t + 1) % grid]
        if a * b < 0:
            lo, hi = 2 * math.pi * t / grid, 2 * math.pi * (t + 1) / grid
            va = a
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                vm = germ.eval_float(eps * math.cos(mid), eps * math.sin(mid))
                if va * vm <= 0:
                    hi = mid
                else:
                    lo, va = mid, vm
            if math.sin(0.5 * (lo + hi)) > 0:
                plus += 1
            else:
                minus += 1
    return plus, minus


@pytest.fixture(scope="session")
def rng() -> random.Random:
    return random.Random(20260810)


@pytest.fixture(scope="session")
def classic_curves() -> dict[str, str]:
    return {
        "cusp": "y^2 - x^3",
        "quintic_cusp": "y^2 - x^5",
        "parabola": "(y-x)^2 - (y+x)",
        "line_parabola": "((y-x) - 1)*((y-x)^2 - (y+x))",
        "node_at_infinity": "x^2 - y^2 - y^3",
        "circle": "x^2 + y^2 - 1",
    }
