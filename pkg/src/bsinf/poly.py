"""Exact polynomial arithmetic: sparse bivariate and dense univariate polynomials
over the rationals, canonical printing, squarefree parts and resultants.

All coefficients are `fractions.Fraction`; no floating point enters this module.
Printing and sign normalization use graded-lexicographic order (total degree,
then exponent of the first variable).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import sympy

from .errors import DegenerateEliminationError, DegreeZeroError, ZeroPolynomialError

Q = Fraction


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected rational coefficient, got {type(c).__name__}")


# ---------------------------------------------------------------------------
# univariate polynomials (dense)
# ---------------------------------------------------------------------------

class UnivarPoly:
    """Dense univariate polynomial; coeffs[k] is the coefficient of t^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> UnivarPoly:
        return cls([_as_fraction(c)])

    @classmethod
    def variable(cls) -> UnivarPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, UnivarPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> UnivarPoly:
        return UnivarPoly([-c for c in self.coeffs])

    def __add__(self, other: UnivarPoly) -> UnivarPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return UnivarPoly(out)

    def __sub__(self, other: UnivarPoly) -> UnivarPoly:
        return self + (-other)

    def __mul__(self, other: UnivarPoly) -> UnivarPoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UnivarPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return UnivarPoly(out)

    def scale(self, c) -> UnivarPoly:
        c = _as_fraction(c)
        return UnivarPoly([c * a for a in self.coeffs])

    def __pow__(self, n: int) -> UnivarPoly:
        if n < 0:
            raise ValueError("negative power")
        result = UnivarPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: UnivarPoly) -> tuple[UnivarPoly, UnivarPoly]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lc = other.leading()
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            factor = rem[-1] / lc
            q[k] = factor
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= factor * c
            while rem and rem[-1] == 0:
                rem.pop()
        return UnivarPoly(q), UnivarPoly(rem)

    def rem(self, other: UnivarPoly) -> UnivarPoly:
        return self.divmod(other)[1]

    def derivative(self) -> UnivarPoly:
        return UnivarPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, t) -> Fraction:
        t = _as_fraction(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def eval_float(self, t: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + float(c)
        return acc

    def primitive(self) -> UnivarPoly:
        """Scale by a positive rational so coefficients are coprime integers.

        The scaling is positive, so sign patterns (hence Sturm variations) are
        preserved.
        """
        if self.is_zero():
            return self
        from math import gcd
        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return self.scale(Fraction(den, num))

    def squarefree(self) -> UnivarPoly:
        if self.is_zero():
            raise ValueError("zero polynomial")
        g = univar_gcd(self, self.derivative())
        if g.degree <= 0:
            return self
        q, r = self.divmod(g)
        assert r.is_zero()
        return q

    def __repr__(self) -> str:
        return f"UnivarPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            body = _format_monomial(c, (("t", k),), leading=not parts)
            parts.append(body)
        return " ".join(parts)


def univar_gcd(a: UnivarPoly, b: UnivarPoly) -> UnivarPoly:
    """Monic gcd over Q, via Euclid with primitive renormalization."""
    while not b.is_zero():
        r = a.rem(b)
        if not r.is_zero():
            r = r.primitive()  # keeps coefficient growth in check
        a, b = b, r
    if a.is_zero():
        return a
    return a.scale(1 / a.leading())


def univariate_resultant(f: UnivarPoly, g: UnivarPoly) -> Fraction:
    """Resultant of two univariate polynomials, equal to the Sylvester determinant."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    m, n = f.degree, g.degree
    if m == 0 and n == 0:
        return Fraction(1)
    if n == 0:
        return g.leading() ** m
    if m == 0:
        return f.leading() ** n
    if m < n:
        sign = -1 if (m * n) % 2 else 1
        return sign * univariate_resultant(g, f)
    r = f.rem(g)
    if r.is_zero():
        return Fraction(0)
    sign = -1 if (m * n) % 2 else 1
    return sign * g.leading() ** (m - r.degree) * univariate_resultant(g, r)


# ---------------------------------------------------------------------------
# bivariate polynomials (sparse)
# ---------------------------------------------------------------------------

def _gradlex_key(exp: tuple[int, int]) -> tuple[int, int]:
    # graded-lex with y as the distinguished variable: "y^2 - x^3", "y - x"
    i, j = exp
    return (-(i + j), -j)


class BivarPoly:
    """Sparse bivariate polynomial: a map (i, j) -> nonzero rational coefficient
    of x^i * y^j.  Instances are immutable; all operations return new values.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Fraction | int] = ()):
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in dict(terms).items():
            c = _as_fraction(c)
            if c != 0:
                if i < 0 or j < 0:
                    raise ValueError("negative exponent")
                clean[(int(i), int(j))] = c
        self._terms = clean
        self._hash: int | None = None

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls) -> BivarPoly:
        return cls()

    @classmethod
    def constant(cls, c) -> BivarPoly:
        return cls({(0, 0): _as_fraction(c)})

    @classmethod
    def x(cls) -> BivarPoly:
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def y(cls) -> BivarPoly:
        return cls({(0, 1): Fraction(1)})

    # -- structure -------------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        return iter(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(i == 0 and j == 0 for (i, j) in self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(i + j for (i, j) in self._terms)

    def deg_in(self, var: str) -> int:
        if not self._terms:
            return -1
        k = 0 if var == "x" else 1
        return max(e[k] for e in self._terms)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the graded-lex leading term."""
        if not self._terms:
            raise ValueError("zero polynomial")
        exp = min(self._terms, key=_gradlex_key)
        return self._terms[exp]

    def __eq__(self, other) -> bool:
        return isinstance(other, BivarPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    # -- arithmetic ------------------------------------------------------------

    def __neg__(self) -> BivarPoly:
        return BivarPoly({e: -c for e, c in self._terms.items()})

    def __add__(self, other: BivarPoly) -> BivarPoly:
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return BivarPoly(out)

    def __sub__(self, other: BivarPoly) -> BivarPoly:
        return self + (-other)

    def __mul__(self, other: BivarPoly) -> BivarPoly:
        if not self._terms or not other._terms:
            return BivarPoly()
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self._terms.items():
            for (k, l), d in other._terms.items():
                e = (i + k, j + l)
                s = out.get(e, Fraction(0)) + c * d
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return BivarPoly(out)

    def scale(self, c) -> BivarPoly:
        c = _as_fraction(c)
        if c == 0:
            return BivarPoly()
        return BivarPoly({e: c * a for e, a in self._terms.items()})

    def __pow__(self, n: int) -> BivarPoly:
        if n < 0:
            raise ValueError("negative power")
        result = BivarPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def partial(self, var: str) -> BivarPoly:
        k = 0 if var == "x" else 1
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in self._terms.items():
            e = (i, j)[k]
            if e:
                ne = (i - 1, j) if k == 0 else (i, j - 1)
                out[ne] = out.get(ne, Fraction(0)) + e * c
        return BivarPoly(out)

    def evaluate(self, px, py) -> Fraction:
        px, py = _as_fraction(px), _as_fraction(py)
        total = Fraction(0)
        for (i, j), c in self._terms.items():
            total += c * px**i * py**j
        return total

    def eval_float(self, px: float, py: float) -> float:
        total = 0.0
        for (i, j), c in self._terms.items():
            total += float(c) * px**i * py**j
        return total

    def homogeneous_part(self, d: int) -> BivarPoly:
        return BivarPoly({e: c for e, c in self._terms.items() if e[0] + e[1] == d})

    def compose(self, px: BivarPoly, py: BivarPoly) -> BivarPoly:
        """Substitute x -> px, y -> py (used by affine-invariance checks)."""
        xi = self.deg_in("x")
        yj = self.deg_in("y")
        xp = [BivarPoly.constant(1)]
        for _ in range(max(xi, 0)):
            xp.append(xp[-1] * px)
        yp = [BivarPoly.constant(1)]
        for _ in range(max(yj, 0)):
            yp.append(yp[-1] * py)
        acc = BivarPoly()
        for (i, j), c in self._terms.items():
            acc = acc + (xp[i] * yp[j]).scale(c)
        return acc

    def coeffs_in(self, var: str) -> list[UnivarPoly]:
        """Coefficients as polynomials in the other variable, index = power of var."""
        k = 0 if var == "x" else 1
        n = self.deg_in(var)
        rows: list[dict[int, Fraction]] = [{} for _ in range(n + 1)]
        for (i, j), c in self._terms.items():
            e = (i, j)[k]
            o = (i, j)[1 - k]
            rows[e][o] = c
        out = []
        for row in rows:
            if row:
                m = max(row)
                out.append(UnivarPoly([row.get(t, 0) for t in range(m + 1)]))
            else:
                out.append(UnivarPoly())
        return out

    def subs_value(self, var: str, value) -> UnivarPoly:
        """Evaluate one variable at a rational, leaving a univariate polynomial."""
        value = _as_fraction(value)
        out: dict[int, Fraction] = {}
        k = 0 if var == "x" else 1
        for (i, j), c in self._terms.items():
            e = (i, j)[k]
            o = (i, j)[1 - k]
            s = out.get(o, Fraction(0)) + c * value**e
            if s:
                out[o] = s
            else:
                out.pop(o, None)
        if not out:
            return UnivarPoly()
        m = max(out)
        return UnivarPoly([out.get(t, 0) for t in range(m + 1)])

    @classmethod
    def from_univar(cls, p: UnivarPoly, var: str) -> BivarPoly:
        k = 0 if var == "x" else 1
        terms = {}
        for e, c in enumerate(p.coeffs):
            if c:
                terms[(e, 0) if k == 0 else (0, e)] = c
        return cls(terms)

    def normalized_primitive(self) -> BivarPoly:
        """Scale so coefficients are coprime integers with positive graded-lex lead."""
        if not self._terms:
            return self
        from math import gcd
        num = 0
        den = 1
        for c in self._terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        scaled = self.scale(Fraction(den, num))
        if scaled.leading_coefficient() < 0:
            scaled = -scaled
        return scaled

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"BivarPoly({dict(sorted(self._terms.items(), key=lambda kv: _gradlex_key(kv[0])))})"


# ---------------------------------------------------------------------------
# canonical printing
# ---------------------------------------------------------------------------

def _format_monomial(c: Fraction, vars_exps: tuple[tuple[str, int], ...], leading: bool) -> str:
    pieces = []
    for name, e in vars_exps:
        if e == 1:
            pieces.append(name)
        elif e > 1:
            pieces.append(f"{name}^{e}")
    mag = abs(c)
    if not pieces or mag != 1:
        pieces.insert(0, str(mag))
    body = "*".join(pieces)
    if leading:
        return f"-{body}" if c < 0 else body
    return f"- {body}" if c < 0 else f"+ {body}"


def format_poly(f: BivarPoly, names: tuple[str, str] = ("x", "y")) -> str:
    """Canonical text: terms in descending graded-lex order, explicit '*' and '^'."""
    if f.is_zero():
        return "0"
    parts = []
    for (i, j) in sorted(f._terms, key=_gradlex_key):
        c = f._terms[(i, j)]
        parts.append(_format_monomial(c, ((names[0], i), (names[1], j)), leading=not parts))
    return " ".join(parts)


# ---------------------------------------------------------------------------
# sympy bridge: squarefree part and irreducible factor split
# ---------------------------------------------------------------------------

_SX, _SY = sympy.symbols("x y")


def to_sympy_poly(f: BivarPoly) -> sympy.Poly:
    rep = {e: sympy.Rational(c.numerator, c.denominator) for e, c in f.items()}
    return sympy.Poly.from_dict(rep, _SX, _SY, domain="QQ")


def from_sympy_poly(p: sympy.Poly) -> BivarPoly:
    terms = {}
    for monom, c in p.as_dict().items():
        c = sympy.Rational(c)
        if len(monom) == 1:
            monom = (monom[0], 0)
        terms[monom] = Fraction(int(c.p), int(c.q))
    return BivarPoly(terms)


def squarefree_part(f: BivarPoly) -> BivarPoly:
    """The product of the distinct irreducible factors of f, canonically scaled.

    Same real zero set as f; coefficients are coprime integers and the
    graded-lex leading coefficient is positive.
    """
    if f.is_zero():
        raise ZeroPolynomialError("squarefree part of the zero polynomial")
    if f.is_constant():
        raise DegreeZeroError("squarefree part of a constant")
    sq = from_sympy_poly(to_sympy_poly(f).sqf_part())
    return sq.normalized_primitive()


@lru_cache(maxsize=256)
def irreducible_factors(f: BivarPoly) -> tuple[BivarPoly, ...]:
    """Distinct irreducible factors of f over Q (multiplicities dropped),
    each primitive with positive graded-lex lead, in a deterministic order.
    """
    _, factors = to_sympy_poly(f).factor_list()
    out = {from_sympy_poly(p).normalized_primitive() for p, _ in factors}
    return tuple(sorted(out, key=lambda g: sorted(g.terms.items())))


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def resultant(f: BivarPoly, g: BivarPoly, var: str) -> UnivarPoly:
    """Sylvester resultant eliminating `var`, as a polynomial in the other variable.

    Computed by evaluation at integer points and Lagrange interpolation; each
    specialization uses the Euclidean recursion, which reproduces the Sylvester
    determinant exactly (including sign).
    """
    if var not in ("x", "y"):
        raise ValueError("var must be 'x' or 'y'")
    other = "y" if var == "x" else "x"
    m, n = f.deg_in(var), g.deg_in(var)
    if m <= 0 or n <= 0:
        raise DegenerateEliminationError(f"input of degree {min(m, n)} in {var}")
    # degree bound from the Sylvester matrix rows
    bound = n * max(f.deg_in(other), 0) + m * max(g.deg_in(other), 0)
    f_rows = f.coeffs_in(var)
    g_rows = g.coeffs_in(var)
    lf, lg = f_rows[-1], g_rows[-1]

    points: list[tuple[Fraction, Fraction]] = []
    t = 0
    while len(points) < bound + 1:
        tq = Fraction(t)
        # degree drop at a sample point would change the determinant; skip it
        if lf(tq) != 0 and lg(tq) != 0:
            ft = UnivarPoly([row(tq) for row in f_rows])
            gt = UnivarPoly([row(tq) for row in g_rows])
            points.append((tq, univariate_resultant(ft, gt)))
        t = -t if t > 0 else -t + 1
    return _lagrange(points)


def _lagrange(points: list[tuple[Fraction, Fraction]]) -> UnivarPoly:
    result = UnivarPoly()
    xs = [p[0] for p in points]
    for k, (xk, yk) in enumerate(points):
        if yk == 0:
            continue
        num = UnivarPoly.constant(1)
        den = Fraction(1)
        for i, xi in enumerate(xs):
            if i != k:
                num = num * UnivarPoly([-xi, 1])
                den *= xk - xi
        result = result + num.scale(yk / den)
    return result
