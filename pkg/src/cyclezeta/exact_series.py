"""Exact rational arithmetic: Bernoulli data, the expansion coefficients
a_k(s) and b_k(s), Chebyshev polynomials, cycle-Laplacian characteristic
polynomials and rooted-forest counts.

Everything here is computed over `fractions.Fraction`, with no floating
point, so the identities built on top of these objects can be checked
exactly.  The two coefficient families are defined by formal expansions
around z = 0:

    (  (z/2) / sin(z/2) )^(2s)            = sum_{k>=0} a_k(s) z^(2k)
    ( ((z/2) / sin(z/2))^(2s) ) cot(z/2)  = sum_{k>=0} b_k(s) z^(2k-1)

with a_k, b_k polynomials of degree k in s.  They satisfy the exact
relation 2(s-k) a_k(s) = s b_k(s) for every k.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "RationalPolynomial",
    "RationalSeries",
    "BundleCharPoly",
    "bernoulli_number",
    "bernoulli_polynomial",
    "a_coefficients",
    "b_coefficients",
    "chebyshev",
    "charpoly_bundle",
    "rooted_forest_count",
    "rooted_forest_count_bruteforce",
]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"expected a rational number, got {value!r}")


class RationalPolynomial:
    """Dense polynomial with Fraction coefficients, constant term first.

    Immutable.  The variable tag ("s", "x", "n", ...) is cosmetic except
    that arithmetic refuses to mix two non-constant polynomials with
    different tags.
    """

    __slots__ = ("coefficients", "variable")

    def __init__(self, coefficients=(), variable: str = "s"):
        coeffs = [_as_fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)
        self.variable = variable

    @property
    def degree(self) -> int:
        """Degree of the leading term; the zero polynomial has degree -1."""
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def _coerce(self, other):
        if isinstance(other, RationalPolynomial):
            return other
        if isinstance(other, (int, Rational)):
            return RationalPolynomial([other], self.variable)
        return None

    def _common_variable(self, other: "RationalPolynomial") -> str:
        if self.degree < 1:
            return other.variable if other.degree >= 1 else self.variable
        if other.degree < 1 or other.variable == self.variable:
            return self.variable
        raise ValueError(f"variable mismatch: {self.variable!r} vs {other.variable!r}")

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.coefficients != other.coefficients:
            return False
        # constants are equal across variable tags
        return self.degree < 1 or other.degree < 1 or self.variable == other.variable

    def __hash__(self):
        return hash(self.coefficients)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        var = self._common_variable(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return RationalPolynomial([self[k] + other[k] for k in range(n)], var)

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial([-c for c in self.coefficients], self.variable)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return RationalPolynomial(
                [c * other for c in self.coefficients], self.variable
            )
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        var = self._common_variable(other)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial((), var)
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            for j, d in enumerate(other.coefficients):
                out[i + j] += c * d
        return RationalPolynomial(out, var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            inv = Fraction(1) / other
            return self * inv
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = RationalPolynomial([1], self.variable)
        for _ in range(n):
            result = result * self
        return result

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(
            [k * c for k, c in enumerate(self.coefficients)][1:], self.variable
        )

    def compose(self, inner: "RationalPolynomial") -> "RationalPolynomial":
        """self(inner(x)), exact, by Horner over polynomial arithmetic."""
        result = RationalPolynomial((), inner.variable)
        for c in reversed(self.coefficients):
            result = result * inner + RationalPolynomial([c], inner.variable)
        return result

    def evaluate(self, x):
        """Horner evaluation; exact for Rational x, binary64 otherwise."""
        acc = Fraction(0) if isinstance(x, (int, Rational)) else type(x)(0)
        for c in reversed(self.coefficients):
            if isinstance(x, (int, Rational)):
                acc = acc * x + c
            else:
                acc = acc * x + type(x)(c)
        return acc

    __call__ = evaluate

    def fraction_strings(self) -> list:
        """Coefficients as exact "num/den" strings, constant term first."""
        return [str(c) for c in self.coefficients]

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for k in reversed(range(len(self.coefficients))):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = " + " if (c > 0 and parts) else " - " if parts else "-" if c < 0 else ""
            mag = abs(c)
            var = "" if k == 0 else self.variable if k == 1 else f"{self.variable}^{k}"
            coeff = str(mag) if (mag != 1 or k == 0) else ""
            sep = "*" if coeff and var else ""
            parts.append(f"{sign}{coeff}{sep}{var}")
        return "".join(parts)

    def __repr__(self):
        return f"RationalPolynomial('{self}')"


class RationalSeries:
    """Truncated formal power series in z^2 over RationalPolynomial.

    Coefficient k stands for the z^(2k) term, or the z^(2k-1) term when
    odd_shift is set (a z^2-series divided by one power of z).  The
    truncation order is explicit and arithmetic never reads beyond it.
    """

    __slots__ = ("coefficients", "order", "odd_shift")

    def __init__(self, coefficients, order: int = None, odd_shift: bool = False):
        coeffs = [
            c if isinstance(c, RationalPolynomial) else RationalPolynomial([c])
            for c in coefficients
        ]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series needs at least the constant term")
        zero = RationalPolynomial(())
        coeffs = (coeffs + [zero] * (order + 1))[: order + 1]
        self.coefficients = tuple(coeffs)
        self.order = order
        self.odd_shift = bool(odd_shift)

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.odd_shift == other.odd_shift
            and self.coefficients == other.coefficients
        )

    def mul(self, other: "RationalSeries") -> "RationalSeries":
        if self.odd_shift and other.odd_shift:
            raise ValueError("product of two odd-shifted series is not representable")
        order = min(self.order, other.order)
        out = []
        for k in range(order + 1):
            acc = RationalPolynomial(())
            for i in range(k + 1):
                acc = acc + self.coefficients[i] * other.coefficients[k - i]
            out.append(acc)
        return RationalSeries(out, order, self.odd_shift or other.odd_shift)

    def scale(self, factor) -> "RationalSeries":
        """Multiply every coefficient by a rational or polynomial factor."""
        if not isinstance(factor, RationalPolynomial):
            factor = RationalPolynomial([factor])
        return RationalSeries(
            [c * factor for c in self.coefficients], self.order, self.odd_shift
        )

    def log(self) -> "RationalSeries":
        """Formal logarithm; requires constant term 1 and no odd shift."""
        if self.odd_shift:
            raise ValueError("log of an odd-shifted series")
        if self.coefficients[0] != 1:
            raise ValueError("log requires constant term 1")
        s = self.coefficients
        out = [RationalPolynomial(())]
        for k in range(1, self.order + 1):
            acc = k * s[k]
            for i in range(1, k):
                acc = acc - i * out[i] * s[k - i]
            out.append(acc / k)
        return RationalSeries(out, self.order)

    def exp(self) -> "RationalSeries":
        """Formal exponential; requires constant term 0 and no odd shift."""
        if self.odd_shift:
            raise ValueError("exp of an odd-shifted series")
        if not self.coefficients[0].is_zero():
            raise ValueError("exp requires constant term 0")
        u = self.coefficients
        out = [RationalPolynomial([1])]
        for k in range(1, self.order + 1):
            acc = RationalPolynomial(())
            for i in range(1, k + 1):
                acc = acc + i * u[i] * out[k - i]
            out.append(acc / k)
        return RationalSeries(out, self.order)

    def __repr__(self):
        shift = ", odd_shift=True" if self.odd_shift else ""
        return f"RationalSeries(order={self.order}{shift})"


@lru_cache(maxsize=None)
def bernoulli_number(k: int) -> Fraction:
    """Bernoulli number B_k, with the B_1 = -1/2 convention.

    Computed from the recurrence sum_{j<=m} C(m+1,j) B_j = 0 (m >= 1),
    which is the coefficient identity of t/(e^t - 1) * (e^t - 1) = t.
    """
    if k < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if k == 0:
        return Fraction(1)
    acc = Fraction(0)
    for j in range(k):
        acc += math.comb(k + 1, j) * bernoulli_number(j)
    return -acc / (k + 1)


@lru_cache(maxsize=None)
def bernoulli_polynomial(k: int) -> RationalPolynomial:
    """Bernoulli polynomial B_k(x) = sum_j C(k,j) B_j x^(k-j), exact."""
    if k < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    coeffs = [Fraction(0)] * (k + 1)
    for j in range(k + 1):
        coeffs[k - j] = math.comb(k, j) * bernoulli_number(j)
    return RationalPolynomial(coeffs, "x")


def _sinc_series(m: int) -> RationalSeries:
    # sin(w)/w = sum (-1)^k w^(2k) / (2k+1)!, in the w^2 variable
    return RationalSeries(
        [Fraction((-1) ** k, math.factorial(2 * k + 1)) for k in range(m + 1)]
    )


def _wcot_series(m: int) -> RationalSeries:
    # w*cot(w) = sum (-4)^k B_{2k} w^(2k) / (2k)!
    return RationalSeries(
        [
            Fraction((-4) ** k) * bernoulli_number(2 * k) / math.factorial(2 * k)
            for k in range(m + 1)
        ]
    )


def _power_series_coefficients(m: int) -> RationalSeries:
    # (w/sin w)^(2s) = exp(-2s * log(sin w / w)), coefficients in w^2,
    # entries are polynomials of degree k in s
    minus_two_s = RationalPolynomial([0, -2], "s")
    return _sinc_series(m).log().scale(minus_two_s).exp()


@lru_cache(maxsize=None)
def a_coefficients(m: int) -> tuple:
    """The polynomials a_0(s) .. a_m(s) of ((z/2)/sin(z/2))^(2s) in z^2.

    Substituting w = z/2 turns the target into (w/sin w)^(2s) with a
    factor 4^(-k) on the k-th coefficient.
    """
    if m < 0:
        raise ValueError("truncation order must be nonnegative")
    e = _power_series_coefficients(m)
    return tuple(
        e.coefficients[k] * Fraction(1, 4**k) for k in range(m + 1)
    )


@lru_cache(maxsize=None)
def b_coefficients(m: int) -> tuple:
    """The polynomials b_0(s) .. b_m(s) of ((z/2)/sin(z/2))^(2s) cot(z/2).

    The product series in w = z/2 is (w/sin w)^(2s) * (w cot w) / w; its
    k-th w^2-coefficient maps to the z^(2k-1) coefficient with a factor
    2/4^k.  Satisfies 2(s-k) a_k(s) = s b_k(s) exactly.
    """
    if m < 0:
        raise ValueError("truncation order must be nonnegative")
    p = _power_series_coefficients(m).mul(_wcot_series(m))
    return tuple(p.coefficients[k] * Fraction(2, 4**k) for k in range(m + 1))


@lru_cache(maxsize=None)
def chebyshev(kind: str, n: int) -> RationalPolynomial:
    """Chebyshev polynomial T_n or U_n ("first" / "second"), exact.

    Three-term recurrence p_{n+1} = 2x p_n - p_{n-1}; the derivative
    identity T_n' = n U_{n-1} holds exactly for these.
    """
    if kind not in ("first", "second"):
        raise ValueError(f"kind must be 'first' or 'second', got {kind!r}")
    if n < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    x = RationalPolynomial([0, 1], "x")
    prev = RationalPolynomial([1], "x")
    cur = x if kind == "first" else 2 * x
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def _exact_cos_two_pi(theta: Fraction):
    """cos(2*pi*theta) as a Fraction when rational, else None.

    By Niven's theorem the cosine of a rational multiple of pi is
    rational only for the values {0, +-1/2, +-1}, i.e. denominators
    1, 2, 3, 4, 6 of theta mod 1.
    """
    t = theta % 1
    return {
        1: Fraction(1),
        2: Fraction(-1),
        3: Fraction(-1, 2),
        4: Fraction(0),
        6: Fraction(1, 2),
    }.get(t.denominator)


class BundleCharPoly:
    """Characteristic polynomial of the twisted cycle Laplacian with the
    cos(2*pi*theta) constant kept symbolic.

    Represents base(y) + cos_coefficient * cos(2*pi*theta) where base is
    an exact RationalPolynomial in y.  Returned by charpoly_bundle when
    cos(2*pi*theta) is irrational; evaluation substitutes binary64.
    """

    __slots__ = ("n", "theta", "base", "cos_coefficient")

    def __init__(self, n: int, theta, base: RationalPolynomial, cos_coefficient):
        self.n = n
        self.theta = theta
        self.base = base
        self.cos_coefficient = _as_fraction(cos_coefficient)

    def evaluate(self, y):
        c = math.cos(2.0 * math.pi * float(self.theta))
        return self.base.evaluate(y) + float(self.cos_coefficient) * c

    __call__ = evaluate

    def numeric_coefficients(self) -> list:
        """binary64 coefficients, constant term first, cosine folded in."""
        c = math.cos(2.0 * math.pi * float(self.theta))
        out = [float(v) for v in self.base.coefficients]
        if not out:
            out = [0.0]
        out[0] += float(self.cos_coefficient) * c
        return out

    def __repr__(self):
        return (
            f"BundleCharPoly(n={self.n}, theta={self.theta}, "
            f"base='{self.base}', cos_coefficient={self.cos_coefficient})"
        )


def charpoly_bundle(n: int, theta):
    """Characteristic polynomial P(y) = det(Delta_{n,theta} - y) of the
    twisted Laplacian on the n-cycle, via P(y) = 2*[T_n(1 - y/2) - cos(2*pi*theta)].

    Exact: returns a RationalPolynomial in y whenever cos(2*pi*theta) is
    rational (theta with denominator 1, 2, 3, 4 or 6), else a
    BundleCharPoly carrying the cosine symbolically.  The roots of P are
    the eigenvalues 4*sin^2(pi*(j+theta)/n), j = 0..n-1.
    """
    if n < 1:
        raise ValueError("cycle length must be >= 1")
    arg = RationalPolynomial([1, Fraction(-1, 2)], "y")
    base = 2 * chebyshev("first", n).compose(arg)
    if isinstance(theta, (int, Rational)):
        cos_val = _exact_cos_two_pi(_as_fraction(theta))
        if cos_val is not None:
            return base + RationalPolynomial([-2 * cos_val], "y")
    return BundleCharPoly(n, theta, base, Fraction(-2))


@lru_cache(maxsize=None)
def rooted_forest_count(n: int, k: int) -> int:
    """Number of rooted spanning forests of the n-cycle with k components
    (each component carries one marked root).

    Closed form 2n*(n+k-1)! / ((n-k)! (2k)!); cross-checked against the
    independent subset enumerator for every n <= 7.  These are, up to
    sign, the coefficients of det(y + Delta_{n,0}).
    """
    if not 1 <= k <= n:
        raise ValueError(f"component count k={k} out of range 1..{n}")
    val = Fraction(2 * n * math.comb(n + k - 1, 2 * k - 1), 2 * k)
    if val.denominator != 1:
        raise ArithmeticError(f"closed formula not integral at n={n}, k={k}")
    count = int(val)
    if n <= 7:
        direct = rooted_forest_count_bruteforce(n, k)
        if direct != count:
            raise ArithmeticError(
                f"closed formula {count} disagrees with enumeration {direct} "
                f"at n={n}, k={k}"
            )
    return count


def _cycle_edges(n: int) -> list:
    # the 1-cycle is a loop, the 2-cycle a doubled edge
    if n == 1:
        return [(0, 0)]
    if n == 2:
        return [(0, 1), (0, 1)]
    return [(i, (i + 1) % n) for i in range(n)]


@lru_cache(maxsize=None)
def rooted_forest_count_bruteforce(n: int, k: int) -> int:
    """Independent oracle: enumerate all (n-k)-edge subsets of the cycle,
    keep the acyclic ones, and weight each forest by its number of
    rootings (product of component sizes)."""
    if not 1 <= k <= n:
        raise ValueError(f"component count k={k} out of range 1..{n}")
    from itertools import combinations

    edges = _cycle_edges(n)
    total = 0
    for subset in combinations(range(len(edges)), n - k):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        acyclic = True
        for idx in subset:
            u, v = edges[idx]
            ru, rv = find(u), find(v)
            if ru == rv:
                acyclic = False
                break
            parent[ru] = rv
        if not acyclic:
            continue
        sizes = {}
        for v in range(n):
            r = find(v)
            sizes[r] = sizes.get(r, 0) + 1
        rootings = 1
        for size in sizes.values():
            rootings *= size
        total += rootings
    return total
