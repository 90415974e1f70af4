"""Finite spectral sums over twisted cycle Laplacians: zeta_n(s, theta),
its theta-derivative, discrete L-functions of both parities, raw
trigonometric sums, their closed forms, and the Laplace-transform /
Chebyshev resolvent identity.

Angle folding.  Every eigenvalue 4 sin^2(pi u/N) is evaluated at the
folded representative min(u, N-u), computed from the integer parts so
that u and N-u produce bit-identical floats (the cotangent picks up the
sign).  This makes the j <-> N-j spectral symmetry exact in binary64:
reflection zeta_n(s, theta) = zeta_n(s, 1-theta) holds to roundoff, and
the parity cancellations in the discrete L-sums (odd character in the
plain sum, even character in the cotangent sum) are exactly zero, not
merely small.

Summation is compensated and ascending in j; L-sums pair j with N-j so
each cancellation happens inside a single term.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .characters import DirichletCharacter
from .exact_series import a_coefficients, chebyshev, _exact_cos_two_pi
from .summation import CompensatedSum, ComplexCompensatedSum
from .analytic import EvalOptions, circle_zeta, circle_zeta_dtheta

__all__ = [
    "SpectrumSum",
    "LaplaceIdentityReport",
    "zeta_n",
    "zeta_n_standard",
    "zeta_n_dtheta",
    "discrete_L",
    "discrete_L_plain",
    "discrete_L_cot",
    "trig_sum_even",
    "trig_sum_odd",
    "trig_closed_forms",
    "laplace_trace_identity",
    "spectrum_sum",
]


def _fold(j: int, theta: float, n: int):
    """Folded angle numerator v in [0, n/2] with sin(pi v/n) equal to
    sin(pi (j+theta)/n), and the cotangent sign."""
    u = j + theta
    if 2.0 * u <= n:
        return u, 1.0
    return (n - j) - theta, -1.0


def _lam(v: float, n: int) -> float:
    # 4 sin^2(pi v / n), v already folded into [0, n/2]
    s = math.sin(math.pi * v / n)
    return 4.0 * s * s


def _cot(v: float, n: int) -> float:
    # cot(pi v / n) on the folded range; exactly 0.0 at the midpoint
    if 2.0 * v == n:
        return 0.0
    x = math.pi * v / n
    return math.cos(x) / math.sin(x)


def _pow_minus(lam: float, s: complex) -> complex:
    # lam^(-s) over the positive real branch
    if s.imag == 0.0:
        return complex(lam ** (-s.real), 0.0)
    return cmath.exp(-s * math.log(lam))


def _check_theta(theta) -> float:
    th = float(theta)
    if not 0.0 < th < 1.0:
        raise ValueError(f"theta must lie strictly in (0, 1), got {theta!r}")
    return th


def zeta_n(s, theta, n: int) -> complex:
    """sum_{j=0}^{n-1} [4 sin^2(pi (j+theta)/n)]^(-s), theta in (0, 1).

    Entire in s (all n eigenvalues are strictly positive); theta = 0
    belongs to zeta_n_standard.
    """
    th = _check_theta(theta)
    if n < 1:
        raise ValueError("n must be >= 1")
    z = complex(s)
    acc = ComplexCompensatedSum()
    for j in range(n):
        v, _ = _fold(j, th, n)
        acc.add(_pow_minus(_lam(v, n), z))
    return acc.value


def zeta_n_standard(s, n: int) -> complex:
    """sum_{j=1}^{n-1} [4 sin^2(pi j/n)]^(-s): the untwisted cycle with
    its zero mode discarded.  Needs n >= 2."""
    if n < 2:
        raise ValueError("untwisted spectrum is empty for n < 2")
    z = complex(s)
    acc = ComplexCompensatedSum()
    for j in range(1, n):
        acc.add(_pow_minus(_lam(min(j, n - j), n), z))
    return acc.value


def zeta_n_dtheta(s, theta, n: int) -> complex:
    """d/dtheta zeta_n:
    -s (2 pi/n) sum_j cot(pi (j+theta)/n) [4 sin^2(pi (j+theta)/n)]^(-s)."""
    th = _check_theta(theta)
    if n < 1:
        raise ValueError("n must be >= 1")
    z = complex(s)
    acc = ComplexCompensatedSum()
    for j in range(n):
        v, sign = _fold(j, th, n)
        c = _cot(v, n)
        if c != 0.0:
            acc.add(sign * c * _pow_minus(_lam(v, n), z))
    return -z * (2.0 * math.pi / n) * acc.value


def _require_non_principal(chi: DirichletCharacter):
    if chi.is_principal:
        raise ValueError("discrete L-sums require a non-principal character")


def discrete_L_plain(s, chi: DirichletCharacter, n: int) -> complex:
    """Even-parity discrete L-function:
    sum_{j=1}^{qn-1} chi(j) [4 sin^2(pi j/(qn))]^(-s).

    Summed in symmetric pairs (j, qn-j); for odd chi the pair weights
    chi(j) + chi(-j) are exactly zero, so the value is exactly 0.0.
    """
    _require_non_principal(chi)
    if n < 1:
        raise ValueError("n must be >= 1")
    z = complex(s)
    q = chi.modulus
    big = q * n
    acc = ComplexCompensatedSum()
    for j in range(1, big // 2 + 1):
        cj = chi.values[j % q]
        if 2 * j == big:
            if cj != 0:
                acc.add(cj * _pow_minus(4.0, z))
            continue
        pair = cj + chi.values[(big - j) % q]
        if pair != 0:
            acc.add(pair * _pow_minus(_lam(j, big), z))
    return acc.value


def discrete_L_cot(s, chi: DirichletCharacter, n: int) -> complex:
    """Odd-parity discrete L-function:
    sum_{j=1}^{qn-1} chi(j) cot(pi j/(qn)) [4 sin^2(pi j/(qn))]^(-s).

    Summed in symmetric pairs; for even chi the value is exactly 0.0.
    """
    _require_non_principal(chi)
    if n < 1:
        raise ValueError("n must be >= 1")
    z = complex(s)
    q = chi.modulus
    big = q * n
    acc = ComplexCompensatedSum()
    for j in range(1, (big + 1) // 2):
        diff = chi.values[j % q] - chi.values[(big - j) % q]
        if diff != 0:
            acc.add(diff * _cot(j, big) * _pow_minus(_lam(j, big), z))
    return acc.value


def discrete_L(s, chi: DirichletCharacter, n: int) -> complex:
    """Parity-dispatched discrete L-function: the plain sum for even chi,
    the cotangent sum for odd chi (the other combination vanishes
    identically)."""
    _require_non_principal(chi)
    if chi.is_odd:
        return discrete_L_cot(s, chi, n)
    return discrete_L_plain(s, chi, n)


def trig_sum_even(n: int, theta, p: int) -> float:
    """Raw trigonometric sum sum_{j=0}^{n-1} sin^(-2p)(pi (j+theta)/n),
    equal to 4^p zeta_n(p, theta).  Independent left side for the
    closed-form identities."""
    th = _check_theta(theta)
    if n < 1 or p < 1:
        raise ValueError("need n >= 1 and p >= 1")
    acc = CompensatedSum()
    for j in range(n):
        v, _ = _fold(j, th, n)
        acc.add(math.sin(math.pi * v / n) ** (-2 * p))
    return acc.value


def trig_sum_odd(n: int, theta, p: int) -> float:
    """Raw sum_{j=0}^{n-1} cot(pi (j+theta)/n) sin^(-2p)(pi (j+theta)/n)."""
    th = _check_theta(theta)
    if n < 1 or p < 1:
        raise ValueError("need n >= 1 and p >= 1")
    acc = CompensatedSum()
    for j in range(n):
        v, sign = _fold(j, th, n)
        c = _cot(v, n)
        if c != 0.0:
            acc.add(sign * c * math.sin(math.pi * v / n) ** (-2 * p))
    return acc.value


def trig_closed_forms(n: int, theta, p: int, options: EvalOptions = None):
    """Closed forms of the two raw trigonometric sums, as the pair

      even: 4^p sum_{k=0}^{p} a_{p-k}(p) zeta_circle(k, theta) n^(2k)
      odd: -(4^p/(2 pi p)) sum_{k=0}^{p} a_{p-k}(p)
                                  dtheta_zeta_circle(k, theta) n^(2k+1)

    with the a-coefficients evaluated exactly at the integer p.  The
    k = 0 terms vanish (circle zeta and its derivative are exactly zero
    there).
    """
    if n < 1 or p < 1:
        raise ValueError("need n >= 1 and p >= 1")
    avals = [float(poly.evaluate(Fraction(p))) for poly in a_coefficients(p)]
    even_acc = ComplexCompensatedSum()
    odd_acc = ComplexCompensatedSum()
    for k in range(p + 1):
        c = avals[p - k]
        even_acc.add(c * circle_zeta(k, theta, options) * float(n) ** (2 * k))
        odd_acc.add(c * circle_zeta_dtheta(k, theta, options) * float(n) ** (2 * k + 1))
    four_p = 4.0**p
    even = four_p * even_acc.value
    odd = -(four_p / (2.0 * math.pi * p)) * odd_acc.value
    return even, odd


@dataclass(frozen=True)
class LaplaceIdentityReport:
    """Both sides of the resolvent identity at one (s, theta, n).

    series_value: sum_{p>=0} s^p zeta_n(p+1, theta), truncated;
    chebyshev_value: (n/2) U_{n-1}(1 - s/2) / (T_n(1 - s/2) - cos(2 pi theta));
    resolvent_value: sum_j 1/(lambda_j - s).
    """

    n: int
    theta: float
    s: float
    terms: int
    series_value: float
    chebyshev_value: float
    resolvent_value: float

    @property
    def residual(self) -> float:
        return abs(self.series_value - self.chebyshev_value)

    @property
    def resolvent_residual(self) -> float:
        return abs(self.resolvent_value - self.chebyshev_value)


def laplace_trace_identity(
    s, theta, n: int, tail_tol: float = 1e-12, max_terms: int = 200
) -> LaplaceIdentityReport:
    """Check sum_p s^p zeta_n(p+1, theta) against its Chebyshev closed
    form and the direct resolvent sum.

    Requires |s| <= lambda_min/2 (half the smallest eigenvalue), which
    keeps the series ratio below 1/2; the truncation point is chosen so
    the geometric tail bound is below tail_tol.
    """
    th = _check_theta(theta)
    if n < 1:
        raise ValueError("n must be >= 1")
    sf = float(s)
    lams = []
    for j in range(n):
        v, _ = _fold(j, th, n)
        lams.append(_lam(v, n))
    lam_min = min(lams)
    if abs(sf) > 0.5 * lam_min:
        raise ValueError(
            f"|s| = {abs(sf):.3g} exceeds half the smallest eigenvalue "
            f"({0.5 * lam_min:.3g}); the power series is not safely convergent"
        )
    weights = [1.0 / l for l in lams]
    acc = CompensatedSum()
    terms = 0
    for _ in range(max_terms):
        term = math.fsum(weights)
        acc.add(term)
        terms += 1
        # ratio <= 1/2, so the tail is at most |term|
        if abs(term) <= tail_tol * max(abs(acc.value), 1.0):
            break
        weights = [w * sf / l for w, l in zip(weights, lams)]

    x0 = 1.0 - 0.5 * sf
    tn = chebyshev("first", n).evaluate(x0)
    un = chebyshev("second", n - 1).evaluate(x0)
    rat = _exact_cos_two_pi(Fraction(theta).limit_denominator(4096))
    cos_th = (
        float(rat)
        if rat is not None and float(Fraction(theta).limit_denominator(4096)) == th
        else math.cos(2.0 * math.pi * th)
    )
    cheb = 0.5 * n * un / (tn - cos_th)

    res = CompensatedSum()
    for l in lams:
        res.add(1.0 / (l - sf))

    return LaplaceIdentityReport(
        n=n,
        theta=th,
        s=sf,
        terms=terms,
        series_value=acc.value,
        chebyshev_value=cheb,
        resolvent_value=res.value,
    )


@dataclass(frozen=True)
class SpectrumSum:
    """A finite spectral sum together with what was summed."""

    kind: str  # plain | standard | dtheta | even_L | odd_L
    n: int
    s: complex
    value: complex
    terms_summed: int
    theta: float = None
    chi: DirichletCharacter = None


def spectrum_sum(kind: str, s, n: int, theta=None, chi: DirichletCharacter = None) -> SpectrumSum:
    """Evaluate one of the finite sums and wrap it with its metadata."""
    z = complex(s)
    if kind == "plain":
        return SpectrumSum(kind, n, z, zeta_n(z, theta, n), n, theta=float(theta))
    if kind == "standard":
        return SpectrumSum(kind, n, z, zeta_n_standard(z, n), n - 1)
    if kind == "dtheta":
        return SpectrumSum(kind, n, z, zeta_n_dtheta(z, theta, n), n, theta=float(theta))
    if kind in ("even_L", "odd_L"):
        if chi is None:
            raise ValueError("L-sums need a character")
        fn = discrete_L_plain if kind == "even_L" else discrete_L_cot
        return SpectrumSum(kind, n, z, fn(z, chi, n), chi.modulus * n - 1, chi=chi)
    raise ValueError(f"unknown sum kind {kind!r}")
