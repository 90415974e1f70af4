"""Floating-point evaluation of the continuous objects: Gamma, Hurwitz
and Riemann zeta, Dirichlet L-functions, the circle spectral zeta and
its theta-derivative, the integer-lattice zeta, and completed xi.

Evaluation strategy for the Hurwitz zeta (everything else reduces to
it):

* s a nonpositive real integer: exact Bernoulli-polynomial value,
  computed in rational arithmetic and rounded once.
* Re s >= 1/2: truncated sum plus Euler-Maclaurin tail.  The shift N
  adapts to |Im s| so the asymptotic correction series bottoms out
  below the target accuracy.
* Re s < 1/2 with rational theta = p/q: the Hurwitz functional equation,
  expressing the value through Gamma and Hurwitz values at 1-s (which
  lie back in the stable half-plane).  A direct Euler-Maclaurin sum is
  hopeless here: its partial sums grow like N^{|Re s|} while the value
  stays bounded, so binary64 cancellation destroys all significant
  digits well before Re s = -10.  Float thetas are snapped to a nearby
  fraction (denominator <= 4096) when that fraction reproduces the
  float exactly.
* Re s < 1/2 with unrecognizably irrational theta: direct
  Euler-Maclaurin fallback, with accuracy degrading as Re s decreases.
  No caller inside this package takes that path.

All complex powers of positive reals use the principal branch, so no
branch ambiguity arises anywhere in this module.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .characters import DirichletCharacter, root_number
from .exact_series import bernoulli_number, bernoulli_polynomial
from .summation import ComplexCompensatedSum

__all__ = [
    "PoleError",
    "EvalOptions",
    "gamma",
    "hurwitz_zeta",
    "hurwitz_zeta_deflated",
    "riemann_zeta",
    "riemann_zeta_deflated",
    "dirichlet_L",
    "circle_zeta",
    "circle_zeta_standard",
    "circle_zeta_regularized",
    "circle_zeta_dtheta",
    "circle_zeta_dtheta_scaled",
    "zeta_Z",
    "completed_xi",
    "completed_xi_residual",
]

_TWO_PI = 2.0 * math.pi
_LOG_TWO_PI = math.log(_TWO_PI)


class PoleError(ValueError):
    """Evaluation requested exactly at a pole."""


@dataclass(frozen=True)
class EvalOptions:
    """Euler-Maclaurin tuning knobs.

    shift: initial terms summed directly before the tail (the N of the
    textbook formula); corrections: Bernoulli tail terms (the M);
    rel_tol: target relative accuracy, used only as a stopping hint.
    """

    shift: int = 30
    corrections: int = 12
    rel_tol: float = 1e-12

    def __post_init__(self):
        if self.shift < 1:
            raise ValueError("shift must be >= 1")
        if self.corrections < 1:
            raise ValueError("corrections must be >= 1")


_DEFAULT_OPTIONS = EvalOptions()


# Lanczos approximation, g = 607/128 with 15 coefficients.  Good to a
# few units in the last place over the right half-plane in binary64.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
)


def gamma(s) -> complex:
    """Gamma(s) for complex s, reflection formula for Re s < 1/2.

    Raises PoleError exactly at s = 0, -1, -2, ...
    """
    z = complex(s)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"gamma pole at s = {int(z.real)}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * gamma(1.0 - z))
    acc = _LANCZOS_COEFFS[0]
    for k in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[k] / (z - 1.0 + k)
    t = z + (_LANCZOS_G - 0.5)
    return math.sqrt(_TWO_PI) * t ** (z - 0.5) * cmath.exp(-t) * acc


def _expm1_complex(w: complex) -> complex:
    # exp(w) - 1 without cancellation for small |w|
    x, y = w.real, w.imag
    if y == 0.0:
        return complex(math.expm1(x), 0.0)
    half = math.sin(0.5 * y)
    return complex(
        math.expm1(x) * math.cos(y) - 2.0 * half * half,
        math.exp(x) * math.sin(y),
    )


@lru_cache(maxsize=None)
def _bernoulli_over_factorial(j: int) -> float:
    return float(bernoulli_number(2 * j) / math.factorial(2 * j))


def _rational_theta(theta):
    """(p, q) with theta = p/q exactly, else None.

    Floats are matched against their best approximation of denominator
    <= 4096; the match must reproduce the float bit for bit.
    """
    if isinstance(theta, Rational):
        f = Fraction(theta)
        return f.numerator, f.denominator
    f = Fraction(float(theta)).limit_denominator(4096)
    if float(f) == float(theta):
        return f.numerator, f.denominator
    return None


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _hurwitz_exact(n: int, theta: Fraction) -> Fraction:
    # zeta(-n, theta) = -B_{n+1}(theta) / (n+1), exact
    return -bernoulli_polynomial(n + 1).evaluate(theta) / (n + 1)


def _hurwitz_em(s: complex, theta: float, options: EvalOptions, deflated: bool) -> complex:
    """Direct Euler-Maclaurin evaluation; intended for Re s >= 1/2.

    With deflated=True computes zeta(s, theta) - 1/(s-1), which is
    finite at s = 1 (the integral term becomes expm1-stable).
    """
    m = options.corrections
    # push the shift out until the correction ratio (|Im s|+2M)/(2 pi N)
    # is comfortably below 1/2
    n_eff = max(options.shift, math.ceil(0.6 * (abs(s.imag) + 2.0 * m)) + 8)
    acc = ComplexCompensatedSum()
    for k in range(n_eff):
        acc.add(cmath.exp(-s * math.log(k + theta)))
    base = n_eff + theta
    log_base = math.log(base)
    if deflated and s == 1.0:
        acc.add(complex(-log_base, 0.0))
    else:
        u = (1.0 - s) * log_base
        if deflated:
            acc.add(_expm1_complex(u) / (s - 1.0))
        else:
            acc.add(cmath.exp(u) / (s - 1.0))
    pw = cmath.exp(-s * log_base)
    acc.add(0.5 * pw)
    rising = s
    power = pw / base
    inv_sq = 1.0 / (base * base)
    prev_mag = math.inf
    for j in range(1, m + 1):
        term = _bernoulli_over_factorial(j) * rising * power
        mag = abs(term)
        if mag > prev_mag:
            break
        acc.add(term)
        if mag < 1e-18 * max(abs(acc.value), 1e-300):
            break
        prev_mag = mag
        rising = rising * (s + (2 * j - 1)) * (s + 2 * j)
        power *= inv_sq
    return acc.value


def _sin_half_ratio(d: complex) -> complex:
    # cos(pi(1+d)/2)/d = -sin(pi d/2)/d, finite at d = 0
    if d == 0.0:
        return complex(-0.5 * math.pi, 0.0)
    return -cmath.sin(0.5 * math.pi * d) / d


def _hurwitz_fe(s: complex, rat: tuple, options: EvalOptions, deflated: bool) -> complex:
    """Functional-equation route for Re s < 1/2, theta = p/q.

    zeta(s, p/q) = 2 Gamma(w) (2 pi q)^(-w)
                   * sum_{r=1}^{q} cos(pi w/2 - 2 pi r p/q) zeta(w, r/q)

    with w = 1-s.  The w = 1 poles of the Hurwitz values on the right
    are summed with coefficient sum_r cos(pi w/2 - 2 pi r p/q), which
    vanishes identically for q >= 2; we therefore use deflated values
    throughout and reinstate the pole part only for q = 1, in the
    cancellation-free form -sin(pi d/2)/d with d = -s.
    """
    p, q = rat
    w = 1.0 - s
    front = 2.0 * gamma(w) * cmath.exp(-w * math.log(_TWO_PI * q))
    acc = ComplexCompensatedSum()
    for r in range(1, q + 1):
        phase = _TWO_PI * ((r * p) % q) / q
        star = _hurwitz_em(w, r / q, options, deflated=True)
        acc.add(cmath.cos(0.5 * math.pi * w - phase) * star)
    total = acc.value
    if q == 1:
        total += _sin_half_ratio(-s)
    value = front * total
    if deflated:
        value -= 1.0 / (s - 1.0)
    return value


def hurwitz_zeta(s, theta, options: EvalOptions = None) -> complex:
    """Hurwitz zeta(s, theta) = sum_{k>=0} (k+theta)^(-s), continued.

    theta in (0, 1], real (pass a Fraction to pin the rational route
    exactly).  Relative accuracy ~1e-12 in the window |Im s| <= 50,
    -30 <= Re s <= 30, for rational theta.  Raises PoleError at s = 1.
    """
    opts = options or _DEFAULT_OPTIONS
    z = complex(s)
    th = float(theta)
    if not 0.0 < th <= 1.0:
        raise ValueError(f"theta must lie in (0, 1], got {theta!r}")
    if z == 1.0:
        raise PoleError("hurwitz_zeta has its pole at s = 1")
    rat = _rational_theta(theta)
    if _is_nonpositive_integer(z):
        n = int(-z.real)
        if rat is not None:
            return complex(float(_hurwitz_exact(n, Fraction(*rat))))
        return complex(float(-bernoulli_polynomial(n + 1).evaluate(th) / (n + 1)))
    if z.real >= 0.5 or rat is None:
        return _hurwitz_em(z, th, opts, deflated=False)
    return _hurwitz_fe(z, rat, opts, deflated=False)


def hurwitz_zeta_deflated(s, theta, options: EvalOptions = None) -> complex:
    """zeta(s, theta) - 1/(s-1): entire in s, equal to -psi(theta) at s = 1."""
    opts = options or _DEFAULT_OPTIONS
    z = complex(s)
    th = float(theta)
    if not 0.0 < th <= 1.0:
        raise ValueError(f"theta must lie in (0, 1], got {theta!r}")
    rat = _rational_theta(theta)
    if _is_nonpositive_integer(z):
        n = int(-z.real)
        if rat is not None:
            exact = _hurwitz_exact(n, Fraction(*rat)) - Fraction(1, int(z.real) - 1)
            return complex(float(exact))
        val = -bernoulli_polynomial(n + 1).evaluate(th) / (n + 1)
        return complex(float(val) - 1.0 / (z.real - 1.0))
    if z.real >= 0.5 or rat is None:
        return _hurwitz_em(z, th, opts, deflated=True)
    return _hurwitz_fe(z, rat, opts, deflated=True)


def riemann_zeta(s, options: EvalOptions = None) -> complex:
    """Riemann zeta(s) = hurwitz_zeta(s, 1)."""
    return hurwitz_zeta(s, Fraction(1), options)


def riemann_zeta_deflated(s, options: EvalOptions = None) -> complex:
    """zeta(s) - 1/(s-1); equals the Euler-Mascheroni constant at s = 1."""
    return hurwitz_zeta_deflated(s, Fraction(1), options)


def dirichlet_L(s, chi: DirichletCharacter, options: EvalOptions = None) -> complex:
    """L(s, chi) = q^(-s) sum_{r} chi(r) zeta(s, r/q), all r in (Z/qZ)^*.

    For non-principal chi the Hurwitz values are replaced by their
    deflated counterparts; orthogonality sum_r chi(r) = 0 makes that
    substitution exact, and it keeps the evaluation stable through
    s = 1 (where it yields L(1, chi) directly).  Principal chi keeps
    its pole at s = 1.
    """
    z = complex(s)
    q = chi.modulus
    if q == 1:
        return riemann_zeta(z, options)
    if chi.is_principal:
        if z == 1.0:
            raise PoleError("L(s, chi) with principal chi has a pole at s = 1")
        acc = ComplexCompensatedSum()
        for r in range(1, q):
            if chi.value_indices[r] == 0:
                acc.add(hurwitz_zeta(z, Fraction(r, q), options))
        return cmath.exp(-z * math.log(q)) * acc.value
    acc = ComplexCompensatedSum()
    for r in range(1, q):
        v = chi.values[r]
        if v != 0:
            acc.add(v * hurwitz_zeta_deflated(z, Fraction(r, q), options))
    return cmath.exp(-z * math.log(q)) * acc.value


def circle_zeta(s, theta, options: EvalOptions = None) -> complex:
    """Spectral zeta of the twisted circle Laplacian:
    (2 pi)^(-2s) [zeta(2s, theta) + zeta(2s, 1-theta)], theta in (0,1).

    Pole at s = 1/2; vanishes exactly at integers s <= 0 (for rational
    theta the cancellation B_{2n+1}(1-theta) = -B_{2n+1}(theta) is done
    in rational arithmetic, so the returned float is exactly 0.0).
    """
    z = complex(s)
    th = float(theta)
    if not 0.0 < th < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta!r}")
    if z == 0.5:
        raise PoleError("circle zeta has its pole at s = 1/2")
    rat = _rational_theta(theta)
    if _is_nonpositive_integer(z) and rat is not None:
        n = int(-z.real)
        f = Fraction(*rat)
        exact = _hurwitz_exact(2 * n, f) + _hurwitz_exact(2 * n, 1 - f)
        return complex(float(exact) * _TWO_PI ** (2 * n))
    pref = cmath.exp(-2.0 * z * _LOG_TWO_PI)
    if rat is not None:
        f = Fraction(*rat)
        pair = hurwitz_zeta(2 * z, f, options) + hurwitz_zeta(2 * z, 1 - f, options)
    else:
        pair = hurwitz_zeta(2 * z, th, options) + hurwitz_zeta(2 * z, 1.0 - th, options)
    return pref * pair


def circle_zeta_standard(s, options: EvalOptions = None) -> complex:
    """Spectral zeta of the plain circle: 2 (2 pi)^(-2s) zeta(2s).

    This is the theta -> 0 regularization (the zero mode dropped);
    value -1 at s = 0, pole at s = 1/2.
    """
    z = complex(s)
    if z == 0.5:
        raise PoleError("circle zeta has its pole at s = 1/2")
    return 2.0 * cmath.exp(-2.0 * z * _LOG_TWO_PI) * riemann_zeta(2 * z, options)


def circle_zeta_regularized(s, theta, options: EvalOptions = None) -> complex:
    """circle_zeta(s, theta) - (2 pi theta)^(-2s): removes the divergent
    mode as theta -> 0+, where the limit is circle_zeta_standard(s)."""
    z = complex(s)
    th = float(theta)
    return circle_zeta(z, theta, options) - cmath.exp(-2.0 * z * math.log(_TWO_PI * th))


def circle_zeta_dtheta_scaled(s, theta, options: EvalOptions = None) -> complex:
    """(2 pi)^(-2s) [zeta*(1+2s, theta) - zeta*(1+2s, 1-theta)] with
    zeta* the deflated Hurwitz zeta.

    Equals -d/dtheta circle_zeta / (2s) and is entire in s; at s = 0
    it is psi(1-theta) - psi(theta) = pi cot(pi theta).
    """
    z = complex(s)
    th = float(theta)
    if not 0.0 < th < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta!r}")
    rat = _rational_theta(theta)
    if rat is not None:
        f = Fraction(*rat)
        a = hurwitz_zeta_deflated(1 + 2 * z, f, options)
        b = hurwitz_zeta_deflated(1 + 2 * z, 1 - f, options)
    else:
        a = hurwitz_zeta_deflated(1 + 2 * z, th, options)
        b = hurwitz_zeta_deflated(1 + 2 * z, 1.0 - th, options)
    return cmath.exp(-2.0 * z * _LOG_TWO_PI) * (a - b)


def circle_zeta_dtheta(s, theta, options: EvalOptions = None) -> complex:
    """d/dtheta of circle_zeta:
    -2s (2 pi)^(-2s) [zeta(1+2s, theta) - zeta(1+2s, 1-theta)].

    Entire in s (the deflation terms cancel in the difference); exactly
    0 for theta = 1/2 and at s = 0.
    """
    z = complex(s)
    return -2.0 * z * circle_zeta_dtheta_scaled(z, theta, options)


def zeta_Z(s) -> complex:
    """Spectral zeta of the integer lattice:
    2^(-2s) Gamma(1/2 - s) / (sqrt(pi) Gamma(1 - s)).

    Equals binom(-2s, -s): binom(2n, n) at s = -n, exactly 0.0 at
    positive integers (the Gamma(1-s) pole), PoleError at half-integers
    s >= 1/2.
    """
    z = complex(s)
    if z.imag == 0.0:
        half = z.real - 0.5
        if half >= 0.0 and half == math.floor(half):
            raise PoleError(f"zeta_Z pole at s = {z.real}")
        if z.real >= 1.0 and z.real == math.floor(z.real):
            return complex(0.0)
    return (0.25**z) / math.sqrt(math.pi) * gamma(0.5 - z) / gamma(1.0 - z)


def completed_xi(s, chi: DirichletCharacter, options: EvalOptions = None) -> complex:
    """Completed L-function: (pi/q)^(-s/2) Gamma((s+1)/2) L(s, chi) for
    odd chi, (pi/q)^(-s/2) Gamma(s/2) L(s, chi) for even chi.

    Requires primitive non-principal chi; Gamma poles propagate as
    PoleError.
    """
    if chi.is_principal or not chi.is_primitive:
        raise ValueError("completed xi requires a primitive non-principal character")
    z = complex(s)
    pref = cmath.exp(-0.5 * z * math.log(math.pi / chi.modulus))
    g = gamma(0.5 * (z + 1.0)) if chi.is_odd else gamma(0.5 * z)
    return pref * g * dirichlet_L(z, chi, options)


def completed_xi_residual(s, chi: DirichletCharacter, options: EvalOptions = None) -> complex:
    """Functional-equation defect xi(s, chi) - w_chi xi(1-s, conj chi);
    zero in exact arithmetic for primitive non-principal chi."""
    w = root_number(chi)
    z = complex(s)
    return completed_xi(z, chi, options) - w * completed_xi(
        1.0 - z, chi.conjugate(), options
    )
