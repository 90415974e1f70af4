"""Large-n expansions of the discrete spectral sums and their exact endpoints.

Three families of truncated expansions, all with polynomial coefficient data
from :mod:`cyclezeta.exact_series` and continuous special functions from
:mod:`cyclezeta.analytic`:

* the offset spectral zeta of Z/nZ:
  n zeta_Z(s) + n^{2s} sum_k a_k(s) zeta_{R/Z}(s - k, theta) n^{-2k},
* its theta derivative (same shape, derivative circle values, no baseline),
* discrete Dirichlet L-sums, one shape per character parity.

At integer s every one of these truncates to an exact identity: the even
expansions because the circle zeta and even L-functions vanish at
non-positive even arguments, the odd one because b_k(k) = 0 and odd
L-functions vanish at negative odd integers.  :func:`special_values` packages
those exact identities (and the plain no-offset one) as checkable reports,
:func:`zeta_recursion_table` chains them into recursions that regenerate
zeta(2), zeta(4), ... from zeta(0) alone, and :func:`siegel_sign_probe`
tabulates the sign data that a discrete positivity argument turns into
one-sided bounds on L(s, chi) in the real interval (0, 1).

Away from integer s the truncation error is a power of n; tests fit its
exponent empirically with :func:`remainder_order` and compare against the
predicted one recorded on each :class:`ExpansionResult`.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .analytic import (
    PoleError,
    circle_zeta,
    circle_zeta_dtheta,
    circle_zeta_standard,
    dirichlet_L,
    riemann_zeta,
    zeta_Z,
)
from .characters import DirichletCharacter
from .discrete_spectra import (
    discrete_L,
    trig_closed_forms,
    trig_sum_even,
    trig_sum_odd,
    zeta_n,
    zeta_n_dtheta,
    zeta_n_standard,
)
from .exact_series import a_coefficients, b_coefficients
from .scan import ScanTable

_TWO_PI = 2.0 * math.pi


class ExactTermination(ArithmeticError):
    """Truncation error is identically zero: the expansion is an identity."""


@dataclass(frozen=True)
class ExpansionResult:
    """A truncated expansion: per-term contributions and the predicted tail.

    ``terms[k]`` is the complete k-th summand (coefficient, special value
    and power of n all multiplied in), so ``baseline + sum(terms)`` rebuilds
    ``value`` exactly.  ``predicted_exponent`` is the expected power of n in
    the first omitted term, against which empirical fits are compared.
    """

    m: int
    value: complex
    terms: tuple
    baseline: complex
    predicted_exponent: float


def _validate_truncation(n, m) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be an integer >= 1")
    if not isinstance(m, int) or m < 0:
        raise ValueError("truncation order m must be an integer >= 0")


def _is_half_odd_integer(s: complex) -> bool:
    return s.imag == 0.0 and s.real % 1.0 == 0.5


def expand_zeta_n(s, theta, n: int, m: int) -> ExpansionResult:
    """Truncated expansion of zeta_{Z/nZ}(s, theta) in powers of n^{-2}.

    Value is n zeta_Z(s) plus n^{2s} sum_{k=0}^{m} a_k(s)
    zeta_{R/Z}(s - k, theta) n^{-2k}; the remainder is O(n^{2 Re s - 2 - 2m}).
    Positive half-integer s is rejected: zeta_Z and the circle zeta factors
    have poles there.  At integer s = p the tail vanishes identically once
    m >= p, making the truncation an exact formula.
    """
    s = complex(s)
    if _is_half_odd_integer(s) and s.real > 0.0:
        raise PoleError("positive half-integer s meets the spectral zeta poles")
    _validate_truncation(n, m)
    coeffs = a_coefficients(m)
    baseline = n * complex(zeta_Z(s))
    terms = []
    for k in range(m + 1):
        a_k = complex(coeffs[k].evaluate(s))
        circ = complex(circle_zeta(s - k, theta))
        terms.append(a_k * circ * n ** (2 * s - 2 * k))
    value = baseline + sum(terms, 0j)
    return ExpansionResult(m, value, tuple(terms), baseline, 2.0 * s.real - 2.0 - 2 * m)


def expand_zeta_n_dtheta(s, theta, n: int, m: int) -> ExpansionResult:
    """Truncated expansion of the theta derivative of zeta_{Z/nZ}(s, theta).

    n^{2s} sum_k a_k(s) (d/dtheta) zeta_{R/Z}(s - k, theta) n^{-2k}, valid
    for every s: the derivative circle zeta is entire, so no arguments are
    excluded.  Remainder O(n^{2 Re s - 2 - 2m}).
    """
    s = complex(s)
    _validate_truncation(n, m)
    coeffs = a_coefficients(m)
    terms = []
    for k in range(m + 1):
        a_k = complex(coeffs[k].evaluate(s))
        circ = complex(circle_zeta_dtheta(s - k, theta))
        terms.append(a_k * circ * n ** (2 * s - 2 * k))
    value = sum(terms, 0j)
    return ExpansionResult(m, value, tuple(terms), 0j, 2.0 * s.real - 2.0 - 2 * m)


def _require_parity(chi: DirichletCharacter, want_even: bool) -> None:
    if chi.modulus <= 1 or chi.is_principal:
        raise ValueError("modulus: a non-principal character of modulus > 1 is required")
    if chi.is_even != want_even:
        want = "even" if want_even else "odd"
        raise ValueError(f"parity: an {want} character is required")


def expand_L_even(s, chi: DirichletCharacter, n: int, m: int) -> ExpansionResult:
    """Truncated expansion of the paired discrete L-sum, even character.

    2 (2 pi / qn)^{-2s} sum_{k=0}^{m} a_k(s) (2 pi / qn)^{2k} L(2(s-k), chi),
    remainder O(n^{2 Re s - 2 - 2m}).  Half-integer s is excluded (the
    remainder control needs it even though every L-value stays finite).  At
    integer s the tail dies on the trivial zeros of the even L-function.
    """
    s = complex(s)
    if _is_half_odd_integer(s):
        raise PoleError("half-integer s is outside the controlled-remainder range")
    _require_parity(chi, want_even=True)
    _validate_truncation(n, m)
    q = chi.modulus
    ratio = _TWO_PI / (q * n)
    front = 2.0 * ratio ** (-2 * s)
    coeffs = a_coefficients(m)
    terms = []
    for k in range(m + 1):
        a_k = complex(coeffs[k].evaluate(s))
        terms.append(front * a_k * ratio ** (2 * k) * dirichlet_L(2 * (s - k), chi))
    value = sum(terms, 0j)
    return ExpansionResult(m, value, tuple(terms), 0j, 2.0 * s.real - 2.0 - 2 * m)


def expand_L_odd(s, chi: DirichletCharacter, n: int, m: int) -> ExpansionResult:
    """Truncated expansion of the cotangent discrete L-sum, odd character.

    2 sum_{k=0}^{m} b_k(s) L(1 + 2(s-k), chi) (qn / 2 pi)^{1 + 2(s-k)}, with
    remainder O(n^{1 + 2(Re s - m - 1)}).  Valid for every s: b_k and the odd
    L-function are entire.  At integer s = p the tail vanishes because
    b_p(p) = 0 and odd L-functions vanish at negative odd integers.
    """
    s = complex(s)
    _require_parity(chi, want_even=False)
    _validate_truncation(n, m)
    q = chi.modulus
    ratio = q * n / _TWO_PI
    coeffs = b_coefficients(m)
    terms = []
    for k in range(m + 1):
        b_k = complex(coeffs[k].evaluate(s))
        terms.append(
            2.0 * b_k * dirichlet_L(1 + 2 * (s - k), chi) * ratio ** (1 + 2 * (s - k))
        )
    value = sum(terms, 0j)
    return ExpansionResult(m, value, tuple(terms), 0j, 2.0 * s.real - 1.0 - 2 * m)


def remainder_order(samples) -> float:
    """Least-squares slope of log|error| against log n, three largest n.

    Raises ExactTermination when any error is zero or negative: a vanished
    truncation error means the expansion closed into an exact identity,
    which is itself the expected outcome at integer arguments.
    """
    points = sorted((int(n), float(err)) for n, err in samples)
    if len(points) < 3:
        raise ValueError("need at least 3 samples to fit an order")
    for _, err in points:
        if not err > 0.0:
            raise ExactTermination("truncation error vanished; nothing to fit")
    tail = points[-3:]
    xs = [math.log(n) for n, _ in tail]
    ys = [math.log(err) for _, err in tail]
    x_bar = sum(xs) / len(xs)
    y_bar = sum(ys) / len(ys)
    num = sum((x - x_bar) * (y - y_bar) for x, y in zip(xs, ys))
    den = sum((x - x_bar) ** 2 for x in xs)
    return num / den


_EXPANSION_KINDS = ("zeta", "zeta_dtheta", "L_even", "L_odd")


# A few units of roundoff relative to the largest intermediate: differences
# below this line measure float evaluation, not the truncation tail.
_FLOOR_SCALE = 5e-16


def expansion_error_samples(kind, s, n_list, *, theta=None, chi=None, m=0):
    """(n, |expansion - direct sum|) pairs for one expansion family.

    Raises ExactTermination when every error sits at the roundoff floor of
    its direct value, which is how terminating (integer-argument) cases
    surface here.  A sample whose error is within a few units of roundoff
    of the evaluated terms is dropped individually: the baseline term can
    dwarf a fast-decaying tail at large n, and keeping such a sample would
    fit evaluation noise instead of the remainder.
    """
    if kind not in _EXPANSION_KINDS:
        raise ValueError(f"unknown expansion kind {kind!r}")
    samples = []
    all_tiny = True
    for n in n_list:
        if kind == "zeta":
            direct = complex(zeta_n(s, theta, n))
            result = expand_zeta_n(s, theta, n, m)
        elif kind == "zeta_dtheta":
            direct = complex(zeta_n_dtheta(s, theta, n))
            result = expand_zeta_n_dtheta(s, theta, n, m)
        elif kind == "L_even":
            direct = discrete_L(s, chi, n)
            result = expand_L_even(s, chi, n, m)
        else:
            direct = discrete_L(s, chi, n)
            result = expand_L_odd(s, chi, n, m)
        err = abs(result.value - direct)
        if err > 1e-13 * max(1.0, abs(direct)):
            all_tiny = False
        floor = _FLOOR_SCALE * (
            abs(result.baseline)
            + sum(abs(term) for term in result.terms)
            + abs(direct)
        )
        samples.append((n, err, floor))
    if all_tiny:
        raise ExactTermination("all errors at the roundoff floor of the direct sums")
    kept = [(n, err) for n, err, floor in samples if err > floor]
    if not kept:
        raise ExactTermination("all errors below the evaluation floor")
    return kept


@dataclass(frozen=True)
class IdentityReport:
    """LHS and RHS of one exact identity, with residuals."""

    identity_id: str
    params: dict
    lhs: complex
    rhs: complex

    @property
    def abs_residual(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def rel_residual(self) -> float:
        return self.abs_residual / max(abs(self.lhs), abs(self.rhs), 1.0)

    def as_json_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "params": {k: str(v) for k, v in self.params.items()},
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "abs_residual": self.abs_residual,
            "rel_residual": self.rel_residual,
        }


SPECIAL_VALUE_TARGETS = ("trig_even", "trig_odd", "plain", "even_char", "odd_char")


def special_values(p: int, target: str, *, theta=None, n: int = 1, chi=None) -> IdentityReport:
    """Evaluate both sides of one exact special-value identity at integer p.

    Targets:

    * ``trig_even``: sum of sin^{-2p}(pi (j + theta)/n) against its closed
      form in circle zeta values.
    * ``trig_odd``: the cotangent-weighted sum against the derivative
      closed form.
    * ``plain``: the offset-free spectral zeta of Z/nZ against
      sum_k a_{p-k}(p) zeta_{R/Z}(k) n^{2k} (the k = 0 term carries
      zeta_{R/Z}(0) = -1; for n = 1 the spectrum is empty and the sum
      cancels to zero).
    * ``even_char``: discrete L-sum of an even character against
      2 sum_{j=1}^{p} a_{p-j}(p) L(2j, chi) (qn / 2 pi)^{2j}.
    * ``odd_char``: discrete L-sum of an odd character against
      2 sum_{k=1}^{p} (2k/p) a_{p-k}(p) L(2k+1, chi) (qn / 2 pi)^{2k+1}
      (the k = 0 term dies on its 2k/p factor).
    """
    if not isinstance(p, int) or p < 1:
        raise ValueError("p must be an integer >= 1")
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be an integer >= 1")
    if target not in SPECIAL_VALUE_TARGETS:
        raise ValueError(f"unknown identity target {target!r}")
    coeffs = a_coefficients(p)
    a_at_p = [coeffs[i].evaluate(Fraction(p)) for i in range(p + 1)]

    if target in ("trig_even", "trig_odd"):
        if theta is None:
            raise ValueError(f"{target} needs theta")
        even_value, odd_value = trig_closed_forms(n, theta, p)
        if target == "trig_even":
            lhs = trig_sum_even(n, theta, p)
            rhs = even_value
        else:
            lhs = trig_sum_odd(n, theta, p)
            rhs = odd_value
        params = {"p": p, "n": n, "theta": theta}
        return IdentityReport(target, params, complex(lhs), complex(rhs))

    if target == "plain":
        lhs = 0.0 if n == 1 else zeta_n_standard(p, n)
        rhs = math.fsum(
            float(a_at_p[p - k]) * complex(circle_zeta_standard(k)).real * float(n) ** (2 * k)
            for k in range(p + 1)
        )
        return IdentityReport(target, {"p": p, "n": n}, complex(lhs), complex(rhs))

    if chi is None:
        raise ValueError(f"{target} needs a character")
    _require_parity(chi, want_even=(target == "even_char"))
    q = chi.modulus
    ratio = q * n / _TWO_PI
    lhs = discrete_L(complex(p), chi, n)
    if target == "even_char":
        rhs = 2.0 * sum(
            complex(a_at_p[p - j]) * dirichlet_L(2 * j, chi) * ratio ** (2 * j)
            for j in range(1, p + 1)
        )
    else:
        rhs = 2.0 * sum(
            float(Fraction(2 * k, p) * a_at_p[p - k])
            * dirichlet_L(2 * k + 1, chi)
            * ratio ** (2 * k + 1)
            for k in range(1, p + 1)
        )
    params = {"p": p, "n": n, "q": q, "char_index": chi.index}
    return IdentityReport(target, params, lhs, complex(rhs))


def recovered_zeta_values(p_max: int, variant: int) -> list:
    """zeta(2p) for p = 1..p_max, regenerated by the chained recursion.

    variant 1 uses the empty-spectrum identity
    zeta(2p) = -sum_{k<p} a_{p-k}(p) (2 pi)^{2(p-k)} zeta(2k); variant 2 the
    two-point one, zeta(2p) = 2^{-4p-1} (2 pi)^{2p}
    - sum_{k<p} a_{p-k}(p) 2^{2(k-p)} (2 pi)^{2(p-k)} zeta(2k).  Each chain
    feeds on its own recovered values, seeded only by zeta(0) = -1/2.
    """
    if not isinstance(p_max, int) or p_max < 1:
        raise ValueError("p_max must be an integer >= 1")
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    chain = [-0.5]
    for p in range(1, p_max + 1):
        coeffs = a_coefficients(p)
        acc = []
        for k in range(p):
            a_val = float(coeffs[p - k].evaluate(Fraction(p)))
            power = _TWO_PI ** (2 * (p - k))
            if variant == 1:
                acc.append(-a_val * power * chain[k])
            else:
                acc.append(-a_val * 2.0 ** (2 * (k - p)) * power * chain[k])
        total = math.fsum(acc)
        if variant == 2:
            total += 2.0 ** (-4 * p - 1) * _TWO_PI ** (2 * p)
        chain.append(total)
    return chain[1:]


def zeta_recursion_table(p_max: int) -> ScanTable:
    """Both recursion chains against direct zeta values, with relative errors."""
    chain1 = recovered_zeta_values(p_max, 1)
    chain2 = recovered_zeta_values(p_max, 2)
    table = ScanTable(
        ["p", "zeta_2p", "n1_value", "n1_rel_error", "n2_value", "n2_rel_error"],
        command="recursion",
        parameters={"p_max": p_max},
    )
    for p in range(1, p_max + 1):
        direct = float(riemann_zeta(2 * p).real)
        v1 = chain1[p - 1]
        v2 = chain2[p - 1]
        table.append(
            (p, direct, v1, abs(v1 - direct) / abs(direct), v2, abs(v2 - direct) / abs(direct))
        )
    return table


def siegel_sign_probe(chi: DirichletCharacter, s_grid, n_list) -> ScanTable:
    """Sign data for one-sided bounds on L(s, chi) in the real interval (0, 1).

    For each s in the grid and each n, tabulates the discrete L-sum at s
    itself, then at the shifted argument ((s-1)/2 for odd characters, s/2
    for even ones) where the leading expansion coefficient is L(s, chi), so
    a positive discrete value for growing n forces L(s, chi) >= 0 in the
    limit.  The m = 1 expansion's leading and subleading terms and the
    continuous L(s - 2, chi) (the subleading L-value, negative for even real
    primitive characters) are reported alongside.
    """
    if chi.modulus <= 1 or chi.is_principal:
        raise ValueError("modulus: a non-principal character of modulus > 1 is required")
    if not chi.is_real:
        raise ValueError("realness: a real character is required")
    s_values = [float(s) for s in s_grid]
    for s in s_values:
        if not 0.0 < s < 1.0:
            raise ValueError("s grid must lie in the open interval (0, 1)")
    q = chi.modulus
    odd = not chi.is_even
    table = ScanTable(
        [
            "q",
            "char_index",
            "parity",
            "s",
            "n",
            "L_n_direct",
            "sign_direct",
            "s_shifted",
            "L_n_shifted",
            "sign_shifted",
            "leading_term",
            "subleading_term",
            "L_continuous_s_minus_2",
            "implied_bound",
        ],
        command="siegel",
        parameters={"q": q, "char_index": chi.index},
    )

    def sign_of(v: float) -> int:
        return 1 if v > 0.0 else (-1 if v < 0.0 else 0)

    for s in s_values:
        shifted = (s - 1.0) / 2.0 if odd else s / 2.0
        continuous = dirichlet_L(complex(s - 2.0), chi).real
        for n in n_list:
            direct = discrete_L(complex(s), chi, n).real
            shifted_value = discrete_L(complex(shifted), chi, n).real
            if odd:
                expansion = expand_L_odd(shifted, chi, n, 1)
            else:
                expansion = expand_L_even(shifted, chi, n, 1)
            shifted_sign = sign_of(shifted_value)
            if shifted_sign > 0:
                bound = "L >= 0"
            elif shifted_sign < 0:
                bound = "L <= 0"
            else:
                bound = "none"
            table.append(
                (
                    q,
                    chi.index,
                    chi.parity,
                    s,
                    n,
                    direct,
                    sign_of(direct),
                    shifted,
                    shifted_value,
                    shifted_sign,
                    expansion.terms[0].real,
                    expansion.terms[1].real,
                    continuous,
                    bound,
                )
            )
    return table
