"""Compensated summation helpers.

All spectral sums in this package accumulate thousands of terms whose
partial cancellations matter at the 1e-12 level, so plain `sum()` is not
good enough.  These helpers implement Neumaier's variant of Kahan
summation: the error of every addition is captured and folded back in at
the end, which keeps the result within a few ulps of the correctly
rounded sum regardless of term ordering or magnitude spread.

Callers are expected to feed terms in a fixed, deterministic order
(ascending index unless stated otherwise) so results are bit-for-bit
reproducible across runs and thread counts.
"""

from __future__ import annotations

__all__ = ["CompensatedSum", "ComplexCompensatedSum", "comp_sum", "comp_sum_complex"]


class CompensatedSum:
    """Running real sum with Neumaier compensation."""

    __slots__ = ("s", "c")

    def __init__(self, start: float = 0.0) -> None:
        self.s = float(start)
        self.c = 0.0

    def add(self, x: float) -> None:
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t

    @property
    def value(self) -> float:
        return self.s + self.c


class ComplexCompensatedSum:
    """Running complex sum; compensates real and imaginary parts separately."""

    __slots__ = ("re", "im")

    def __init__(self) -> None:
        self.re = CompensatedSum()
        self.im = CompensatedSum()

    def add(self, z: complex) -> None:
        self.re.add(z.real)
        self.im.add(z.imag)

    @property
    def value(self) -> complex:
        return complex(self.re.value, self.im.value)


def comp_sum(terms) -> float:
    """Compensated sum of an iterable of floats, in iteration order."""
    acc = CompensatedSum()
    for x in terms:
        acc.add(x)
    return acc.value


def comp_sum_complex(terms) -> complex:
    """Compensated sum of an iterable of complex numbers, in iteration order."""
    acc = ComplexCompensatedSum()
    for z in terms:
        acc.add(z)
    return acc.value
