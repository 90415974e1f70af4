"""Dirichlet characters mod q as explicit value tables.

Construction goes through a generator decomposition of the unit group
(Z/qZ)^*: each prime-power factor contributes cyclic generators (the odd
ones a lifted primitive root, 2^e for e >= 3 the pair -1 and 5), glued
by CRT.  A character is an exponent vector against those generators, and
each value is stored as an integer index m into the e-th roots of unity,
e the group exponent.  Parity, realness, principality and the conductor
are therefore decided by integer comparisons; floats only appear in the
cached root-of-unity table, where 1, i, -1, -i are forced exact.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product

from .summation import ComplexCompensatedSum

__all__ = [
    "DirichletCharacter",
    "enumerate_characters",
    "gauss_sum",
    "root_number",
    "has_positive_mean",
]


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            out.append((d, a))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def _primitive_root(p: int) -> int:
    """Smallest primitive root mod an odd prime p."""
    phi = p - 1
    prime_factors = [f for f, _ in _factorize(phi)]
    for g in range(2, p):
        if all(pow(g, phi // r, p) != 1 for r in prime_factors):
            return g
    raise ArithmeticError(f"no primitive root mod {p}")


def _component_generators(p: int, a: int) -> list:
    """Generators (residue, order) of (Z/p^a Z)^*."""
    m = p**a
    if p == 2:
        if a == 1:
            return []
        if a == 2:
            return [(3, 2)]
        return [(m - 1, 2), (5, 2 ** (a - 2))]
    g = _primitive_root(p)
    # lift so the order stays (p-1)p^(a-1) for every a
    if a >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    return [(g % m, (p - 1) * p ** (a - 1))]


class _UnitGroup:
    """Generator decomposition of (Z/qZ)^* with a full dlog table."""

    __slots__ = ("q", "orders", "value_order", "dlogs", "size")

    def __init__(self, q: int):
        gens = []
        for p, a in _factorize(q):
            m = p**a
            co = q // m
            for g, d in _component_generators(p, a):
                if co == 1:
                    x = g % q
                else:
                    # CRT: x == g mod m, x == 1 mod q/m
                    t = ((g - 1) * pow(co, -1, m)) % m
                    x = (1 + co * t) % q
                gens.append((x, d))
        self.q = q
        self.orders = tuple(d for _, d in gens)
        e = 1
        for d in self.orders:
            e = math.lcm(e, d)
        self.value_order = e
        powers = []
        for x, d in gens:
            row = [1] * d
            for i in range(1, d):
                row[i] = row[i - 1] * x % q
            powers.append(row)
        dlogs = {}
        for tup in product(*(range(d) for d in self.orders)):
            u = 1
            for row, k in zip(powers, tup):
                u = u * row[k] % q
            dlogs[u % q] = tup
        self.dlogs = dlogs
        self.size = len(dlogs)


@lru_cache(maxsize=None)
def _unit_group(q: int) -> _UnitGroup:
    return _UnitGroup(q)


@lru_cache(maxsize=None)
def _roots_of_unity(e: int) -> tuple:
    """exp(2*pi*i*m/e) for m = 0..e-1, with exact symmetry.

    Only the first quadrant is computed through cos/sin; the rest comes
    from sign flips, so conjugation (m -> e-m) and, for even e, negation
    (m -> m + e/2) are exact at the float level.  The discrete L-sums
    rely on that exactness for their parity cancellations.
    """
    vals = [None] * e
    for m in range(e):
        if 2 * m > e:
            re, im = vals[e - m]
            vals[m] = (re, -im)
        elif m == 0:
            vals[m] = (1.0, 0.0)
        elif 4 * m == e:
            vals[m] = (0.0, 1.0)
        elif 2 * m == e:
            vals[m] = (-1.0, 0.0)
        elif e % 2 == 0 and 4 * m > e:
            re, im = vals[e // 2 - m]
            vals[m] = (-re, im)
        else:
            ang = 2.0 * math.pi * m / e
            vals[m] = (math.cos(ang), math.sin(ang))
    return tuple(complex(re, im) for re, im in vals)


class DirichletCharacter:
    """A character mod q, fully tabulated.

    values[j] is chi(j) for j in [0, q); value_indices[j] is the exact
    integer m with chi(j) = exp(2*pi*i*m/value_order), or -1 when
    gcd(j, q) > 1.  Immutable; equality and hashing go by
    (modulus, index).
    """

    __slots__ = (
        "modulus",
        "index",
        "exponents",
        "value_order",
        "value_indices",
        "values",
        "conductor",
        "is_even",
        "is_real",
        "is_primitive",
        "is_principal",
    )

    def __init__(self, q: int, index: int):
        if q < 1:
            raise ValueError("modulus must be >= 1")
        grp = _unit_group(q)
        if not 0 <= index < grp.size:
            raise ValueError(f"character index {index} out of range 0..{grp.size - 1}")
        self.modulus = q
        self.index = index
        # decode the exponent vector: index is lexicographic over the
        # generator exponents, last generator fastest
        exps = []
        rem = index
        for d in reversed(grp.orders):
            exps.append(rem % d)
            rem //= d
        exps.reverse()
        self.exponents = tuple(exps)
        e = grp.value_order
        self.value_order = e
        indices = [-1] * q
        for u, tup in grp.dlogs.items():
            m = 0
            for k, t, d in zip(tup, exps, grp.orders):
                m += k * t * (e // d)
            indices[u] = m % e
        self.value_indices = tuple(indices)
        roots = _roots_of_unity(e)
        self.values = tuple(
            roots[m] if m >= 0 else complex(0.0, 0.0) for m in indices
        )
        self.is_principal = all(m <= 0 for m in indices)
        self.is_real = all(m <= 0 or 2 * m == e for m in indices)
        self.is_even = indices[q - 1] == 0 if q > 1 else True
        self.conductor = self._conductor()
        self.is_primitive = self.conductor == q

    def _conductor(self) -> int:
        q = self.modulus
        for d in range(1, q + 1):
            if q % d:
                continue
            if all(
                m == 0
                for j, m in enumerate(self.value_indices)
                if m >= 0 and (j - 1) % d == 0
            ):
                return d
        return q

    @property
    def is_odd(self) -> bool:
        return not self.is_even

    @property
    def parity(self) -> str:
        return "even" if self.is_even else "odd"

    def __call__(self, j: int) -> complex:
        return self.values[j % self.modulus]

    def conjugate(self) -> "DirichletCharacter":
        grp = _unit_group(self.modulus)
        idx = 0
        for t, d in zip(self.exponents, grp.orders):
            idx = idx * d + (-t) % d
        return enumerate_characters(self.modulus)[idx]

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.modulus == other.modulus and self.index == other.index

    def __hash__(self):
        return hash((self.modulus, self.index))

    def __repr__(self):
        flags = [self.parity]
        if self.is_principal:
            flags.append("principal")
        if self.is_real:
            flags.append("real")
        if self.is_primitive:
            flags.append("primitive")
        return (
            f"DirichletCharacter(q={self.modulus}, index={self.index}, "
            f"{', '.join(flags)})"
        )

    def as_json_dict(self) -> dict:
        """Plain-data description: {q, index, parity, real, primitive,
        conductor, values:[[re,im],...]}."""
        return {
            "q": self.modulus,
            "index": self.index,
            "parity": self.parity,
            "real": self.is_real,
            "primitive": self.is_primitive,
            "conductor": self.conductor,
            "values": [[v.real, v.imag] for v in self.values],
        }


@lru_cache(maxsize=None)
def enumerate_characters(q: int) -> tuple:
    """All phi(q) characters mod q, principal first (index 0), in
    lexicographic order of their generator exponent vectors."""
    if q < 1:
        raise ValueError("modulus must be >= 1")
    size = _unit_group(q).size
    return tuple(DirichletCharacter(q, i) for i in range(size))


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{j=1}^{q} chi(j) exp(2*pi*i*j/q).

    |tau| = sqrt(q) when chi is primitive.
    """
    q = chi.modulus
    roots = _roots_of_unity(q)
    acc = ComplexCompensatedSum()
    for j in range(1, q + 1):
        v = chi.values[j % q]
        if v != 0:
            acc.add(v * roots[j % q])
    return acc.value


def root_number(chi: DirichletCharacter) -> complex:
    """w_chi = tau(chi)/sqrt(q) for even chi, tau(chi)/(i*sqrt(q)) for odd.

    Unimodular for primitive chi; raises on principal or imprimitive input.
    """
    if chi.is_principal or not chi.is_primitive:
        raise ValueError("root number is defined for primitive non-principal characters")
    tau = gauss_sum(chi)
    sq = math.sqrt(chi.modulus)
    if chi.is_even:
        return tau / sq
    return tau / complex(0.0, sq)


def has_positive_mean(chi: DirichletCharacter, full_range: bool = False) -> bool:
    """Whether all partial sums sum_{j=0}^{m} chi(j) are >= 0 for
    0 <= m <= floor(q/2) (or m <= q-1 with full_range).

    Requires a real, even, primitive character of modulus > 1; the error
    message names the violated flag.  Sums are exact integer arithmetic
    on the value indices.
    """
    if not chi.is_real:
        raise ValueError("realness: character must be real")
    if not chi.is_even:
        raise ValueError("parity: character must be even")
    if not chi.is_primitive:
        raise ValueError("primitivity: character must be primitive")
    if chi.modulus <= 1:
        raise ValueError("modulus: need q > 1")
    e = chi.value_order
    upper = chi.modulus - 1 if full_range else chi.modulus // 2
    total = 0
    for j in range(upper + 1):
        m = chi.value_indices[j]
        if m == 0:
            total += 1
        elif m >= 0 and 2 * m == e:
            total -= 1
        if total < 0:
            return False
    return True
