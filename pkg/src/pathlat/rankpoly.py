"""Rank polynomials, their recurrences and generating-series identities."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import SizeLimitExceeded
from .order import PathLattice
from .paths import DYCKLIKE, MOTZKIN, SCHRODER, PathFamily

DEFAULT_SERIES_ORDER = 16


class IntPolynomial:
    """Polynomial in q with exact integer coefficients; ``coeffs[k]`` multiplies q^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def one(cls) -> IntPolynomial:
        return cls((1,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self), len(other))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self), len(other))
        return IntPolynomial(self[k] - other[k] for k in range(n))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __mul__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by q^k."""
        if not self.coeffs:
            return self
        return IntPolynomial([0] * k + list(self.coeffs))

    def reversed(self, degree: int | None = None) -> IntPolynomial:
        """q^d * p(1/q) for d = ``degree`` (default: the actual degree)."""
        d = self.degree if degree is None else degree
        if self.degree > d:
            raise ValueError("reversal degree below polynomial degree")
        return IntPolynomial(self[d - k] for k in range(d + 1))

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                var = "q" if k == 1 else f"q^{k}"
                body = var if abs(c) == 1 else f"{abs(c)}*{var}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def rank_polynomial_enumerated(lat: PathLattice) -> IntPolynomial:
    counts = [0] * (max(lat.rank_of, default=0) + 1)
    for r in lat.rank_of:
        counts[r] += 1
    return IntPolynomial(counts)


@lru_cache(maxsize=None)
def dyck_poly(n: int) -> IntPolynomial:
    """D_{n+1} = sum_k q^k D_k D_{n-k}, D_0 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return IntPolynomial.one()
    m = n - 1
    acc = IntPolynomial()
    for k in range(m + 1):
        acc = acc + (dyck_poly(k) * dyck_poly(m - k)).shift(k)
    return acc


@lru_cache(maxsize=None)
def motzkin_poly(n: int) -> IntPolynomial:
    """M_{n+2} = M_{n+1} + sum_k q^(k+1) M_k M_{n-k}, M_0 = M_1 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n < 2:
        return IntPolynomial.one()
    m = n - 2
    acc = motzkin_poly(m + 1)
    for k in range(m + 1):
        acc = acc + (motzkin_poly(k) * motzkin_poly(m - k)).shift(k + 1)
    return acc


@lru_cache(maxsize=None)
def schroder_poly(n: int) -> IntPolynomial:
    """S_{n+1} = S_n + sum_k q^(2k+1) S_k S_{n-k}, S_0 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return IntPolynomial.one()
    m = n - 1
    acc = schroder_poly(m)
    for k in range(m + 1):
        acc = acc + (schroder_poly(k) * schroder_poly(m - k)).shift(2 * k + 1)
    return acc


def family_poly(family: PathFamily, n: int) -> IntPolynomial:
    if family.is_dyck:
        return dyck_poly(n)
    if family.kind == MOTZKIN:
        return motzkin_poly(n)
    if family.kind == SCHRODER:
        return schroder_poly(n)
    raise ValueError(f"no rank-polynomial recurrence for {family}")


def q_catalan(n: int) -> IntPolynomial:
    """C_n(q) = q^C(n,2) D_n(1/q)."""
    return dyck_poly(n).reversed(comb(n, 2))


def q_catalan_by_area(n: int) -> IntPolynomial:
    """Sum of q^area over E/N paths from (0,0) to (n,n) staying weakly below y = x.

    ``area`` is the number of cells between the path and the x-axis.
    """
    counts = [0] * (comb(n, 2) + 1)
    for north in combinations(range(2 * n), n):
        y = 0
        x = 0
        area = 0
        ok = True
        north_set = set(north)
        for k in range(2 * n):
            if k in north_set:
                y += 1
                if y > x:
                    ok = False
                    break
            else:
                area += y
                x += 1
        if ok:
            counts[area] += 1
    return IntPolynomial(counts)


@dataclass
class Unimodality:
    ok: bool
    index: int

    def __bool__(self) -> bool:
        return self.ok


def is_unimodal(p: IntPolynomial | Sequence[int]) -> Unimodality:
    """Weakly rising then weakly falling.  ``index`` is the peak, or the first violation."""
    c = list(p.coeffs if isinstance(p, IntPolynomial) else p)
    k = 0
    while k + 1 < len(c) and c[k + 1] >= c[k]:
        k += 1
    peak = k
    while k + 1 < len(c):
        if c[k + 1] > c[k]:
            return Unimodality(False, k)
        k += 1
    return Unimodality(True, peak)


# ---------------------------------------------------------------------------
# Truncated bivariate series: a list of q-polynomials indexed by t-degree.

Series = list


def _series_mul(a: Series, b: Series, order: int) -> Series:
    out = [IntPolynomial() for _ in range(order + 1)]
    for i, x in enumerate(a[:order + 1]):
        if not x.coeffs:
            continue
        for j, y in enumerate(b[:order + 1 - i]):
            out[i + j] = out[i + j] + x * y
    return out


def _series_inverse(a: Series, order: int) -> Series:
    """1 / a for a series with constant term 1."""
    if a[0] != IntPolynomial.one():
        raise ValueError("series inverse needs constant term 1")
    inv = [IntPolynomial.one()] + [IntPolynomial() for _ in range(order)]
    for n in range(1, order + 1):
        acc = IntPolynomial()
        for k in range(1, n + 1):
            if k < len(a) and a[k].coeffs:
                acc = acc + a[k] * inv[n - k]
        inv[n] = -acc
    return inv


def _substitute(a: Series, step: int) -> Series:
    """t -> q^step t: the coefficient of t^n gains q^(step*n)."""
    return [p.shift(step * n) for n, p in enumerate(a)]


def series_rhs(family: PathFamily, order: int) -> Series:
    """Right-hand side of the family's functional equation, truncated at t^order."""
    if family.is_dyck:
        F = [dyck_poly(n) for n in range(order + 1)]
        tF = [IntPolynomial()] + _substitute(F, 1)[:order]
        base = [IntPolynomial.one()] + [-p for p in tF[1:]]
    elif family.kind == MOTZKIN:
        F = [motzkin_poly(n) for n in range(order + 1)]
        t2F = [IntPolynomial(), IntPolynomial()] + [p.shift(1) for p in _substitute(F, 1)][:order - 1]
        base = [IntPolynomial.one()] + [IntPolynomial() for _ in range(order)]
        if order >= 1:
            base[1] = base[1] - IntPolynomial.one()
        for n in range(2, order + 1):
            base[n] = base[n] - t2F[n]
    elif family.kind == SCHRODER:
        F = [schroder_poly(n) for n in range(order + 1)]
        xF = [IntPolynomial()] + [p.shift(1) for p in _substitute(F, 2)][:order]
        base = [IntPolynomial.one()] + [IntPolynomial() for _ in range(order)]
        if order >= 1:
            base[1] = base[1] - IntPolynomial.one()
        for n in range(1, order + 1):
            base[n] = base[n] - xF[n]
    else:
        raise ValueError(f"no functional equation for {family}")
    return _series_inverse(base, order)


def verify_series_identity(family: PathFamily, order: int, guard: int | None = None) -> bool:
    """Compare sum_n P_n(q) t^n with the functional-equation side up to t^order."""
    limit = DEFAULT_SERIES_ORDER if guard is None else guard
    if order > limit:
        raise SizeLimitExceeded(f"series order {order} exceeds guard {limit}")
    lhs = [family_poly(family, n) for n in range(order + 1)]
    return lhs == series_rhs(family, order)


def whitney_rows(family: PathFamily, max_n: int) -> list[tuple[int, IntPolynomial]]:
    return [(n, family_poly(family, n)) for n in range(max_n + 1)]


def family_height(family: PathFamily, n: int) -> int:
    if family.kind == DYCKLIKE and family.is_dyck:
        return comb(n, 2)
    if family.kind == MOTZKIN:
        return (n // 2) * ((n + 1) // 2)
    if family.kind == SCHRODER:
        return n * n
    raise ValueError(f"no closed height for {family}")
