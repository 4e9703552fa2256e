"""Path families, validated lattice paths, enumeration and geometry.

A path is stored as its step word over ``U``, ``H``, ``D`` together with its
height profile.  Every letter occupies one unit column, so a Schröder flat
step (2, 0) is written ``HH``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator

from .errors import (
    BelowAxis,
    IllegalStep,
    NonIntegralRank,
    NonzeroEndpoint,
    SizeLimitExceeded,
    UnpairedFlat,
    WidthMismatch,
)

DYCKLIKE = "dycklike"
MOTZKIN = "motzkin"
SCHRODER = "schroder"

DEFAULT_GUARD_ELEMENTS = 20000
GUARD_ENV = "PATHLAT_GUARD_ELEMENTS"

# canonical enumeration order
STEP_ORDER = "UHD"


def element_guard(guard: int | None = None) -> int:
    """Resolve the lattice-size guard: explicit value, then env var, then default."""
    if guard is not None:
        if guard <= 0:
            raise ValueError("guard must be positive")
        return guard
    env = os.environ.get(GUARD_ENV)
    if env:
        value = int(env)
        if value <= 0:
            raise ValueError(f"{GUARD_ENV} must be positive")
        return value
    return DEFAULT_GUARD_ELEMENTS


def ell(a: int, b: int) -> int:
    """Length of the shortest non-empty Dyck-like path of type (a, b)."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    return (a + b) // gcd(a, b)


@dataclass(frozen=True)
class PathFamily:
    """Step alphabet governing a path.

    Dyck-like families are kept in canonical form ``a >= b``; ``swapped``
    records whether the caller asked for ``(b, a)``.
    """

    kind: str
    a: int = 1
    b: int = 1
    swapped: bool = field(default=False, compare=False)

    @classmethod
    def dyck(cls) -> PathFamily:
        return cls(DYCKLIKE, 1, 1)

    @classmethod
    def dycklike(cls, a: int, b: int) -> PathFamily:
        if a < 1 or b < 1:
            raise ValueError("a and b must be positive")
        if a < b:
            return cls(DYCKLIKE, b, a, swapped=True)
        return cls(DYCKLIKE, a, b)

    @classmethod
    def motzkin(cls) -> PathFamily:
        return cls(MOTZKIN)

    @classmethod
    def schroder(cls) -> PathFamily:
        return cls(SCHRODER)

    @classmethod
    def parse(cls, text: str) -> PathFamily:
        """Parse ``dyck``, ``dycklike:a,b``, ``motzkin`` or ``schroder``."""
        t = text.strip().lower()
        if t == "dyck":
            return cls.dyck()
        if t == "motzkin":
            return cls.motzkin()
        if t in ("schroder", "schröder"):
            return cls.schroder()
        if t.startswith("dycklike:"):
            try:
                a, b = (int(v) for v in t.split(":", 1)[1].split(","))
            except ValueError:
                raise ValueError(f"bad dycklike parameters in {text!r}") from None
            return cls.dycklike(a, b)
        raise ValueError(f"unknown path family {text!r}")

    @property
    def is_dycklike(self) -> bool:
        return self.kind == DYCKLIKE

    @property
    def is_dyck(self) -> bool:
        return self.kind == DYCKLIKE and self.a == 1 and self.b == 1

    @property
    def alphabet(self) -> str:
        return "UD" if self.kind == DYCKLIKE else "UHD"

    def rise(self, step: str) -> int:
        if step == "U":
            return self.a if self.kind == DYCKLIKE else 1
        if step == "D":
            return -self.b if self.kind == DYCKLIKE else -1
        return 0

    def width(self, n: int) -> int:
        """Number of unit columns of a path of size ``n``."""
        if n < 0:
            raise ValueError("size must be non-negative")
        if self.kind == DYCKLIKE:
            return n * ell(self.a, self.b)
        if self.kind == MOTZKIN:
            return n
        return 2 * n

    def size_of_width(self, width: int) -> int:
        unit = {DYCKLIKE: ell(self.a, self.b), MOTZKIN: 1, SCHRODER: 2}[self.kind]
        if width % unit:
            raise WidthMismatch(f"width {width} is not a multiple of {unit}")
        return width // unit

    @property
    def name(self) -> str:
        if self.is_dyck:
            return "dyck"
        if self.kind == DYCKLIKE:
            return f"dycklike:{self.a},{self.b}"
        return self.kind

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class LatticePath:
    family: PathFamily
    steps: str
    heights: tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.steps)

    @property
    def size(self) -> int:
        return self.family.size_of_width(self.width)

    def __str__(self) -> str:
        return self.steps

    def __len__(self) -> int:
        return len(self.steps)


def validate(family: PathFamily, steps: str) -> LatticePath:
    """Check a step word against ``family`` and return the validated path."""
    steps = steps.strip().upper()
    for pos, s in enumerate(steps):
        if s not in family.alphabet:
            raise IllegalStep(f"step {s!r} at position {pos} not allowed for {family}")
    if family.kind == SCHRODER:
        _check_flat_pairs(steps)
    heights = [0]
    h = 0
    for pos, s in enumerate(steps):
        h += family.rise(s)
        if h < 0:
            raise BelowAxis(f"{steps}: height {h} after step {pos}")
        heights.append(h)
    if h != 0:
        raise NonzeroEndpoint(f"{steps}: ends at height {h}")
    return LatticePath(family, steps, tuple(heights))


def parse_path(family: PathFamily, text: str) -> LatticePath:
    return validate(family, text)


def _check_flat_pairs(steps: str) -> None:
    run = 0
    for pos, s in enumerate(steps + "."):
        if s == "H":
            run += 1
            continue
        if run % 2:
            raise UnpairedFlat(f"{steps}: odd run of H ending at position {pos}")
        run = 0


def from_heights(family: PathFamily, heights) -> LatticePath:
    """Rebuild a path from its height profile, validating every step."""
    heights = tuple(int(h) for h in heights)
    if not heights:
        raise WidthMismatch("empty height profile")
    up, down = family.rise("U"), family.rise("D")
    letters = []
    for k in range(len(heights) - 1):
        d = heights[k + 1] - heights[k]
        if d == up:
            letters.append("U")
        elif d == down:
            letters.append("D")
        elif d == 0 and family.kind != DYCKLIKE:
            letters.append("H")
        else:
            raise IllegalStep(f"height difference {d} at column {k} not allowed for {family}")
    if heights[0] != 0:
        raise NonzeroEndpoint("profile must start at 0")
    return validate(family, "".join(letters))


def _reachable(family: PathFamily, h: int, remaining: int) -> bool:
    """Can a path at height ``h`` with ``remaining`` columns still close?"""
    if h < 0:
        return False
    if family.kind == DYCKLIKE:
        a, b = family.a, family.b
        return h <= remaining * b and (h + remaining * a) % (a + b) == 0
    if family.kind == MOTZKIN:
        return h <= remaining
    return h <= remaining and (remaining - h) % 2 == 0


def count_paths(family: PathFamily, n: int) -> int:
    """Number of paths of size ``n`` (forward dynamic programme over columns)."""
    width = family.width(n)
    moves = [(1, family.rise("U")), (1, family.rise("D"))]
    if family.kind == MOTZKIN:
        moves.append((1, 0))
    elif family.kind == SCHRODER:
        moves.append((2, 0))
    ways: list[dict[int, int]] = [dict() for _ in range(width + 1)]
    ways[0][0] = 1
    for col in range(width):
        for h, c in ways[col].items():
            for dx, dy in moves:
                if col + dx <= width and _reachable(family, h + dy, width - col - dx):
                    slot = ways[col + dx]
                    slot[h + dy] = slot.get(h + dy, 0) + c
    return ways[width].get(0, 0)


def enumerate_paths(family: PathFamily, n: int, guard: int | None = None) -> list[LatticePath]:
    """All paths of size ``n`` in lexicographic order with U < H < D."""
    limit = element_guard(guard)
    total = count_paths(family, n)
    if total > limit:
        raise SizeLimitExceeded(f"{family} size {n} has {total} paths (guard {limit})")
    return list(iter_paths(family, n))


def iter_paths(family: PathFamily, n: int) -> Iterator[LatticePath]:
    """Unguarded generator behind :func:`enumerate_paths`."""
    width = family.width(n)
    up, down = family.rise("U"), family.rise("D")
    letters: list[str] = []
    heights = [0]

    def walk(col: int):
        h = heights[-1]
        if col == width:
            if h == 0:
                yield LatticePath(family, "".join(letters), tuple(heights))
            return
        for s in STEP_ORDER:
            if s == "U":
                moves = [up]
            elif s == "D":
                moves = [down]
            elif family.kind == MOTZKIN:
                moves = [0]
            elif family.kind == SCHRODER:
                moves = [0, 0]
            else:
                continue
            if col + len(moves) > width or not _reachable(family, h + moves[0], width - col - len(moves)):
                continue
            for m in moves:
                letters.append(s)
                heights.append(heights[-1] + m)
            yield from walk(col + len(moves))
            for _ in moves:
                letters.pop()
                heights.pop()

    yield from walk(0)


def minimum_path(family: PathFamily, n: int) -> LatticePath:
    """Bottom element of the lattice of ``family`` paths of size ``n``."""
    if family.kind == MOTZKIN:
        return validate(family, "H" * n)
    if family.kind == SCHRODER:
        return validate(family, "HH" * n)
    # one up step, then as many down steps as the axis allows, repeated
    width = family.width(n)
    a, b = family.a, family.b
    out = []
    h = 0
    while len(out) < width:
        if h - b >= 0 and _reachable(family, h - b, width - len(out) - 1):
            out.append("D")
            h -= b
        else:
            out.append("U")
            h += a
    return validate(family, "".join(out))


def maximum_path(family: PathFamily, n: int) -> LatticePath:
    """Top element of the lattice of ``family`` paths of size ``n``."""
    if family.kind == MOTZKIN:
        k, odd = divmod(n, 2)
        return validate(family, "U" * k + "H" * odd + "D" * k)
    if family.kind == SCHRODER:
        return validate(family, "U" * n + "D" * n)
    g = gcd(family.a, family.b)
    return validate(family, "U" * (n * family.b // g) + "D" * (n * family.a // g))


def area(path: LatticePath) -> Fraction:
    """Area between the path and the x-axis (trapezoid sum, exact)."""
    h = path.heights
    return Fraction(sum(h[k] + h[k + 1] for k in range(len(h) - 1)), 2)


@lru_cache(maxsize=None)
def _minimum_area(family: PathFamily, n: int) -> Fraction:
    return area(minimum_path(family, n))


def rank(path: LatticePath) -> int:
    """Rank of ``path`` in its lattice."""
    A = area(path)
    fam = path.family
    if fam.kind == DYCKLIKE:
        r = (A - _minimum_area(fam, path.size)) / (fam.a + fam.b)
    else:
        r = A
    if r.denominator != 1 or r < 0:
        raise NonIntegralRank(f"{path.steps}: rank {r}")
    return int(r)


def max_descent_run(path: LatticePath) -> int:
    """Length of the longest block of consecutive D steps."""
    best = run = 0
    for s in path.steps:
        run = run + 1 if s == "D" else 0
        best = max(best, run)
    return best
