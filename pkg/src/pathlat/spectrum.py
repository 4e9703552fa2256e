"""Canonical descriptions of spectra, and the partition side of Dyck-like lattices."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Sequence

import numpy as np

from .errors import NotCoprime, PathLatError
from .order import (
    FinitePoset,
    IsoResult,
    PathLattice,
    build_lattice,
    ideals_lattice,
    poset_from_relation,
    spectrum_poset,
    verify_iso,
)
from .paths import DYCKLIKE, LatticePath, PathFamily, validate

PEAK = "peak"
FLAT = "flat"


@dataclass(frozen=True, order=True)
class IntervalLabel:
    """Interval ``[i, j]`` of a chain; ``orientation`` only matters for Schröder."""

    i: int
    j: int
    orientation: str = PEAK

    def __post_init__(self):
        if not 0 <= self.i < self.j:
            raise ValueError(f"bad interval ({self.i}, {self.j})")
        if self.orientation not in (PEAK, FLAT):
            raise ValueError(f"bad orientation {self.orientation!r}")

    def __str__(self) -> str:
        if self.orientation == FLAT:
            return f"({self.i},{self.j},flat)"
        return f"({self.i},{self.j})"


def label_leq(x: IntervalLabel, y: IntervalLabel) -> bool:
    """Containment of intervals; on equal intervals flat < peak."""
    if (x.i, x.j) == (y.i, y.j):
        return x.orientation == y.orientation or x.orientation == FLAT
    return y.i <= x.i and x.j <= y.j


def dyck_spectrum_labels(n: int) -> dict[IntervalLabel, LatticePath]:
    """(i, j) -> (UD)^i U^(j-i) D^(j-i) (UD)^(n-j), for j - i >= 2."""
    fam = PathFamily.dyck()
    out = {}
    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            m = j - i
            out[IntervalLabel(i, j)] = validate(fam, "UD" * i + "U" * m + "D" * m + "UD" * (n - j))
    return out


def motzkin_spectrum_labels(n: int) -> dict[IntervalLabel, LatticePath]:
    """(i, j) with j - i even -> H^i U^k D^k H^(n-j), k = (j - i) / 2."""
    fam = PathFamily.motzkin()
    out = {}
    for i in range(n + 1):
        for j in range(i + 2, n + 1, 2):
            k = (j - i) // 2
            out[IntervalLabel(i, j)] = validate(fam, "H" * i + "U" * k + "D" * k + "H" * (n - j))
    return out


def schroder_spectrum_labels(n: int) -> dict[IntervalLabel, LatticePath]:
    """Single pyramids over [2i, 2j], plus flat-topped ones when j - i >= 2."""
    fam = PathFamily.schroder()
    out = {}
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            m = j - i
            pad_l, pad_r = "HH" * i, "HH" * (n - j)
            out[IntervalLabel(i, j, PEAK)] = validate(fam, pad_l + "U" * m + "D" * m + pad_r)
            if m >= 2:
                out[IntervalLabel(i, j, FLAT)] = validate(fam, pad_l + "U" * (m - 1) + "HH" + "D" * (m - 1) + pad_r)
    return out


def label_poset(labels: Sequence[IntervalLabel]) -> FinitePoset:
    return poset_from_relation(list(labels), label_leq)


def verify_spectrum_labels(lat: PathLattice, labels: dict[IntervalLabel, LatticePath]) -> IsoResult:
    """Check the labelling is an order isomorphism onto Spec(lat)."""
    spec = spectrum_poset(lat)
    keys = sorted(labels)
    P = label_poset(keys)
    by_steps = {p.steps: k for k, p in enumerate(spec.elements)}
    mapping = {}
    for idx, key in enumerate(keys):
        steps = labels[key].steps
        if steps not in by_steps:
            return IsoResult(False, (idx,), f"{key} -> {steps} is not join-irreducible")
        mapping[idx] = by_steps[steps]
    return verify_iso(mapping, P, spec)


def canonical_labels(family: PathFamily, n: int) -> dict[IntervalLabel, LatticePath]:
    if family.is_dyck:
        return dyck_spectrum_labels(n)
    if family.kind == "motzkin":
        return motzkin_spectrum_labels(n)
    if family.kind == "schroder":
        return schroder_spectrum_labels(n)
    raise PathLatError(f"no interval labelling for {family}")


def oriented_interval_poset(n: int) -> tuple[FinitePoset, dict[int, IntervalLabel]]:
    """Oriented intervals of the chain 0 < ... < n-1, and their Schröder labels.

    An interval [u, v] with u < v comes in a negative and a positive
    orientation; I <= J when I is strictly inside J, or the intervals agree
    and I is negative while J is positive.
    """
    items = []
    for u in range(n):
        for v in range(u, n):
            items.append((u, v, +1))
            if u < v:
                items.append((u, v, -1))

    def le(x, y):
        if (x[0], x[1]) == (y[0], y[1]):
            return x[2] <= y[2]
        return y[0] <= x[0] and x[1] <= y[1]

    P = poset_from_relation(items, le)
    to_label = {k: IntervalLabel(u, v + 1, PEAK if s > 0 else FLAT) for k, (u, v, s) in enumerate(items)}
    return P, to_label


def lex_product(P: FinitePoset, Q: FinitePoset) -> FinitePoset:
    """(x1, y1) <= (x2, y2) iff x1 < x2, or x1 = x2 and y1 <= y2."""
    pairs = list(product(range(len(P)), range(len(Q))))
    n = len(pairs)
    a = np.array([p for p, _ in pairs])
    b = np.array([q for _, q in pairs])
    strict = P.leq[np.ix_(a, a)] & (a[:, None] != a[None, :])
    same = (a[:, None] == a[None, :]) & Q.leq[np.ix_(b, b)]
    leq = (strict | same).reshape(n, n)
    elements = [(P.elements[p], Q.elements[q]) for p, q in pairs]
    return FinitePoset(elements, leq)


def remove_minimal(P: FinitePoset) -> FinitePoset:
    keep = [i for i in range(len(P)) if i not in set(P.minimal())]
    return P.subposet(keep)


def verify_lex_construction(n: int, spec_sn: FinitePoset | None = None) -> IsoResult:
    """Spec(D_{n+1}) o C_1 without its minimal elements against Spec(S_n)."""
    D = dyck_spectrum_labels(n + 1)
    spec_d = label_poset(sorted(D))
    C1 = poset_from_relation([0, 1], lambda x, y: x <= y)
    L = remove_minimal(lex_product(spec_d, C1))
    if spec_sn is None:
        spec_sn = spectrum_poset(build_lattice(PathFamily.schroder(), n))
    S = schroder_spectrum_labels(n)
    by_steps = {p.steps: k for k, p in enumerate(spec_sn.elements)}
    mapping = {}
    for idx, (lab, k) in enumerate(L.elements):
        target = IntervalLabel(lab.i, lab.j - 1, PEAK if k == 1 else FLAT)
        if target not in S or S[target].steps not in by_steps:
            return IsoResult(False, (idx,), f"no Schröder join-irreducible for {target}")
        mapping[idx] = by_steps[S[target].steps]
    return verify_iso(mapping, L, spec_sn)


# ---------------------------------------------------------------------------
# Partitions


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(x < y for x, y in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> Partition:
        text = text.strip()
        return cls(tuple(int(p) for p in text.split(",")) if text else ())

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __le__(self, other: Partition) -> bool:
        """Containment of Ferrers diagrams."""
        if len(self) > len(other):
            return False
        return all(p <= q for p, q in zip(self.parts, other.parts))

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def lambda_partition(a: int, b: int, n: int, reduce: bool = True) -> Partition:
    """The partition bounding the Young-lattice dual of D_n^(a,b).

    Parts are (h-1)a + floor((k-1)a/b) read from (h, k) = (n, b) down to
    (1, 2); zero parts are dropped.
    """
    if a < b:
        a, b = b, a
    g = gcd(a, b)
    if g > 1:
        if not reduce:
            raise NotCoprime(f"gcd({a}, {b}) = {g}")
        a, b = a // g, b // g
    parts = []
    for h in range(n, 0, -1):
        for k in range(b, 0, -1):
            if h == 1 and k == 1:
                continue
            parts.append((h - 1) * a + (k - 1) * a // b)
    return Partition(tuple(p for p in parts if p > 0))


def path_to_partition(path: LatticePath) -> Partition:
    """Cells between ``path`` and the maximum path.

    Reading U as a north step and D as an east step, each U contributes a
    row whose length is the number of D steps before it.  The top maps to
    the empty partition and the bottom to ``lambda_partition``.
    """
    if path.family.kind != DYCKLIKE:
        raise PathLatError("partitions are defined for Dyck-like paths only")
    rows = []
    downs = 0
    for s in path.steps:
        if s == "D":
            downs += 1
        else:
            rows.append(downs)
    return Partition(tuple(r for r in reversed(rows) if r > 0))


def young_poset(lam: Partition) -> FinitePoset:
    """Partitions contained in ``lam``, ordered by containment."""
    shapes: list[Partition] = []

    def walk(prefix: list[int], row: int, cap: int):
        shapes.append(Partition(tuple(prefix)))
        if row == len(lam):
            return
        for p in range(1, min(cap, lam.parts[row]) + 1):
            prefix.append(p)
            walk(prefix, row + 1, p)
            prefix.pop()

    walk([], 0, lam.parts[0] if lam.parts else 0)
    shapes.sort(key=lambda s: (s.weight, s.parts))
    return poset_from_relation(shapes, lambda x, y: x <= y, rank_of=[s.weight for s in shapes])


def verify_young_duality(a: int, b: int, n: int, lat: PathLattice | None = None) -> IsoResult:
    """Check path_to_partition is an order-reversing bijection onto Y_lambda."""
    if lat is None:
        lat = build_lattice(PathFamily.dycklike(a, b), n)
    lam = lambda_partition(a, b, n)
    Y = young_poset(lam)
    # the dual of Y: reverse the order
    Ydual = FinitePoset(Y.elements, Y.leq.T, check=False)
    index = {p: k for k, p in enumerate(Y.elements)}
    mapping = {}
    for i, p in enumerate(lat.paths):
        part = path_to_partition(p)
        if part not in index:
            return IsoResult(False, (i,), f"{p.steps} -> {part} not inside {lam}")
        mapping[i] = index[part]
    return verify_iso(mapping, lat.poset, Ydual)


# ---------------------------------------------------------------------------
# Pyramids and the point poset


def pyramids(path: LatticePath) -> list[tuple[int, int, int]]:
    """Maximal factors U^r D^s whose peak can be turned into a valley.

    Returns (start, peak, end) abscissas.  Dyck-like paths only.
    """
    fam = path.family
    if fam.kind != DYCKLIKE:
        raise PathLatError("pyramids are defined here for Dyck-like paths only")
    s, h = path.steps, path.heights
    out = []
    for k in range(1, len(s)):
        if s[k - 1] == "U" and s[k] == "D" and h[k] - fam.a - fam.b >= 0:
            start = k - 1
            while start > 0 and s[start - 1] == "U":
                start -= 1
            end = k + 1
            while end < len(s) and s[end] == "D":
                end += 1
            out.append((start, k, end))
    return out


@dataclass
class PointPoset:
    """Join-irreducibles of D_n^(a,b) as points.

    ``vertices`` are the pyramid tops in the frame where U = (1, 1) and
    D = (1, -1); ``poset`` orders them coordinatewise after the 45 degree
    rotation, i.e. by (ups before the top, downs after the top).
    """

    a: int
    b: int
    n: int
    vertices: list[tuple[int, int]]
    poset: FinitePoset
    region_ok: bool
    iso: IsoResult


def _in_region(x: int, y: int, a: int, b: int, n: int) -> bool:
    g = gcd(a, b)
    return (
        0 <= x <= n * (a + b) // g
        and y <= x
        and y <= -x + n * 2 * b // g
        and y * (a + b) >= (b - a) * x
    )


def point_poset(a: int, b: int, n: int, lat: PathLattice | None = None) -> PointPoset:
    if lat is None:
        lat = build_lattice(PathFamily.dycklike(a, b), n)
    fam = lat.family
    ji = lat.join_irreducibles()
    vertices, rotated = [], []
    total_d = lat.paths[lat.top].steps.count("D")
    for j in ji:
        path = lat.paths[j]
        pyr = pyramids(path)
        if len(pyr) != 1:
            raise PathLatError(f"{path.steps} has {len(pyr)} pyramids")
        peak = pyr[0][1]
        ups = path.steps[:peak].count("U")
        downs = peak - ups
        vertices.append((ups + downs, ups - downs))
        rotated.append((ups, total_d - downs))
    region_ok = all(_in_region(x, y, fam.a, fam.b, n) for x, y in vertices)
    P = poset_from_relation(rotated, lambda p, q: p[0] <= q[0] and p[1] <= q[1])
    # J(P) against the lattice: x -> points of the join-irreducibles below x
    J = ideals_lattice(P)
    by_members = {e.members: k for k, e in enumerate(J.elements)}
    mapping = {}
    iso = IsoResult(True)
    for x in range(len(lat)):
        key = frozenset(lat.ideal_of(x))
        if key not in by_members:
            iso = IsoResult(False, (x,), "ideal of join-irreducibles is not an ideal of points")
            break
        mapping[x] = by_members[key]
    else:
        iso = verify_iso(mapping, lat.poset, J)
    return PointPoset(fam.a, fam.b, n, vertices, P, region_ok, iso)


def spectrum_size(family: PathFamily, n: int) -> int:
    return len(canonical_labels(family, n))

