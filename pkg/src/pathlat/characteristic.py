"""Euler characteristic and generalized characteristics of path lattices.

Valuations are evaluated through increments on the spectrum: walking the
join-irreducibles in a linear extension, each ``p`` contributes
``c(p) = v(p) - sum(c(q) for q < p)``, which is the ideal recursion
``nu(I) = nu(I - p) + nu(down p) - nu(down p - p)`` unrolled.  Then
``nu(x) = sum(c(p) for p <= x)``.  Direct inclusion-exclusion over the
maximal join-irreducibles below ``x`` is kept as an independent oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from .errors import (
    InvalidPath,
    NoClosedForm,
    NotQuasiJoinIrreducible,
    PathLatError,
    SpectrumNotRanked,
)
from .order import PathLattice, graded_rank, spectrum_poset
from .paths import DYCKLIKE, MOTZKIN, SCHRODER, LatticePath, PathFamily, from_heights, iter_paths


@dataclass(frozen=True)
class Tunnel:
    height: int
    x_start: int
    x_end: int

    def as_triple(self) -> tuple[int, int, int]:
        return (self.height, self.x_start, self.x_end)


def _unit_steps(path: LatticePath) -> None:
    fam = path.family
    if fam.kind == DYCKLIKE and not fam.is_dyck:
        raise NoClosedForm(f"tunnels need unit up/down steps, not {fam}")


def tunnels(path: LatticePath) -> list[Tunnel]:
    """One tunnel per matched U/D pair; H steps are transparent."""
    _unit_steps(path)
    h = path.heights
    stack: list[int] = []
    out = []
    for k, s in enumerate(path.steps):
        if s == "U":
            stack.append(k)
        elif s == "D":
            start = stack.pop()
            out.append(Tunnel(h[start], start, k + 1))
    out.sort(key=lambda t: (t.x_start, t.height))
    return out


def tunnels_geometric(path: LatticePath) -> list[Tunnel]:
    """Tunnels from the definition: segments on y = k touching the path only at their ends."""
    _unit_steps(path)
    h = path.heights
    out = []
    for x1 in range(len(h)):
        for x2 in range(x1 + 2, len(h)):
            if h[x2] == h[x1] and min(h[x1 + 1:x2]) > h[x1]:
                out.append(Tunnel(h[x1], x1, x2))
    out.sort(key=lambda t: (t.x_start, t.height))
    return out


def tunnel_count(path: LatticePath, k: int) -> int:
    return sum(1 for t in tunnels(path) if t.height == k)


def tunnel_profile(path: LatticePath) -> list[int]:
    """[t_0, t_1, ..., t_max]."""
    ts = tunnels(path)
    top = max((t.height for t in ts), default=-1)
    prof = [0] * (top + 1)
    for t in ts:
        prof[t.height] += 1
    return prof


@dataclass(frozen=True)
class StepStats:
    o: int = 0
    e: int = 0
    o_prime: int = 0
    h1: int = 0
    p1: int = 0
    f1: int = 0
    r1: int = 0


def _flat_runs(path: LatticePath) -> list[tuple[int, int, int]]:
    """Maximal H runs as (start, end, height)."""
    s, h = path.steps, path.heights
    out = []
    k = 0
    while k < len(s):
        if s[k] != "H":
            k += 1
            continue
        start = k
        while k < len(s) and s[k] == "H":
            k += 1
        out.append((start, k, h[start]))
    return out


def step_stats(path: LatticePath) -> StepStats:
    """Horizontal-step and height-1 factor counts.

    Schröder flats count once per double step.
    """
    s, h = path.steps, path.heights
    unit = 2 if path.family.kind == SCHRODER else 1
    o = e = o_prime = h1 = f1 = r1 = p1 = 0
    for start, end, ht in _flat_runs(path):
        steps = (end - start) // unit
        if ht % 2:
            o += steps
            if ht == 1:
                h1 += steps
            else:
                o_prime += steps
        elif ht:
            e += steps
        if ht == 1:
            before = s[start - 1] if start else ""
            after = s[end] if end < len(s) else ""
            if before == "U" and after == "D":
                f1 += 1
            if before == "D" and after == "U":
                r1 += 1
    for k in range(1, len(s)):
        if s[k - 1] == "U" and s[k] == "D" and h[k] == 1:
            p1 += 1
    return StepStats(o, e, o_prime, h1, p1, f1, r1)


def truncated_pyramid_class(path: LatticePath) -> tuple[int, int, int] | None:
    """(n, m, h) when ``path`` is H^a U^h H^m D^h H^b with m, h >= 1."""
    if path.family.kind != MOTZKIN:
        raise PathLatError("truncated pyramids are Motzkin objects")
    s = path.steps
    core = s.strip("H")
    h = len(core) - len(core.lstrip("U"))
    if h == 0:
        return None
    m = len(core) - 2 * h
    if m < 1 or core != "U" * h + "H" * m + "D" * h:
        return None
    return (len(s), m, h)


# ---------------------------------------------------------------------------
# Valuations


@dataclass
class ValuationSpec:
    """Values of a valuation on the join-irreducibles of ``lattice``."""

    lattice: PathLattice
    values: dict[int, int]

    def __post_init__(self):
        ji = set(self.lattice.join_irreducibles())
        if set(self.values) != ji:
            raise PathLatError("valuation must be given on exactly the join-irreducibles")

    @classmethod
    def from_function(cls, lat: PathLattice, f: Callable[[int], int]) -> ValuationSpec:
        return cls(lat, {j: int(f(j)) for j in lat.join_irreducibles()})


class _Tables:
    """Per-lattice data derived once and then only read."""

    def __init__(self, lat: PathLattice):
        self.ji = lat.join_irreducibles()
        self.pos = {j: k for k, j in enumerate(self.ji)}
        self.below = lat.leq[self.ji, :]  # below[k, x]: ji[k] <= x
        sub = lat.leq[np.ix_(self.ji, self.ji)]
        self.strict = sub & ~np.eye(len(self.ji), dtype=bool)
        self.order = sorted(range(len(self.ji)), key=lambda k: int(sub[:, k].sum()))


_tables: dict[int, tuple[PathLattice, _Tables]] = {}


def _tables_for(lat: PathLattice) -> _Tables:
    hit = _tables.get(id(lat))
    if hit is None or hit[0] is not lat:
        hit = (lat, _Tables(lat))
        _tables[id(lat)] = hit
    return hit[1]


def increments(spec: ValuationSpec, order: Iterable[int] | None = None) -> np.ndarray:
    """c(p) for every join-irreducible, in the order of ``join_irreducibles()``."""
    t = _tables_for(spec.lattice)
    v = np.array([spec.values[j] for j in t.ji], dtype=np.int64)
    c = np.zeros(len(t.ji), dtype=np.int64)
    for k in (t.order if order is None else order):
        c[k] = v[k] - c[t.strict[:, k]].sum()
    return c


def valuation_table(spec: ValuationSpec, order: Iterable[int] | None = None) -> np.ndarray:
    """Valuation at every element of the lattice."""
    t = _tables_for(spec.lattice)
    c = increments(spec, order)
    if not len(c):
        return np.zeros(len(spec.lattice), dtype=np.int64)
    return c @ t.below.astype(np.int64)


def evaluate_valuation(spec: ValuationSpec, x) -> int:
    lat = spec.lattice
    i = lat.index(x)
    t = _tables_for(lat)
    c = increments(spec)
    return int(c @ t.below[:, i].astype(np.int64))


def valuation_by_inclusion_exclusion(spec: ValuationSpec, x) -> int:
    """Oracle: expand x as the join of its maximal join-irreducibles."""
    lat = spec.lattice

    @lru_cache(maxsize=None)
    def nu(i: int) -> int:
        if i == lat.bottom:
            return 0
        if i in spec.values:
            return spec.values[i]
        tops = maximal_join_irreducibles(lat, i)
        total = 0
        for r in range(1, len(tops) + 1):
            for S in combinations(tops, r):
                total += (-1) ** (r - 1) * nu(lat.meet_all(S))
        return total

    return nu(lat.index(x))


def chi_spec(lat: PathLattice) -> ValuationSpec:
    return ValuationSpec(lat, {j: 1 for j in lat.join_irreducibles()})


def chi(lat: PathLattice, x) -> int:
    return evaluate_valuation(chi_spec(lat), x)


def chi_table(lat: PathLattice) -> list[int]:
    return valuation_table(chi_spec(lat)).tolist()


def spectrum_ranks(lat: PathLattice) -> dict[int, int]:
    """Rank of each join-irreducible in {0} + Spec, or SpectrumNotRanked."""
    spec = spectrum_poset(lat)
    r = graded_rank(spec)
    if r is None:
        raise SpectrumNotRanked(f"{{0}} + Spec of {lat!r} is not ranked")
    # minimal join-irreducibles cover the added bottom, so they sit at rank 1
    return {j: r[k] + 1 for k, j in enumerate(lat.join_irreducibles())}


def chi_k_spec(lat: PathLattice, k: int) -> ValuationSpec:
    ranks = spectrum_ranks(lat)
    return ValuationSpec(lat, {j: int(r >= k) for j, r in ranks.items()})


def chi_k(lat: PathLattice, x, k: int) -> int:
    return evaluate_valuation(chi_k_spec(lat, k), x)


# ---------------------------------------------------------------------------
# Quasi-join-irreducibles


def pyramid_label(lat: PathLattice, j: int) -> int:
    """Abscissa where a join-irreducible differs from its unique lower cover."""
    (lo,) = lat.poset.lower_covers(j)
    diff = np.flatnonzero(lat.heights[j] != lat.heights[lo])
    if len(diff) != 1:
        raise PathLatError(f"{lat.paths[j].steps} differs from its lower cover in {len(diff)} places")
    return int(diff[0])


def maximal_join_irreducibles(lat: PathLattice, x: int) -> list[int]:
    """Maximal join-irreducibles below ``x``, sorted by pyramid abscissa."""
    t = _tables_for(lat)
    below = np.flatnonzero(t.below[:, x])
    if not len(below):
        return []
    sub = t.strict[np.ix_(below, below)]
    tops = [t.ji[below[k]] for k in range(len(below)) if not sub[k].any()]
    labels = [pyramid_label(lat, j) for j in tops]
    if len(set(labels)) != len(labels):
        raise PathLatError(f"repeated pyramid abscissa below {lat.paths[x].steps}")
    return [j for _, j in sorted(zip(labels, tops))]


def _chain_meets_nonzero(lat: PathLattice, parts: list[int]) -> bool:
    return all(lat.meet(a, b) != lat.bottom for a, b in zip(parts, parts[1:]))


def is_quasi_join_irreducible(lat: PathLattice, x) -> bool:
    i = lat.index(x)
    if i == lat.bottom:
        return False
    return _chain_meets_nonzero(lat, maximal_join_irreducibles(lat, i))


def _groups(lat: PathLattice, tops: list[int]) -> list[list[int]]:
    groups: list[list[int]] = []
    for j in tops:
        if groups and lat.meet(groups[-1][-1], j) != lat.bottom:
            groups[-1].append(j)
        else:
            groups.append([j])
    return groups


def qji_decomposition(lat: PathLattice, x) -> list[int]:
    """Split the ordered antichain of maximal join-irreducibles at 0-meets."""
    i = lat.index(x)
    if i == lat.bottom:
        return []
    return [lat.join_all(g) for g in _groups(lat, maximal_join_irreducibles(lat, i))]


def motzkin_decomposition(lat: PathLattice, x) -> list[int]:
    """Parts that are join-irreducibles or truncated pyramids, joining to ``x``.

    Every maximal join-irreducible below ``x`` lies under some part, so the
    search walks them left to right, letting each new part absorb the next
    uncovered one.  Adjacent parts must meet in a join-irreducible.  Among
    valid sequences the shortest wins, then the one with the longest
    truncated pyramids, then the lexicographically smallest.
    """
    if lat.family.kind != MOTZKIN:
        raise PathLatError("Motzkin decomposition needs a Motzkin lattice")
    i = lat.index(x)
    if i == lat.bottom:
        raise NotQuasiJoinIrreducible("the bottom element has no decomposition")
    tops = maximal_join_irreducibles(lat, i)
    ji = set(lat.join_irreducibles())
    below = np.flatnonzero(lat.leq[:, i]).tolist()
    length = {}
    for c in below:
        cls = truncated_pyramid_class(lat.paths[c])
        if cls is not None:
            length[c] = cls[1]
        elif c in ji:
            length[c] = 0

    @lru_cache(maxsize=None)
    def best(k: int, prev: int) -> tuple | None:
        # (count, -pyramid length, parts) for covering tops[k:]
        if k == len(tops):
            return (0, 0, ())
        found = None
        for c in length:
            if not lat.leq[tops[k], c]:
                continue
            if prev >= 0 and lat.meet(prev, c) not in ji:
                continue
            nxt = k
            while nxt < len(tops) and lat.leq[tops[nxt], c]:
                nxt += 1
            rest = best(nxt, c)
            if rest is None:
                continue
            cand = (rest[0] + 1, rest[1] - length[c], (c,) + rest[2])
            if found is None or cand < found:
                found = cand
        return found

    result = best(0, -1)
    if result is None:
        raise NotQuasiJoinIrreducible(f"no Motzkin decomposition for {lat.paths[i].steps}")
    return list(result[2])


def norm(lat: PathLattice, x) -> int:
    """Number of parts in a quasi-join-irreducible decomposition."""
    return len(qji_decomposition(lat, x))


# ---------------------------------------------------------------------------
# Closed forms


def chi_combinatorial(path: LatticePath) -> int:
    fam = path.family
    if fam.is_dyck:
        return tunnel_count(path, 1)
    if fam.kind == SCHRODER:
        return tunnel_count(path, 0)
    if fam.kind == MOTZKIN:
        st = step_stats(path)
        return st.o - st.e + tunnel_count(path, 1) + st.f1 + st.p1 - st.r1
    raise NoClosedForm(f"no combinatorial characteristic for {fam}")


def truncated_pyramid_chi(m: int, h: int) -> int:
    return (-1) ** (h + 1) * m + 1


def motzkin_top_chi(n: int) -> int:
    """Value predicted for the top of M_n: 1, 0, 2 by n even, 1 mod 4, 3 mod 4."""
    if n % 2 == 0:
        return 1
    return 0 if n % 4 == 1 else 2


# ---------------------------------------------------------------------------
# Streaming variant, for lattices too large for an order matrix


def lower_neighbours(path: LatticePath) -> list[LatticePath]:
    """Paths obtained by lowering a single ordinate by the family's unit."""
    fam = path.family
    drop = fam.a + fam.b if fam.kind == DYCKLIKE else 1
    out = []
    h = list(path.heights)
    for t in range(1, len(h) - 1):
        h[t] -= drop
        try:
            out.append(from_heights(fam, h))
        except InvalidPath:
            pass
        h[t] += drop
    return out


def streaming_top_chi(family: PathFamily, n: int) -> int:
    """chi of the top element, computed from the spectrum alone.

    Join-irreducibles are found by scanning every path for a single lower
    neighbour; the increments then run on the spectrum only.
    """
    ji = [p for p in iter_paths(family, n) if len(lower_neighbours(p)) == 1]
    if not ji:
        return 0
    H = np.array([p.heights for p in ji])
    leq = (H[:, None, :] <= H[None, :, :]).all(axis=-1)
    order = sorted(range(len(ji)), key=lambda k: int(leq[:, k].sum()))
    c = np.zeros(len(ji), dtype=np.int64)
    strict = leq & ~np.eye(len(ji), dtype=bool)
    for k in order:
        c[k] = 1 - c[strict[:, k]].sum()
    return int(c.sum())


def special_meet_property(lat: PathLattice, test: Callable[[int], bool] | None = None) -> tuple[int, int] | None:
    """First incomparable pair of join-irreducibles whose meet is neither 0 nor allowed.

    Comparable pairs are skipped: their meet is the smaller element.
    """
    ji = lat.join_irreducibles()
    jiset = set(ji)
    for a, b in combinations(ji, 2):
        if lat.leq[a, b] or lat.leq[b, a]:
            continue
        m = lat.meet(a, b)
        if m == lat.bottom:
            continue
        if m not in jiset or (test is not None and not test(m)):
            return (a, b)
    return None


def has_unique_peak(path: LatticePath) -> bool:
    s = path.steps
    return sum(1 for k in range(1, len(s)) if s[k - 1] == "U" and s[k] == "D") == 1


def valuation_law_violation(spec: ValuationSpec) -> tuple[int, int] | None:
    lat = spec.lattice
    nu = valuation_table(spec)
    for x in range(len(lat)):
        for y in range(x, len(lat)):
            if nu[lat.join(x, y)] + nu[lat.meet(x, y)] != nu[x] + nu[y]:
                return (x, y)
    return None


def chi_rows(lat: PathLattice) -> list[dict]:
    """One record per element: id, path, rank, chi, combinatorial chi, tunnel profile."""
    values = chi_table(lat)
    rows = []
    for i, p in enumerate(lat.paths):
        try:
            combo = chi_combinatorial(p)
            prof = tunnel_profile(p)
        except NoClosedForm:
            combo, prof = None, []
        rows.append({"id": i, "path": p.steps, "rank": lat.rank_of[i], "chi": int(values[i]),
                     "chi_combinatorial": combo, "tunnels": prof})
    return rows

