"""Finite posets, path lattices and Birkhoff's representation.

Elements of a :class:`FinitePoset` are addressed by index; ``leq`` is a dense
boolean matrix with ``leq[i, j]`` meaning element ``i`` is below element ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    ClosureViolation,
    FamilyMismatch,
    InvalidPath,
    NotComparable,
    NotInLattice,
    PathLatError,
    SizeLimitExceeded,
)
from .paths import (
    LatticePath,
    PathFamily,
    element_guard,
    enumerate_paths,
    from_heights,
    maximum_path,
    minimum_path,
    rank as path_rank,
)

# above this many elements the O(N^3) transitivity check is skipped
AXIOM_CHECK_LIMIT = 2500


class FinitePoset:
    """A finite poset given by its order matrix.

    Parameters
    ----------
    elements : sequence
        Element keys, addressed by position.
    leq : array_like of bool, shape (N, N)
    covers : iterable of (lo, hi) index pairs, optional
        Computed when omitted: from ``rank_of`` if given, otherwise by
        transitive reduction.
    rank_of : sequence of int, optional
        Must increase by exactly one along every covering pair.
    check : bool, optional
        Verify the partial-order axioms.  Defaults to True for posets with at
        most ``AXIOM_CHECK_LIMIT`` elements.
    """

    def __init__(self, elements: Sequence, leq, covers=None, rank_of=None, check=None):
        self.elements = list(elements)
        self.leq = np.asarray(leq, dtype=bool)
        n = len(self.elements)
        if self.leq.shape != (n, n):
            raise ValueError(f"leq has shape {self.leq.shape}, expected {(n, n)}")
        if check is None:
            check = n <= AXIOM_CHECK_LIMIT
        if check:
            check_partial_order(self.leq)
        self.rank_of = None if rank_of is None else [int(r) for r in rank_of]
        if covers is None:
            if self.rank_of is not None:
                covers = covers_from_rank(self.leq, self.rank_of)
            else:
                covers = transitive_reduction(self.leq)
        self.covers = sorted((int(a), int(b)) for a, b in covers)
        if self.rank_of is not None:
            for lo, hi in self.covers:
                if self.rank_of[hi] != self.rank_of[lo] + 1:
                    raise PathLatError(f"rank does not step by one across cover {lo}->{hi}")
        self._down: list[list[int]] | None = None
        self._up: list[list[int]] | None = None
        self._index: dict | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FinitePoset({len(self)} elements, {len(self.covers)} covers)"

    def index(self, element) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        try:
            return self._index[element]
        except KeyError:
            raise NotInLattice(f"{element!r} is not an element of this poset") from None

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.leq[i, j])

    def _adjacency(self):
        if self._down is None:
            down: list[list[int]] = [[] for _ in self.elements]
            up: list[list[int]] = [[] for _ in self.elements]
            for lo, hi in self.covers:
                down[hi].append(lo)
                up[lo].append(hi)
            self._down, self._up = down, up
        return self._down, self._up

    def lower_covers(self, i: int) -> list[int]:
        return self._adjacency()[0][i]

    def upper_covers(self, i: int) -> list[int]:
        return self._adjacency()[1][i]

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.lower_covers(i)]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.upper_covers(i)]

    def below(self, i: int) -> list[int]:
        return np.flatnonzero(self.leq[:, i]).tolist()

    def above(self, i: int) -> list[int]:
        return np.flatnonzero(self.leq[i, :]).tolist()

    def height(self) -> int:
        if self.rank_of is not None:
            return max(self.rank_of, default=0)
        return max(longest_chain_ranks(self), default=0)

    def subposet(self, indices: Iterable[int], rank_of=None) -> FinitePoset:
        """Induced sub-poset on ``indices`` (in the given order)."""
        idx = list(indices)
        sub = self.leq[np.ix_(idx, idx)]
        return FinitePoset([self.elements[i] for i in idx], sub, rank_of=rank_of, check=False)

    def is_antichain(self, indices: Sequence[int]) -> bool:
        idx = list(indices)
        sub = self.leq[np.ix_(idx, idx)]
        return int(sub.sum()) == len(idx)


def check_partial_order(leq: np.ndarray) -> None:
    n = leq.shape[0]
    if n == 0:
        return
    if not leq.diagonal().all():
        raise PathLatError("order relation is not reflexive")
    both = leq & leq.T
    if both.sum() != n:
        raise PathLatError("order relation is not antisymmetric")
    m = leq.astype(np.float32)
    if ((m @ m > 0) & ~leq).any():
        raise PathLatError("order relation is not transitive")


def covers_from_rank(leq: np.ndarray, rank_of: Sequence[int]) -> list[tuple[int, int]]:
    """Covering pairs of a graded poset: comparable pairs one rank apart."""
    ranks = np.asarray(rank_of)
    out = []
    for r in range(int(ranks.max(initial=0))):
        lo = np.flatnonzero(ranks == r)
        hi = np.flatnonzero(ranks == r + 1)
        if len(lo) == 0 or len(hi) == 0:
            continue
        sub = leq[np.ix_(lo, hi)]
        a, b = np.nonzero(sub)
        out.extend(zip(lo[a].tolist(), hi[b].tolist()))
    return out


def transitive_reduction(leq: np.ndarray) -> list[tuple[int, int]]:
    """Covering pairs by brute force: x < y with nothing strictly between."""
    strict = leq & ~np.eye(leq.shape[0], dtype=bool)
    m = strict.astype(np.float32)
    between = (m @ m) > 0
    a, b = np.nonzero(strict & ~between)
    return list(zip(a.tolist(), b.tolist()))


def longest_chain_ranks(P: FinitePoset) -> list[int]:
    """Length of the longest chain ending at each element (minimal -> 0)."""
    order = sorted(range(len(P)), key=lambda i: int(P.leq[:, i].sum()))
    r = [0] * len(P)
    for i in order:
        for lo in P.lower_covers(i):
            r[i] = max(r[i], r[lo] + 1)
    return r


def graded_rank(P: FinitePoset) -> list[int] | None:
    """Rank function if every cover steps the longest-chain rank by one."""
    r = longest_chain_ranks(P)
    for lo, hi in P.covers:
        if r[hi] != r[lo] + 1:
            return None
    return r


def poset_from_relation(elements: Sequence, le: Callable[[Any, Any], bool], rank_of=None) -> FinitePoset:
    n = len(elements)
    leq = np.array([[le(x, y) for y in elements] for x in elements], dtype=bool).reshape(n, n)
    return FinitePoset(elements, leq, rank_of=rank_of)


def boolean_algebra(k: int) -> FinitePoset:
    """Subsets of {0..k-1} (as frozensets) ordered by inclusion."""
    elements = [frozenset(i for i in range(k) if m >> i & 1) for m in range(1 << k)]
    elements.sort(key=lambda s: (len(s), sorted(s)))
    return poset_from_relation(elements, lambda x, y: x <= y, rank_of=[len(s) for s in elements])


def chain(k: int) -> FinitePoset:
    """The chain 0 < 1 < ... < k (k + 1 elements)."""
    return poset_from_relation(list(range(k + 1)), lambda x, y: x <= y, rank_of=list(range(k + 1)))


def antichain(k: int) -> FinitePoset:
    return poset_from_relation(list(range(k)), lambda x, y: x == y, rank_of=[0] * k)


# ---------------------------------------------------------------------------
# Paths as lattice elements


def _same_family(p: LatticePath, q: LatticePath) -> None:
    if p.family != q.family or p.width != q.width:
        raise FamilyMismatch(f"{p.steps} ({p.family}) and {q.steps} ({q.family}) differ in family or size")


def path_leq(p: LatticePath, q: LatticePath) -> bool:
    _same_family(p, q)
    return all(x <= y for x, y in zip(p.heights, q.heights))


def _pointwise(p: LatticePath, q: LatticePath, op) -> LatticePath:
    _same_family(p, q)
    profile = [op(x, y) for x, y in zip(p.heights, q.heights)]
    try:
        return from_heights(p.family, profile)
    except InvalidPath as exc:
        raise ClosureViolation(f"pointwise {op.__name__} of {p.steps} and {q.steps}: {exc}") from exc


def path_meet(p: LatticePath, q: LatticePath) -> LatticePath:
    return _pointwise(p, q, min)


def path_join(p: LatticePath, q: LatticePath) -> LatticePath:
    return _pointwise(p, q, max)


def _leq_from_heights(H: np.ndarray, chunk: int = 512) -> np.ndarray:
    n = H.shape[0]
    out = np.empty((n, n), dtype=bool)
    for start in range(0, n, chunk):
        out[start:start + chunk] = (H[start:start + chunk, None, :] <= H[None, :, :]).all(axis=-1)
    return out


class PathLattice:
    """All paths of one family and size, ordered by height profiles."""

    def __init__(self, family: PathFamily, n: int, paths: Sequence[LatticePath]):
        self.family = family
        self.n = n
        self.paths = list(paths)
        self.heights = np.array([p.heights for p in self.paths], dtype=np.int64).reshape(len(self.paths), -1)
        self._by_profile = {p.heights: i for i, p in enumerate(self.paths)}
        self._by_steps = {p.steps: i for i, p in enumerate(self.paths)}
        ranks = [path_rank(p) for p in self.paths]
        leq = _leq_from_heights(self.heights)
        self.poset = FinitePoset(self.paths, leq, rank_of=ranks)
        self.bottom = self._by_profile[minimum_path(family, n).heights]
        self.top = self._by_profile[maximum_path(family, n).heights]
        self._ji: list[int] | None = None

    def __len__(self) -> int:
        return len(self.paths)

    def __repr__(self) -> str:
        return f"PathLattice({self.family}, n={self.n}, {len(self)} elements)"

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    @property
    def rank_of(self) -> list[int]:
        return self.poset.rank_of

    def index(self, x: LatticePath | str | int) -> int:
        if isinstance(x, (int, np.integer)):
            if not 0 <= x < len(self):
                raise NotInLattice(f"index {x} out of range")
            return int(x)
        key = x if isinstance(x, str) else x.steps
        try:
            return self._by_steps[key.strip().upper()]
        except KeyError:
            raise NotInLattice(f"{key!r} is not an element of {self!r}") from None

    def path(self, i: int) -> LatticePath:
        return self.paths[i]

    def _combine(self, i: int, j: int, op) -> int:
        profile = tuple(int(v) for v in op(self.heights[i], self.heights[j]))
        k = self._by_profile.get(profile)
        if k is None:
            raise ClosureViolation(
                f"pointwise {op.__name__} of {self.paths[i].steps} and {self.paths[j].steps} is not a path")
        return k

    def meet(self, i: int, j: int) -> int:
        return self._combine(i, j, np.minimum)

    def join(self, i: int, j: int) -> int:
        return self._combine(i, j, np.maximum)

    def meet_all(self, items: Iterable[int]) -> int:
        return reduce(self.meet, items, self.top)

    def join_all(self, items: Iterable[int]) -> int:
        return reduce(self.join, items, self.bottom)

    def join_irreducibles(self) -> list[int]:
        """Non-bottom elements covering exactly one element."""
        if self._ji is None:
            P = self.poset
            self._ji = [i for i in range(len(self)) if len(P.lower_covers(i)) == 1]
        return self._ji

    def ideal_of(self, i: int) -> list[int]:
        """Join-irreducibles below element ``i``, as positions in :meth:`join_irreducibles`."""
        ji = self.join_irreducibles()
        return np.flatnonzero(self.leq[ji, i]).tolist()


def build_lattice(family: PathFamily, n: int, guard: int | None = None) -> PathLattice:
    return PathLattice(family, n, enumerate_paths(family, n, guard=guard))


def atoms(lat: PathLattice) -> list[int]:
    return list(lat.poset.upper_covers(lat.bottom))


def coatoms(lat: PathLattice) -> list[int]:
    return list(lat.poset.lower_covers(lat.top))


def socle(lat: PathLattice) -> int:
    return lat.join_all(atoms(lat))


def radical(lat: PathLattice) -> int:
    return lat.meet_all(coatoms(lat))


def join_irreducibles(lat: PathLattice) -> list[int]:
    return list(lat.join_irreducibles())


def spectrum_poset(lat: PathLattice) -> FinitePoset:
    """Induced order on the join-irreducibles; elements are the paths."""
    return lat.poset.subposet(lat.join_irreducibles())


def interval(P: FinitePoset | PathLattice, x: int, y: int) -> FinitePoset:
    """Induced sub-poset on {z : x <= z <= y}."""
    poset = P.poset if isinstance(P, PathLattice) else P
    if not poset.leq[x, y]:
        raise NotComparable(f"element {x} is not below element {y}")
    idx = np.flatnonzero(poset.leq[x, :] & poset.leq[:, y]).tolist()
    ranks = None
    if poset.rank_of is not None:
        ranks = [poset.rank_of[i] - poset.rank_of[x] for i in idx]
    return poset.subposet(idx, rank_of=ranks)


def principal_ideal(P: FinitePoset | PathLattice, x: int) -> FinitePoset:
    poset = P.poset if isinstance(P, PathLattice) else P
    bottom = P.bottom if isinstance(P, PathLattice) else poset.minimal()[0]
    return interval(poset, bottom, x)


def principal_filter(P: FinitePoset | PathLattice, x: int) -> FinitePoset:
    poset = P.poset if isinstance(P, PathLattice) else P
    top = P.top if isinstance(P, PathLattice) else poset.maximal()[0]
    return interval(poset, x, top)


# ---------------------------------------------------------------------------
# Order ideals and Birkhoff


@dataclass(frozen=True)
class OrderIdeal:
    """A downward-closed set of element indices of ``base``."""

    members: frozenset
    base: FinitePoset | None = field(default=None, compare=False, repr=False, hash=False)

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: OrderIdeal) -> bool:
        return self.members <= other.members

    def is_downward_closed(self) -> bool:
        if self.base is None:
            return True
        return all(u in self.members for x in self.members for u in self.base.below(x))


def linear_extension(P: FinitePoset) -> list[int]:
    return sorted(range(len(P)), key=lambda i: (int(P.leq[:, i].sum()), i))


def iter_ideal_masks(P: FinitePoset, guard: int | None = None) -> list[int]:
    """All order ideals of ``P`` as bitmasks over element indices."""
    limit = element_guard(guard)
    order = linear_extension(P)
    below = [sum(1 << j for j in P.below(i) if j != i) for i in range(len(P))]
    out: list[int] = []

    def walk(k: int, mask: int) -> None:
        if k == len(order):
            out.append(mask)
            if len(out) > limit:
                raise SizeLimitExceeded(f"more than {limit} order ideals")
            return
        walk(k + 1, mask)
        i = order[k]
        if below[i] & ~mask == 0:
            walk(k + 1, mask | (1 << i))

    walk(0, 0)
    return out


def ideals_lattice(P: FinitePoset, guard: int | None = None) -> FinitePoset:
    """J(P): order ideals of ``P`` ordered by inclusion."""
    masks = iter_ideal_masks(P, guard)
    masks.sort(key=lambda m: (bin(m).count("1"), m))
    k = len(P)
    member = np.array([[m >> i & 1 for i in range(k)] for m in masks], dtype=np.int32).reshape(len(masks), k)
    # I <= J iff no member of I is missing from J
    leq = (member @ (1 - member).T) == 0
    elements = [OrderIdeal(frozenset(np.flatnonzero(row).tolist()), P) for row in member]
    return FinitePoset(elements, leq, rank_of=[len(e) for e in elements], check=False)


@dataclass
class IsoResult:
    ok: bool
    counterexample: tuple | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_iso(mapping, P: FinitePoset, Q: FinitePoset) -> IsoResult:
    """Check that ``mapping`` (P index -> Q index) is an order isomorphism."""
    if isinstance(mapping, dict):
        try:
            image = [mapping[i] for i in range(len(P))]
        except KeyError as exc:
            return IsoResult(False, (exc.args[0],), "map is not total")
    else:
        image = list(mapping)
    if len(image) != len(P):
        return IsoResult(False, None, "map is not total")
    if len(P) != len(Q) or sorted(image) != list(range(len(Q))):
        return IsoResult(False, None, f"not a bijection ({len(P)} -> {len(Q)} elements)")
    img = np.asarray(image, dtype=np.int64)
    mapped = Q.leq[np.ix_(img, img)]
    bad = np.argwhere(mapped != P.leq)
    if len(bad):
        x, y = (int(v) for v in bad[0])
        return IsoResult(False, (x, y), f"order differs at ({x}, {y})")
    return IsoResult(True)


def map_by_key(P: FinitePoset, Q: FinitePoset, key_p: Callable, key_q: Callable) -> dict[int, int] | None:
    """Build a P -> Q index map by matching ``key_p(element)`` with ``key_q(element)``."""
    lookup = {}
    for j, e in enumerate(Q.elements):
        lookup[key_q(e)] = j
    out = {}
    for i, e in enumerate(P.elements):
        k = key_p(e)
        if k not in lookup:
            return None
        out[i] = lookup[k]
    return out


@dataclass
class BirkhoffResult:
    ok: bool
    mapping: dict[int, int]
    ideals: FinitePoset
    iso: IsoResult

    def __bool__(self) -> bool:
        return self.ok


def verify_birkhoff(lat: PathLattice, guard: int | None = None) -> BirkhoffResult:
    """Check x -> {join-irreducibles below x} is an isomorphism onto J(Spec)."""
    spec = spectrum_poset(lat)
    J = ideals_lattice(spec, guard)
    by_members = {e.members: j for j, e in enumerate(J.elements)}
    mapping = {}
    for x in range(len(lat)):
        key = frozenset(lat.ideal_of(x))
        if key not in by_members:
            iso = IsoResult(False, (x,), f"ideal of element {x} not found among order ideals")
            return BirkhoffResult(False, mapping, J, iso)
        mapping[x] = by_members[key]
    iso = verify_iso(mapping, lat.poset, J)
    return BirkhoffResult(iso.ok, mapping, J, iso)


def hashable_key(x) -> Hashable:
    return x.steps if isinstance(x, LatticePath) else x
