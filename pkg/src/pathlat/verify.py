"""Desk-scale verification suites, one per module.

Each check returns a :class:`Check`; ``run_suites`` collects them in
declaration order.  A failing check carries the first counterexample found.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Iterator

import numpy as np

from . import characteristic as ch
from . import rankpoly as rp
from . import spectrum as sp
from .errors import ClosureViolation
from .export import lattice_from_json, lattice_to_json
from .order import (
    PathLattice,
    atoms,
    boolean_algebra,
    build_lattice,
    coatoms,
    ideals_lattice,
    interval,
    principal_filter,
    principal_ideal,
    socle,
    spectrum_poset,
    transitive_reduction,
    verify_birkhoff,
    verify_iso,
)
from .paths import (
    PathFamily,
    count_paths,
    enumerate_paths,
    maximum_path,
    minimum_path,
    max_descent_run,
    rank,
)

DYCK = PathFamily.dyck()
MOTZKIN = PathFamily.motzkin()
SCHRODER = PathFamily.schroder()

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
MOTZKIN_NUMBERS = [1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]
SCHRODER_NUMBERS = [1, 2, 6, 22, 90, 394, 1806]


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{self.name}: {status}" + (f" ({self.detail})" if self.detail else "")


@lru_cache(maxsize=64)
def lattice(family: PathFamily, n: int) -> PathLattice:
    return build_lattice(family, n)


def _check(name: str, fn: Callable[[], tuple[bool, str] | bool]) -> Check:
    t0 = time.perf_counter()
    try:
        out = fn()
    except Exception as exc:  # a crash is a failed check, reported with its message
        return Check(name, False, f"{type(exc).__name__}: {exc}", time.perf_counter() - t0)
    ok, detail = out if isinstance(out, tuple) else (out, "")
    return Check(name, bool(ok), detail, time.perf_counter() - t0)


def _first(items) -> tuple[bool, str]:
    """(True, '') for an empty iterable, else (False, first item)."""
    for item in items:
        return False, str(item)
    return True, ""


# ---------------------------------------------------------------------------
# paths


def count_paths_recursive(family: PathFamily, n: int) -> int:
    """Second counter: memoised recursion on (column, height)."""
    width = family.width(n)
    moves = [(1, family.rise("U")), (1, family.rise("D"))]
    if family.kind == "motzkin":
        moves.append((1, 0))
    elif family.kind == "schroder":
        moves.append((2, 0))

    @lru_cache(maxsize=None)
    def ways(col: int, h: int) -> int:
        if h < 0 or col > width:
            return 0
        if col == width:
            return int(h == 0)
        return sum(ways(col + dx, h + dy) for dx, dy in moves)

    return ways(0, 0)


def motzkin_by_descents(n: int) -> int:
    return sum(1 for p in enumerate_paths(DYCK, n) if max_descent_run(p) <= 2)


def _residues(family: PathFamily, n: int):
    a, b = family.a, family.b
    for p in enumerate_paths(family, n):
        if p.width != family.width(n):
            yield f"{p.steps}: width {p.width}"
        for k, h in enumerate(p.heights):
            if (h + k * b) % (a + b):
                yield f"{p.steps}: height {h} at {k}"


def _sandwich(family: PathFamily, n: int):
    lo, hi = minimum_path(family, n).heights, maximum_path(family, n).heights
    for p in enumerate_paths(family, n):
        if not all(x <= y <= z for x, y, z in zip(lo, p.heights, hi)):
            yield p.steps


def suite_paths() -> Iterator[Check]:
    def counts():
        got = ([count_paths(DYCK, n) for n in range(9)], [count_paths(MOTZKIN, n) for n in range(9)],
               [count_paths(SCHRODER, n) for n in range(6)])
        want = (CATALAN, MOTZKIN_NUMBERS[:9], SCHRODER_NUMBERS[:6])
        return got == want, "D0..8, M0..8, S0..5"

    yield _check("counts catalan/motzkin/schroder", counts)

    def oracle():
        fams = [(DYCK, 8), (MOTZKIN, 8), (SCHRODER, 5), (PathFamily.dycklike(3, 2), 3), (PathFamily.dycklike(5, 3), 2),
                (PathFamily.dycklike(2, 2), 4)]
        for fam, top in fams:
            for n in range(top + 1):
                listed = len(enumerate_paths(fam, n))
                if not listed == count_paths(fam, n) == count_paths_recursive(fam, n):
                    return False, f"{fam} n={n}"
        return True, "enumeration = DP = recursion"

    yield _check("enumeration vs recursive counter", oracle)

    def residues():
        for fam, top in [(DYCK, 6), (PathFamily.dycklike(3, 2), 3), (PathFamily.dycklike(5, 2), 2),
                         (PathFamily.dycklike(5, 3), 2), (PathFamily.dycklike(4, 2), 3)]:
            for n in range(top + 1):
                ok, detail = _first(_residues(fam, n))
                if not ok:
                    return ok, detail
        return True, ""

    yield _check("dycklike width and residues", residues)

    def sandwich():
        for fam, top in [(DYCK, 7), (MOTZKIN, 8), (SCHRODER, 4), (PathFamily.dycklike(3, 2), 3)]:
            for n in range(top + 1):
                ok, detail = _first(_sandwich(fam, n))
                if not ok:
                    return ok, f"{fam} n={n}: {detail}"
        return True, ""

    yield _check("min <= path <= max", sandwich)

    def top_ranks():
        for n in range(9):
            if rank(maximum_path(DYCK, n)) != comb(n, 2):
                return False, f"dyck n={n}"
        for n in range(11):
            if rank(maximum_path(MOTZKIN, n)) != (n // 2) * ((n + 1) // 2):
                return False, f"motzkin n={n}"
        for n in range(7):
            if rank(maximum_path(SCHRODER, n)) != n * n:
                return False, f"schroder n={n}"
        return True, ""

    yield _check("rank of maximum", top_ranks)

    def descents():
        bad = [n for n in range(9) if motzkin_by_descents(n) != MOTZKIN_NUMBERS[n]]
        return not bad, "n≤8" + (f", bad {bad}" if bad else "")

    yield _check("dyck paths with descents <= 2 are counted by motzkin", descents)


# ---------------------------------------------------------------------------
# order


def closure_violations(lat: PathLattice) -> Iterator[str]:
    """Pointwise meet/join are paths and are the inf/sup of the order."""
    leq = lat.leq
    n = len(lat)
    for x in range(n):
        for y in range(x, n):
            try:
                m, j = lat.meet(x, y), lat.join(x, y)
            except ClosureViolation as exc:
                yield str(exc)
                return
            lower = leq[:, x] & leq[:, y]
            upper = leq[x, :] & leq[y, :]
            if not lower[m] or not leq[lower, m].all():
                yield f"meet of {lat.paths[x].steps}, {lat.paths[y].steps}"
            if not upper[j] or not leq[j, upper].all():
                yield f"join of {lat.paths[x].steps}, {lat.paths[y].steps}"


def distributivity_violations(lat: PathLattice) -> Iterator[str]:
    n = len(lat)
    for x in range(n):
        for y in range(n):
            for z in range(y, n):
                if lat.meet(x, lat.join(y, z)) != lat.join(lat.meet(x, y), lat.meet(x, z)):
                    yield f"{x},{y},{z}"
                    return


def _atoms_witness(lat: PathLattice, sub) -> dict[int, int]:
    """Map each element of ``sub`` to the set of lattice atoms below it, as an index of B_k."""
    at = atoms(lat)
    index = {e: k for k, e in enumerate(boolean_algebra(len(at)).elements)}
    mapping = {}
    for k, e in enumerate(sub.elements):
        i = lat.index(e)
        mapping[k] = index[frozenset(a for a, x in enumerate(at) if lat.leq[x, i])]
    return mapping


def socle_checks(family: PathFamily, n: int) -> list[tuple[str, bool, str]]:
    """Witness-map checks of the socle's ideal, filter or interval."""
    lat = lattice(family, n)
    s = socle(lat)
    out = []
    k = n if family.kind == "schroder" else n - 1
    down = principal_ideal(lat, s)
    if len(atoms(lat)) == k:
        iso = verify_iso(_atoms_witness(lat, down), down, boolean_algebra(k))
        out.append((f"down-socle = B_{k}", iso.ok, iso.reason))
    else:
        out.append((f"down-socle = B_{k}", False, f"{len(atoms(lat))} atoms"))
    if family.kind == "schroder":
        s2 = lat.index("U" + "HH" * (n - 1) + "D")
        iv = interval(lat, s, s2)
        # x -> the positions t in 1..n-2 where x dips to height 1; no other witness can be a bijection
        Bn2 = boolean_algebra(n - 2)
        index = {e: t for t, e in enumerate(Bn2.elements)}
        mapping = {}
        for idx, e in enumerate(iv.elements):
            key = frozenset(t - 1 for t in range(1, n) if e.heights[2 * t] == 1)
            if key in index:
                mapping[idx] = index[key]
        iso = verify_iso(mapping, iv, Bn2)
        out.append((f"[s,s'] = B_{n - 2}", iso.ok, f"interval has {len(iv)} elements, B_{n - 2} has {len(Bn2)}"))
    else:
        size = n - 2 if family.kind == "motzkin" else n - 1
        up = principal_filter(lat, s)
        smaller = lattice(family, size)
        # strip the first and last step
        mapping = {t: smaller.index(e.steps[1:-1]) for t, e in enumerate(up.elements)}
        iso = verify_iso(mapping, up, smaller.poset)
        name = "M" if family.kind == "motzkin" else "D"
        out.append((f"up-socle = {name}_{size}", iso.ok, iso.reason))
    return out


def _json_roundtrip(lat: PathLattice) -> bool:
    back = lattice_from_json(lattice_to_json(lat))
    return verify_iso({i: i for i in range(len(lat))}, lat.poset, back.poset).ok


def suite_order() -> Iterator[Check]:
    sizes = {DYCK: 6, MOTZKIN: 7, SCHRODER: 4}

    def closure():
        for fam, top in sizes.items():
            for n in range(top + 1):
                ok, detail = _first(closure_violations(lattice(fam, n)))
                if not ok:
                    return ok, f"{fam} n={n}: {detail}"
        return True, "D≤6, M≤7, S≤4"

    yield _check("meet/join closure and universality", closure)

    def distributive():
        for fam, top in {DYCK: 5, MOTZKIN: 6, SCHRODER: 3}.items():
            for n in range(top + 1):
                ok, detail = _first(distributivity_violations(lattice(fam, n)))
                if not ok:
                    return ok, f"{fam} n={n}: {detail}"
        return True, "D≤5, M≤6, S≤3"

    yield _check("distributivity", distributive)

    def birkhoff():
        for fam, top in sizes.items():
            for n in range(top + 1):
                if not verify_birkhoff(lattice(fam, n)).ok:
                    return False, f"{fam} n={n}"
        return True, "D≤6, M≤7, S≤4"

    yield _check("birkhoff", birkhoff)

    def covers():
        for fam, top in {DYCK: 5, MOTZKIN: 6, SCHRODER: 3}.items():
            for n in range(top + 1):
                lat = lattice(fam, n)
                if sorted(transitive_reduction(lat.leq)) != lat.poset.covers:
                    return False, f"{fam} n={n}"
        return True, ""

    yield _check("covers = transitive reduction", covers)

    def atom_counts():
        for n in range(2, 8):
            lat = lattice(DYCK, n)
            if (len(atoms(lat)), len(coatoms(lat))) != (n - 1, 1):
                return False, f"dyck n={n}"
        for n in range(2, 9):
            lat = lattice(MOTZKIN, n)
            if (len(atoms(lat)), len(coatoms(lat))) != (n - 1, 1 if n % 2 == 0 else 2):
                return False, f"motzkin n={n}"
        for n in range(2, 6):
            lat = lattice(SCHRODER, n)
            if (len(atoms(lat)), len(coatoms(lat))) != (n, 1):
                return False, f"schroder n={n}: {len(atoms(lat))} atoms"
        return True, "D: n-1/1, M: n-1/1-or-2, S: n/1"

    yield _check("atoms and coatoms", atom_counts)

    for fam, lo, top in [(DYCK, 2, 6), (MOTZKIN, 2, 7), (SCHRODER, 2, 4)]:
        def socle_fn(fam=fam, lo=lo, top=top):
            fails = []
            for n in range(lo, top + 1):
                for name, ok, detail in socle_checks(fam, n):
                    if not ok:
                        fails.append(f"n={n} {name}: {detail}")
            return not fails, "; ".join(fails[:2]) if fails else f"n={lo}..{top}"

        yield _check(f"socle structure {fam}", socle_fn)

    def roundtrip():
        for fam, top in sizes.items():
            for n in range(top + 1):
                if not _json_roundtrip(lattice(fam, n)):
                    return False, f"{fam} n={n}"
        return True, ""

    yield _check("json round trip", roundtrip)


# ---------------------------------------------------------------------------
# spectrum


def suite_spectrum() -> Iterator[Check]:
    def labels(fam, lo, top, make):
        def fn():
            for n in range(lo, top + 1):
                iso = sp.verify_spectrum_labels(lattice(fam, n), make(n))
                if not iso.ok:
                    return False, f"n={n}: {iso.reason}"
            return True, f"n≤{top}"
        return fn

    yield _check("dyck spectrum = intervals", labels(DYCK, 2, 8, sp.dyck_spectrum_labels))
    yield _check("motzkin spectrum = even intervals", labels(MOTZKIN, 2, 8, sp.motzkin_spectrum_labels))
    yield _check("schroder spectrum = oriented intervals", labels(SCHRODER, 1, 5, sp.schroder_spectrum_labels))

    def sizes():
        for n in range(2, 9):
            if len(lattice(DYCK, n).join_irreducibles()) != comb(n, 2):
                return False, f"dyck n={n}"
        got = (len(spectrum_poset(lattice(DYCK, 4))), len(spectrum_poset(lattice(MOTZKIN, 4))),
               len(spectrum_poset(lattice(MOTZKIN, 5))), len(spectrum_poset(lattice(SCHRODER, 3))))
        return got == (6, 4, 6, 9), f"Spec D4, M4, M5, S3 = {got}"

    yield _check("spectrum sizes", sizes)

    def oriented():
        for n in range(1, 6):
            P, to_label = sp.oriented_interval_poset(n)
            S = sp.schroder_spectrum_labels(n)
            spec = spectrum_poset(lattice(SCHRODER, n))
            by_steps = {p.steps: k for k, p in enumerate(spec.elements)}
            mapping = {k: by_steps[S[lab].steps] for k, lab in to_label.items()}
            iso = verify_iso(mapping, P, spec)
            if not iso.ok:
                return False, f"n={n}: {iso.reason}"
            lex = sp.verify_lex_construction(n, spec)
            if not lex.ok:
                return False, f"lex n={n}: {lex.reason}"
        return True, "n≤5"

    yield _check("oriented intervals and lex product", oriented)

    cases = [(1, 1, 6), (3, 2, 3), (5, 2, 2), (5, 3, 2)]

    def partitions():
        if str(sp.lambda_partition(3, 2, 3)) != "7,6,4,3,1":
            return False, "fig 2 instance"
        for a, b, top in cases:
            for n in range(1, top + 1):
                lat = lattice(PathFamily.dycklike(a, b), n)
                geo = sp.path_to_partition(lat.paths[lat.bottom])
                lam = sp.lambda_partition(a, b, n)
                if geo != lam:
                    return False, f"({a},{b},{n}): {geo} vs {lam}"
                one = sp.lambda_partition(a, b, 1).weight
                if lam.weight != a * b * n * (n - 1) // 2 + n * one:
                    return False, f"weight ({a},{b},{n})"
        return True, "D n≤6, (3,2) n≤3, (5,2) and (5,3) n≤2"

    yield _check("lambda partition = geometric partition", partitions)

    def young():
        for a, b, top in [(1, 1, 6), (3, 2, 2)]:
            for n in range(1, top + 1):
                iso = sp.verify_young_duality(a, b, n, lattice(PathFamily.dycklike(a, b), n))
                if not iso.ok:
                    return False, f"({a},{b},{n}): {iso.reason}"
        return True, "D n≤6, D^(3,2) n≤2"

    yield _check("young duality", young)

    def points():
        for a, b, top in [(1, 1, 5), (3, 2, 2), (5, 3, 2), (5, 2, 2)]:
            for n in range(1, top + 1):
                pp = sp.point_poset(a, b, n, lattice(PathFamily.dycklike(a, b), n))
                if not pp.iso.ok:
                    return False, f"({a},{b},{n}): {pp.iso.reason}"
                if not pp.region_ok:
                    return False, f"({a},{b},{n}): point outside region"
        return True, ""

    yield _check("point poset representation", points)

    def pyramids():
        for fam, top in [(DYCK, 7), (PathFamily.dycklike(3, 2), 3), (PathFamily.dycklike(5, 3), 2)]:
            for n in range(1, top + 1):
                lat = lattice(fam, n)
                for i, p in enumerate(lat.paths):
                    if len(sp.pyramids(p)) != len(lat.poset.lower_covers(i)):
                        return False, p.steps
        return True, "pyramid count = lower covers"

    yield _check("unique pyramid detector", pyramids)


# ---------------------------------------------------------------------------
# characteristic


def _all_elements(fam: PathFamily, top: int, lo: int = 0):
    for n in range(lo, top + 1):
        lat = lattice(fam, n)
        for i in range(len(lat)):
            yield lat, i


def elevated_blocks(path) -> int:
    """Pieces above height 1, split at the axis and at flats lying on y = 1."""
    s, h = path.steps, path.heights
    count, open_block = 0, False
    for k, c in enumerate(s):
        if h[k] == 0 or (c == "H" and h[k] == 1):
            count += open_block
            open_block = False
            if c != "U" or h[k] != 0:
                continue
        if c == "U" and h[k] == 1:
            open_block = True
    return count + open_block


def suite_characteristic() -> Iterator[Check]:
    def tunnel_oracle():
        for fam, top in [(DYCK, 8), (MOTZKIN, 10), (SCHRODER, 5)]:
            for n in range(top + 1):
                for p in lattice(fam, n).paths:
                    if ch.tunnels(p) != ch.tunnels_geometric(p):
                        return False, p.steps
                    for k in range(n + 1):
                        ups = sum(1 for t, s in enumerate(p.steps) if s == "U" and p.heights[t] == k)
                        if ups != ch.tunnel_count(p, k):
                            return False, f"{p.steps} k={k}"
        return True, "D≤8, M≤10, S≤5"

    yield _check("tunnel oracles", tunnel_oracle)

    def agree(fam, top, label):
        def fn():
            for n in range(top + 1):
                lat = lattice(fam, n)
                table = ch.chi_table(lat)
                for i, p in enumerate(lat.paths):
                    if table[i] != ch.chi_combinatorial(p):
                        return False, f"n={n} {p.steps}: chi {table[i]}, formula {ch.chi_combinatorial(p)}"
            return True, f"n≤{top}"
        return _check(label, fn)

    yield agree(DYCK, 8, "chardyck")
    yield agree(SCHRODER, 5, "charschroder")
    yield agree(MOTZKIN, 10, "charmotzkin closed form")

    def chik():
        for n in range(8):
            lat = lattice(DYCK, n)
            for k in range(1, n + 1):
                table = ch.valuation_table(ch.chi_k_spec(lat, k))
                for i, p in enumerate(lat.paths):
                    if table[i] != ch.tunnel_count(p, k):
                        return False, f"n={n} k={k} {p.steps}"
        return True, "n≤7, all k"

    yield _check("chik dyck", chik)

    def law():
        rng = np.random.default_rng(7)
        for fam, top in [(DYCK, 5), (MOTZKIN, 6), (SCHRODER, 3)]:
            for n in range(top + 1):
                lat = lattice(fam, n)
                specs = [ch.chi_spec(lat), ch.ValuationSpec.from_function(lat, lambda j: int(rng.integers(-3, 4)))]
                try:
                    specs.append(ch.chi_k_spec(lat, 2))
                except Exception:
                    pass
                for spec in specs:
                    bad = ch.valuation_law_violation(spec)
                    if bad:
                        return False, f"{fam} n={n} pair {bad}"
        return True, "D≤5, M≤6, S≤3"

    yield _check("valuation law", law)

    def oracle():
        for fam, top in [(DYCK, 5), (MOTZKIN, 6), (SCHRODER, 3)]:
            for n in range(top + 1):
                lat = lattice(fam, n)
                spec = ch.chi_spec(lat)
                table = ch.valuation_table(spec)
                # a second linear extension: by rank, ties broken the other way
                ji = lat.join_irreducibles()
                alt = sorted(range(len(ji)), key=lambda k: (lat.rank_of[ji[k]], -k))
                if (ch.valuation_table(spec, order=alt) != table).any():
                    return False, f"{fam} n={n}: depends on linear extension"
                for i in range(len(lat)):
                    if table[i] != ch.valuation_by_inclusion_exclusion(spec, i):
                        return False, f"{fam} n={n} {lat.paths[i].steps}"
        return True, "ideal recursion = inclusion-exclusion"

    yield _check("valuation oracle", oracle)

    def meetjoin():
        for n in range(9):
            lat = lattice(DYCK, n)
            bad = ch.special_meet_property(lat)
            if bad:
                return False, f"n={n} {bad}"
            ranks = ch.spectrum_ranks(lat)
            for j, r in ranks.items():
                if r != max(t.height for t in ch.tunnels(lat.paths[j])):
                    return False, f"n={n} {lat.paths[j].steps}"
        return True, "n≤8"

    yield _check("meetjoinirred", meetjoin)

    def special_schroder():
        for n in range(6):
            lat = lattice(SCHRODER, n)
            bad = ch.special_meet_property(lat, lambda m, lat=lat: ch.has_unique_peak(lat.paths[m]))
            if bad:
                return False, f"n={n} {lat.paths[bad[0]].steps} ^ {lat.paths[bad[1]].steps}"
        return True, "n≤5, incomparable pairs"

    yield _check("schroder special meets", special_schroder)

    def qji(fam, top, tunnel_level):
        def fn():
            for lat, i in _all_elements(fam, top):
                p = lat.paths[i]
                q = ch.is_quasi_join_irreducible(lat, i)
                table = ch.chi_table(lat)
                if q != (ch.tunnel_count(p, tunnel_level) == 1):
                    return False, f"{p.steps}: qji {q}"
                if q and table[i] != 1:
                    return False, f"{p.steps}: qji with chi {table[i]}"
                parts = ch.qji_decomposition(lat, i)
                if len(parts) != table[i]:
                    return False, f"{p.steps}: {len(parts)} parts, chi {table[i]}"
                if lat.join_all(parts) != i:
                    return False, f"{p.steps}: parts do not join to x"
                if any(lat.meet(a, b) != lat.bottom for a, b in combinations(parts, 2)):
                    return False, f"{p.steps}: parts meet above 0"
                if not all(ch.is_quasi_join_irreducible(lat, x) for x in parts):
                    return False, f"{p.steps}: part not qji"
            return True, f"n≤{top}"
        return fn

    yield _check("dyckqji and charqji", qji(DYCK, 7, 1))
    yield _check("schroder qji and charqji", qji(SCHRODER, 4, 0))

    def constancy():
        for fam, top in [(DYCK, 7), (MOTZKIN, 8), (SCHRODER, 4)]:
            for lat, i in _all_elements(fam, top):
                tops = ch.maximal_join_irreducibles(lat, i)
                # connected components of the "meets above 0" graph, independent of any ordering
                comp = list(range(len(tops)))

                def find(u):
                    while comp[u] != u:
                        u = comp[u]
                    return u

                for u, v in combinations(range(len(tops)), 2):
                    if lat.meet(tops[u], tops[v]) != lat.bottom:
                        comp[find(u)] = find(v)
                if len({find(u) for u in range(len(tops))}) != len(ch.qji_decomposition(lat, i)):
                    return False, lat.paths[i].steps
        return True, "abscissa split = component count"

    yield _check("decomposition size constancy", constancy)

    def truncpyr():
        seen = 0
        for lat, i in _all_elements(MOTZKIN, 10):
            cls = ch.truncated_pyramid_class(lat.paths[i])
            if cls is None:
                continue
            seen += 1
            _, m, h = cls
            if ch.chi_table(lat)[i] != ch.truncated_pyramid_chi(m, h):
                return False, lat.paths[i].steps
        return True, f"{seen} members, n≤10"

    yield _check("truncpyr", truncpyr)

    def top_chi():
        got = [ch.streaming_top_chi(MOTZKIN, n) for n in range(1, 14)]
        want = [ch.motzkin_top_chi(n) for n in range(1, 14)]
        return got == want, f"n=1..13: {got}"

    yield _check("motzkin top chi", top_chi)

    def motzchar():
        for lat, i in _all_elements(MOTZKIN, 10):
            st = ch.step_stats(lat.paths[i])
            if ch.chi_table(lat)[i] != ch.norm(lat, i) + st.o_prime - st.e:
                return False, lat.paths[i].steps
        return True, "n≤10"

    yield _check("motzchar", motzchar)

    def motzkin_decomp():
        for lat, i in _all_elements(MOTZKIN, 8):
            if not ch.is_quasi_join_irreducible(lat, i):
                continue
            parts = ch.motzkin_decomposition(lat, i)
            ji = set(lat.join_irreducibles())
            if lat.join_all(parts) != i:
                return False, lat.paths[i].steps
            for s in parts:
                if s not in ji and ch.truncated_pyramid_class(lat.paths[s]) is None:
                    return False, f"{lat.paths[i].steps}: part {lat.paths[s].steps}"
            for a, b in zip(parts, parts[1:]):
                if lat.meet(a, b) not in ji:
                    return False, f"{lat.paths[i].steps}: adjacent meet"
        return True, "n≤8"

    def corrected():
        for lat, i in _all_elements(MOTZKIN, 10):
            p = lat.paths[i]
            st = ch.step_stats(p)
            if ch.chi_table(lat)[i] != st.o - st.e + elevated_blocks(p) + st.f1 + st.p1 - st.r1:
                return False, p.steps
        return True, "n≤10"

    yield _check("charmotzkin with b1 in place of t1 (diagnostic)", corrected)
    yield _check("motzkin decomposition", motzkin_decomp)

    def labelling():
        for n in range(7):
            lat = lattice(DYCK, n)
            spec = spectrum_poset(lat)
            ji = lat.join_irreducibles()
            for ideal in ideals_lattice(spec).elements:
                members = sorted(ideal.members)
                tops = [ji[k] for k in members
                        if not any(spec.leq[k, m] and k != m for m in members)]
                if not tops:
                    continue
                labels = [ch.pyramid_label(lat, j) for j in tops]
                if len(set(labels)) != len(labels):
                    return False, f"n={n}: repeated label"
                ordered = [j for _, j in sorted(zip(labels, tops))]
                if lat.meet_all(ordered) != lat.meet(ordered[0], ordered[-1]):
                    return False, f"n={n}: antichain meet"
        return True, "n≤6"

    yield _check("dyck-like labelling", labelling)


# ---------------------------------------------------------------------------
# rankpoly


def suite_rankpoly() -> Iterator[Check]:
    def agree():
        for fam, top in [(DYCK, 8), (MOTZKIN, 10), (SCHRODER, 6)]:
            for n in range(top + 1):
                if rp.rank_polynomial_enumerated(lattice(fam, n)) != rp.family_poly(fam, n):
                    return False, f"{fam} n={n}"
        return True, "D≤8, M≤10, S≤6"

    yield _check("recurrence = enumerated rank profile", agree)

    def sums_degrees():
        for fam, seq in [(DYCK, CATALAN), (MOTZKIN, MOTZKIN_NUMBERS), (SCHRODER, SCHRODER_NUMBERS)]:
            for n, want in enumerate(seq):
                p = rp.family_poly(fam, n)
                if p(1) != want or p.degree != rp.family_height(fam, n):
                    return False, f"{fam} n={n}"
        return True, ""

    yield _check("coefficient sums and degrees", sums_degrees)

    def catalan():
        bad = [n for n in range(11) if rp.q_catalan(n) != rp.q_catalan_by_area(n)]
        return not bad, "n≤10" + (f", bad {bad}" if bad else "")

    yield _check("q-catalan reversal", catalan)

    for fam, order in [(DYCK, 8), (MOTZKIN, 8), (SCHRODER, 6)]:
        yield _check(f"series-identity {fam} order {order}",
                     lambda fam=fam, order=order: rp.verify_series_identity(fam, order))

    for fam, top in [(DYCK, 12), (MOTZKIN, 14), (SCHRODER, 10)]:
        def scan(fam=fam, top=top):
            bad = [n for n in range(top + 1) if not rp.is_unimodal(rp.family_poly(fam, n)).ok]
            return not bad, f"n≤{top}" + (f", not unimodal at {bad}" if bad else "")

        yield _check(f"unimodal {fam}", scan)


SUITES: dict[str, Callable[[], Iterator[Check]]] = {
    "paths": suite_paths,
    "order": suite_order,
    "spectrum": suite_spectrum,
    "characteristic": suite_characteristic,
    "rankpoly": suite_rankpoly,
}


def run_suites(names: list[str]) -> list[tuple[str, list[Check]]]:
    if names == ["all"]:
        names = list(SUITES)
    out = []
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
        out.append((name, list(SUITES[name]())))
    return out
