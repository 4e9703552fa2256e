"""Text serialisations: DOT, JSON, CSV and the Whitney triangle."""
from __future__ import annotations

import csv
import io
import json
from typing import Callable, Sequence

from .characteristic import Tunnel
from .errors import PathLatError
from .order import FinitePoset, PathLattice
from .paths import PathFamily, validate
from .rankpoly import IntPolynomial, is_unimodal


def lattice_to_json(lat: PathLattice) -> str:
    doc = {
        "family": lat.family.name,
        "n": lat.n,
        "elements": [{"id": i, "path": p.steps, "rank": lat.rank_of[i]} for i, p in enumerate(lat.paths)],
        "covers": [[lo, hi] for lo, hi in lat.poset.covers],
    }
    return json.dumps(doc, indent=1)


def lattice_from_json(text: str) -> PathLattice:
    """Rebuild a lattice from :func:`lattice_to_json` output, keeping element ids.

    Paths are revalidated and the stored ranks and covers must agree with the
    rebuilt order.
    """
    doc = json.loads(text)
    family = PathFamily.parse(doc["family"])
    elements = sorted(doc["elements"], key=lambda e: e["id"])
    if [e["id"] for e in elements] != list(range(len(elements))):
        raise PathLatError("element ids must be 0..N-1")
    lat = PathLattice(family, int(doc["n"]), [validate(family, e["path"]) for e in elements])
    if [e["rank"] for e in elements] != list(lat.rank_of):
        raise PathLatError("stored ranks disagree with the paths")
    if sorted(tuple(c) for c in doc["covers"]) != lat.poset.covers:
        raise PathLatError("stored covers disagree with the paths")
    return lat


def _dot_id(i: int) -> str:
    return f"n{i}"


def poset_to_dot(P: FinitePoset, label: Callable[[int], str], name: str = "poset") -> str:
    """Hasse diagram with edges pointing up (``rankdir=BT``)."""
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i in range(len(P)):
        lines.append(f"  {_dot_id(i)} [label={json.dumps(label(i))}];")
    for lo, hi in P.covers:
        lines.append(f"  {_dot_id(lo)} -> {_dot_id(hi)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_to_dot(lat: PathLattice, chi: Sequence[int] | None = None) -> str:
    def label(i: int) -> str:
        # json.dumps writes the newline as \n, which DOT reads as a line break
        text = f"{lat.paths[i].steps or '(empty)'}\nrank {lat.rank_of[i]}"
        if chi is not None:
            text += f"\nchi {chi[i]}"
        return text

    return poset_to_dot(lat.poset, label, f"{lat.family.name} n={lat.n}")


def spectrum_to_json(P: FinitePoset, labels: Sequence[str]) -> str:
    doc = {
        "elements": [{"id": i, "label": labels[i]} for i in range(len(P))],
        "covers": [[lo, hi] for lo, hi in P.covers],
    }
    return json.dumps(doc, indent=1)


def chi_csv(rows: Sequence[dict]) -> str:
    """Columns id, path, rank, chi, t0..tmax, with tmax the largest over all rows."""
    width = max((len(r["tunnels"]) for r in rows), default=0)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "path", "rank", "chi"] + [f"t{k}" for k in range(width)])
    for r in rows:
        prof = list(r["tunnels"]) + [0] * (width - len(r["tunnels"]))
        w.writerow([r["id"], r["path"], r["rank"], r["chi"]] + prof)
    return buf.getvalue()


def tunnels_json(tunnels: Sequence[Tunnel]) -> str:
    return json.dumps([list(t.as_triple()) for t in tunnels])


def whitney_csv(rows: Sequence[tuple[int, IntPolynomial]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "W_k"])
    for n, poly in rows:
        for k in range(len(poly)):
            w.writerow([n, k, poly[k]])
    return buf.getvalue()


def whitney_triangle(rows: Sequence[tuple[int, IntPolynomial]]) -> str:
    """Right-aligned rows of Whitney numbers with the row sum and a unimodality verdict."""
    cells = [[str(c) for c in poly.coeffs] for _, poly in rows]
    pad = max((len(c) for row in cells for c in row), default=1)
    tag = len(str(max((n for n, _ in rows), default=0)))
    out = []
    for (n, poly), row in zip(rows, cells):
        body = " ".join(c.rjust(pad) for c in row)
        verdict = "unimodal" if is_unimodal(poly).ok else f"not unimodal at {is_unimodal(poly).index}"
        out.append(f"n={str(n).rjust(tag)}: {body}  | sum {poly(1)} | {verdict}")
    return "\n".join(out) + "\n"
