import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DYCK, MOTZKIN, SCHRODER, lattice
from pathlat.errors import ClosureViolation, FamilyMismatch, NotComparable
from pathlat.order import (
    FinitePoset,
    antichain,
    atoms,
    boolean_algebra,
    chain,
    check_partial_order,
    coatoms,
    ideals_lattice,
    interval,
    path_join,
    path_leq,
    path_meet,
    principal_filter,
    principal_ideal,
    radical,
    socle,
    spectrum_poset,
    transitive_reduction,
    verify_birkhoff,
    verify_iso,
)
from pathlat.paths import validate
from pathlat.verify import socle_checks


def naive_covers(leq):
    """x < y with nothing strictly between, by direct search."""
    n = len(leq)
    out = []
    for x in range(n):
        for y in range(n):
            if x != y and leq[x, y] and not any(
                    z not in (x, y) and leq[x, z] and leq[z, y] for z in range(n)):
                out.append((x, y))
    return sorted(out)


def test_small_posets():
    B = boolean_algebra(3)
    assert len(B) == 8 and len(B.covers) == 12
    assert len(chain(4)) == 5 and len(chain(4).covers) == 4
    assert len(antichain(3).covers) == 0
    assert B.height() == 3


def test_check_partial_order_rejects_cycles():
    leq = np.array([[1, 1], [1, 1]], dtype=bool)
    with pytest.raises(ValueError):
        check_partial_order(leq)
    with pytest.raises(ValueError):
        FinitePoset(["a", "b"], leq)


@pytest.mark.parametrize("family,n", [(DYCK, 4), (DYCK, 5), (MOTZKIN, 5), (MOTZKIN, 6), (SCHRODER, 3)])
def test_rank_covers_equal_transitive_reduction(family, n):
    lat = lattice(family, n)
    assert lat.poset.covers == naive_covers(lat.leq)
    assert sorted(transitive_reduction(lat.leq)) == lat.poset.covers
    # graded: every cover raises the rank by one
    assert all(lat.rank_of[hi] == lat.rank_of[lo] + 1 for lo, hi in lat.poset.covers)


def test_pointwise_meet_example():
    p, q = validate(DYCK, "UUDDUD"), validate(DYCK, "UDUUDD")
    assert path_meet(p, q).steps == "UDUDUD"
    assert path_join(p, q).steps == "UUDUDD"
    assert not path_leq(p, q) and not path_leq(q, p)
    with pytest.raises(FamilyMismatch):
        path_meet(p, validate(MOTZKIN, "UHHHHD"))


def test_closure_violation_when_profile_is_not_a_path():
    lat = lattice(DYCK, 3)
    with pytest.raises(ClosureViolation):
        lat._combine(lat.top, lat.top, np.add)


@pytest.mark.parametrize("family,n", [(DYCK, 4), (MOTZKIN, 5), (SCHRODER, 3)])
def test_distributive(family, n):
    lat = lattice(family, n)
    N = len(lat)
    for x in range(N):
        for y in range(N):
            for z in range(N):
                assert lat.meet(x, lat.join(y, z)) == lat.join(lat.meet(x, y), lat.meet(x, z))


def brute_force_ideal_count(P):
    n = len(P)
    count = 0
    for mask in range(1 << n):
        if all(not (mask >> y) & 1 or all((mask >> x) & 1 for x in P.below(y)) for y in range(n)):
            count += 1
    return count


@pytest.mark.parametrize("family,n", [(DYCK, 5), (MOTZKIN, 6), (SCHRODER, 3)])
def test_birkhoff_against_subset_enumeration(family, n):
    lat = lattice(family, n)
    spec = spectrum_poset(lat)
    assert brute_force_ideal_count(spec) == len(lat) == len(ideals_lattice(spec))
    assert verify_birkhoff(lat).ok


def test_atoms_coatoms_socle_examples():
    d4 = lattice(DYCK, 4)
    assert d4.paths[socle(d4)].steps == "U" + "UD" * 3 + "D"
    assert len(atoms(d4)) == 3 and [d4.paths[c].steps for c in coatoms(d4)] == ["UUUDUDDD"]
    m5 = lattice(MOTZKIN, 5)
    assert m5.paths[socle(m5)].steps == "UHHHD"
    assert len(coatoms(m5)) == 2
    m6 = lattice(MOTZKIN, 6)
    assert len(coatoms(m6)) == 1
    s3 = lattice(SCHRODER, 3)
    assert [s3.paths[c].steps for c in coatoms(s3)] == ["UUHHDD"]
    # three atoms, one for each (HH)^k UD (HH)^(2-k)
    assert sorted(s3.paths[a].steps for a in atoms(s3)) == ["HHHHUD", "HHUDHH", "UDHHHH"]


def test_degenerate_sizes():
    d0 = lattice(DYCK, 0)
    assert len(d0) == 1 and socle(d0) == radical(d0) == d0.bottom == d0.top
    d1 = lattice(DYCK, 1)
    assert len(d1) == 1


def test_interval_and_principal_sets():
    d4 = lattice(DYCK, 4)
    assert len(principal_ideal(d4, d4.top)) == 14
    assert len(principal_filter(d4, d4.bottom)) == 14
    a, b = atoms(d4)[:2]
    with pytest.raises(NotComparable):
        interval(d4, a, b)


@pytest.mark.parametrize("family,n", [(DYCK, 4), (DYCK, 6), (MOTZKIN, 5), (MOTZKIN, 7)])
def test_socle_witnesses(family, n):
    assert all(ok for _, ok, _ in socle_checks(family, n))


def test_verify_iso_reports_failures():
    B = boolean_algebra(2)
    C = chain(3)
    assert not verify_iso({i: i for i in range(4)}, B, C).ok
    assert verify_iso({i: i for i in range(4)}, B, B).ok
    assert "bijection" in verify_iso(list(range(4)), B, chain(0)).reason


@given(st.data())
@settings(max_examples=150, deadline=None)
def test_lattice_laws_on_random_triples(data):
    lat = lattice(DYCK, 6)
    x, y, z = (data.draw(st.integers(0, len(lat) - 1)) for _ in range(3))
    m = lat.meet(x, y)
    assert lat.leq[m, x] and lat.leq[m, y]
    assert lat.join(x, m) == x
    assert lat.meet(x, lat.join(x, y)) == x
    assert lat.meet(lat.meet(x, y), z) == lat.meet(x, lat.meet(y, z))
