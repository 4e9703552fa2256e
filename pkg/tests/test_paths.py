from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathlat.errors import BelowAxis, IllegalStep, NonzeroEndpoint, SizeLimitExceeded, UnpairedFlat
from pathlat.paths import (
    GUARD_ENV,
    PathFamily,
    area,
    count_paths,
    element_guard,
    ell,
    enumerate_paths,
    from_heights,
    maximum_path,
    minimum_path,
    rank,
    validate,
)

DYCK = PathFamily.dyck()
MOTZKIN = PathFamily.motzkin()
SCHRODER = PathFamily.schroder()

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
MOTZKIN_NUMBERS = [1, 1, 2, 4, 9, 21, 51, 127, 323]
SCHRODER_NUMBERS = [1, 2, 6, 22, 90, 394]


def brute_force_count(family, n):
    """Memoised recursion over (column, height), written independently of the library."""
    up, down = family.rise("U"), family.rise("D")
    flat = {"motzkin": 1, "schroder": 2}.get(family.kind)
    width = family.width(n)

    @lru_cache(maxsize=None)
    def go(col, h):
        if h < 0 or col > width:
            return 0
        if col == width:
            return 1 if h == 0 else 0
        total = go(col + 1, h + up) + go(col + 1, h + down)
        if flat:
            total += go(col + flat, h)
        return total

    return go(0, 0)


def test_counts_match_known_sequences():
    assert [count_paths(DYCK, n) for n in range(9)] == CATALAN
    assert [count_paths(MOTZKIN, n) for n in range(9)] == MOTZKIN_NUMBERS
    assert [count_paths(SCHRODER, n) for n in range(6)] == SCHRODER_NUMBERS


@pytest.mark.parametrize("family,top", [
    (DYCK, 7), (MOTZKIN, 8), (SCHRODER, 5),
    (PathFamily.dycklike(3, 2), 3), (PathFamily.dycklike(5, 3), 2), (PathFamily.dycklike(2, 1), 4),
])
def test_enumeration_agrees_with_brute_force(family, top):
    for n in range(top + 1):
        paths = enumerate_paths(family, n)
        assert len(paths) == brute_force_count(family, n)
        assert len({p.steps for p in paths}) == len(paths)


def test_ell():
    assert ell(1, 1) == 2
    assert ell(3, 2) == 5
    assert ell(5, 3) == 8
    assert ell(4, 2) == 3


def test_validate_examples():
    assert validate(DYCK, "UUDD").heights == (0, 1, 2, 1, 0)
    assert validate(PathFamily.dycklike(3, 2), "UDUDD").heights == (0, 3, 1, 4, 2, 0)
    assert validate(SCHRODER, "UHHD").heights == (0, 1, 1, 1, 0)


@pytest.mark.parametrize("family,word,error", [
    (DYCK, "UUD", NonzeroEndpoint),
    (DYCK, "DU", BelowAxis),
    (DYCK, "UHD", IllegalStep),
    (MOTZKIN, "UXD", IllegalStep),
    (SCHRODER, "UHD", UnpairedFlat),
    (SCHRODER, "HHH", UnpairedFlat),
])
def test_validate_rejects(family, word, error):
    with pytest.raises(error):
        validate(family, word)


def test_schroder_flat_runs_need_only_even_length():
    # a (2,0) step may start at an odd column
    assert validate(SCHRODER, "UHHD").steps == "UHHD"
    assert validate(SCHRODER, "UDHHHH").steps == "UDHHHH"


def test_minimum_and_maximum_examples():
    assert minimum_path(PathFamily.dycklike(5, 2), 1).steps == "UDDUDDD"
    assert minimum_path(MOTZKIN, 4).steps == "HHHH"
    assert minimum_path(SCHRODER, 2).steps == "HHHH"
    assert maximum_path(PathFamily.dycklike(3, 2), 1).steps == "UUDDD"
    assert maximum_path(MOTZKIN, 5).steps == "UUHDD"
    assert maximum_path(SCHRODER, 3).steps == "UUUDDD"


def test_swapped_dycklike_is_canonicalised():
    assert PathFamily.dycklike(2, 3) == PathFamily.dycklike(3, 2)
    assert PathFamily.dycklike(2, 3).swapped


def test_parse_family():
    assert PathFamily.parse("dyck") == DYCK
    assert PathFamily.parse("dycklike:3,2") == PathFamily.dycklike(3, 2)
    assert PathFamily.parse("schröder") == SCHRODER
    with pytest.raises(ValueError):
        PathFamily.parse("tamari")
    with pytest.raises(ValueError):
        PathFamily.parse("dycklike:3")


def test_area_and_rank_examples():
    assert area(validate(DYCK, "UDUD")) == 2
    assert area(validate(DYCK, "UUDD")) == 4
    assert area(validate(MOTZKIN, "HHHH")) == 0
    assert rank(validate(DYCK, "UUDD")) == 1
    assert rank(validate(MOTZKIN, "UUHDD")) == 6
    assert rank(validate(SCHRODER, "UUUDDD")) == 9
    assert isinstance(area(validate(SCHRODER, "UHHD")), Fraction)


@pytest.mark.parametrize("family,top", [(DYCK, 6), (MOTZKIN, 7), (SCHRODER, 4), (PathFamily.dycklike(3, 2), 3)])
def test_every_path_between_min_and_max(family, top):
    for n in range(top + 1):
        lo, hi = minimum_path(family, n).heights, maximum_path(family, n).heights
        for p in enumerate_paths(family, n):
            assert all(x <= y <= z for x, y, z in zip(lo, p.heights, hi))


def test_dycklike_heights_are_congruent():
    # an ordinate at column k is congruent to -k*b modulo a+b
    for a, b, n in [(3, 2, 3), (5, 2, 2), (4, 2, 3)]:
        fam = PathFamily.dycklike(a, b)
        for p in enumerate_paths(fam, n):
            assert all((h + k * fam.b) % (fam.a + fam.b) == 0 for k, h in enumerate(p.heights))


def test_guard(monkeypatch):
    with pytest.raises(SizeLimitExceeded):
        enumerate_paths(DYCK, 5, guard=10)
    monkeypatch.setenv(GUARD_ENV, "7")
    assert element_guard() == 7
    with pytest.raises(SizeLimitExceeded):
        enumerate_paths(DYCK, 4)
    monkeypatch.delenv(GUARD_ENV)
    assert element_guard() == 20000


@st.composite
def dyck_words(draw, max_n=8):
    """Random Dyck words built by a ballot walk."""
    n = draw(st.integers(0, max_n))
    word, h, ups = [], 0, 0
    while len(word) < 2 * n:
        can_up = ups < n
        can_down = h > 0
        if can_up and (not can_down or draw(st.booleans())):
            word.append("U")
            h += 1
            ups += 1
        else:
            word.append("D")
            h -= 1
    return "".join(word)


@given(dyck_words())
@settings(max_examples=200, deadline=None)
def test_heights_round_trip(word):
    p = validate(DYCK, word)
    assert from_heights(DYCK, p.heights) == p
    assert p.size == len(word) // 2
    assert rank(p) >= 0


@given(st.text(alphabet="UHD", max_size=10))
@settings(max_examples=300, deadline=None)
def test_validate_accepts_exactly_the_motzkin_words(word):
    h, ok = 0, True
    for s in word:
        h += {"U": 1, "H": 0, "D": -1}[s]
        ok = ok and h >= 0
    ok = ok and h == 0
    try:
        validate(MOTZKIN, word)
        accepted = True
    except ValueError:
        accepted = False
    assert accepted == ok
