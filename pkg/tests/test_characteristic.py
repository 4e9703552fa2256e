from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from conftest import DYCK, MOTZKIN, SCHRODER, lattice
from figures import FIGURES, figure_graph, lattice_graph, same_node
from pathlat import characteristic as ch
from pathlat.errors import NoClosedForm, NotQuasiJoinIrreducible, PathLatError, SpectrumNotRanked
from pathlat.paths import PathFamily, validate
from test_paths import dyck_words

FIG4 = "UUUDUUDDDUDDUUDUDD"


def ups_from(path, k):
    """t_k oracle: every k-tunnel starts with an up step leaving height k."""
    return sum(1 for t, s in enumerate(path.steps) if s == "U" and path.heights[t] == k)


@pytest.mark.parametrize("name", sorted(FIGURES))
def test_figures_node_by_node(name):
    fig = FIGURES[name]
    lat = lattice(PathFamily.parse(fig["family"]), fig["n"])
    G = lattice_graph(lat, ch.chi_table(lat))
    assert nx.is_isomorphic(G, figure_graph(name), node_match=same_node)


def test_figure_match_is_sensitive_to_chi():
    lat = lattice(DYCK, 4)
    chi = ch.chi_table(lat)
    chi[lat.top] += 1
    assert not nx.is_isomorphic(lattice_graph(lat, chi), figure_graph("D4"), node_match=same_node)


def test_tunnels_of_the_nine_tunnel_path():
    p = validate(DYCK, FIG4)
    assert ch.tunnel_profile(p) == [2, 4, 2, 1]
    assert ch.tunnel_count(p, 3) == 1
    assert ch.chi_combinatorial(p) == 4


def test_tunnel_examples():
    assert ch.tunnel_profile(validate(DYCK, "UD" * 4)) == [4]
    assert ch.tunnel_profile(validate(MOTZKIN, "UHDHH")) == [1]
    assert ch.tunnels_geometric(validate(MOTZKIN, "UHDHH")) == ch.tunnels(validate(MOTZKIN, "UHDHH"))
    assert ch.tunnel_count(validate(DYCK, "UUDUDD"), 1) == 2
    assert ch.tunnel_count(validate(DYCK, "UUUDDD"), 2) == 1
    assert [t.as_triple() for t in ch.tunnels(validate(DYCK, "UUDD"))] == [(0, 0, 4), (1, 1, 3)]
    with pytest.raises(NoClosedForm):
        ch.tunnels(validate(PathFamily.dycklike(3, 2), "UDUDD"))


@given(dyck_words(max_n=9))
@settings(max_examples=200, deadline=None)
def test_tunnel_matching_equals_geometry(word):
    p = validate(DYCK, word)
    assert ch.tunnels(p) == ch.tunnels_geometric(p)
    assert sum(ch.tunnel_profile(p)) == len(word) // 2


@pytest.mark.parametrize("family,top", [(MOTZKIN, 8), (SCHRODER, 4)])
def test_tunnel_oracles_with_flats(family, top):
    for n in range(top + 1):
        for p in lattice(family, n).paths:
            assert ch.tunnels(p) == ch.tunnels_geometric(p)
            assert all(ch.tunnel_count(p, k) == ups_from(p, k) for k in range(n + 1))


@pytest.mark.parametrize("word,expected", [
    ("UUHDD", dict(o=0, e=1, p1=0, f1=0, r1=0)),
    ("UHDHH", dict(o=1, e=0, p1=0, f1=1, r1=0)),
    ("UUDHUDD", dict(o=1, e=0, p1=0, f1=0, r1=1)),
])
def test_step_stats_examples(word, expected):
    st_ = ch.step_stats(validate(MOTZKIN, word))
    assert {k: getattr(st_, k) for k in expected} == expected


def test_schroder_flats_count_once_per_double_step():
    assert ch.step_stats(validate(SCHRODER, "UHHD")).o == 1
    assert ch.step_stats(validate(SCHRODER, "UUHHHHDD")).e == 2


def test_chi_examples():
    d4 = lattice(DYCK, 4)
    table = ch.chi_table(d4)
    assert table[d4.bottom] == 0
    assert all(table[j] == 1 for j in d4.join_irreducibles())
    assert ch.chi(d4, "UUDUDUDD") == 3
    assert table[d4.top] == 1
    m5 = lattice(MOTZKIN, 5)
    assert ch.chi(m5, m5.top) == 0
    s2 = lattice(SCHRODER, 2)
    assert ch.chi(s2, "UDUD") == 2
    assert ch.chi(s2, "UHHD") == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_chardyck(n):
    lat = lattice(DYCK, n)
    table = ch.chi_table(lat)
    assert all(table[i] == ups_from(p, 1) for i, p in enumerate(lat.paths))


@pytest.mark.parametrize("n", range(1, 6))
def test_chi_schroder_counts_zero_tunnels(n):
    lat = lattice(SCHRODER, n)
    table = ch.chi_table(lat)
    assert all(table[i] == ups_from(p, 0) for i, p in enumerate(lat.paths))


def test_chi_k_examples():
    d4 = lattice(DYCK, 4)
    assert ch.chi_k(d4, d4.top, 3) == 1
    assert all(ch.chi_k(d4, x, 1) == ch.chi(d4, x) for x in range(len(d4)))


@pytest.mark.parametrize("n", range(2, 8))
def test_chi_k_counts_k_tunnels(n):
    lat = lattice(DYCK, n)
    for k in range(1, n + 1):
        table = ch.valuation_table(ch.chi_k_spec(lat, k))
        assert all(table[i] == ups_from(p, k) for i, p in enumerate(lat.paths))


@pytest.mark.parametrize("family,n", [(DYCK, 5), (MOTZKIN, 6), (SCHRODER, 3), (PathFamily.dycklike(3, 2), 2)])
def test_valuation_law_and_oracle(family, n):
    lat = lattice(family, n)
    rng = np.random.default_rng(n)
    spec = ch.ValuationSpec.from_function(lat, lambda j: int(rng.integers(-5, 6)))
    nu = ch.valuation_table(spec)
    assert nu[lat.bottom] == 0
    for x, y in combinations(range(len(lat)), 2):
        assert nu[lat.join(x, y)] + nu[lat.meet(x, y)] == nu[x] + nu[y]
    for x in range(len(lat)):
        assert nu[x] == ch.valuation_by_inclusion_exclusion(spec, x)


def test_valuation_spec_must_cover_exactly_the_join_irreducibles():
    lat = lattice(DYCK, 3)
    with pytest.raises(PathLatError):
        ch.ValuationSpec(lat, {lat.bottom: 1})


def test_valuation_does_not_depend_on_the_linear_extension():
    lat = lattice(MOTZKIN, 6)
    spec = ch.chi_spec(lat)
    ji = lat.join_irreducibles()
    by_rank = sorted(range(len(ji)), key=lambda k: (lat.rank_of[ji[k]], -k))
    assert (ch.valuation_table(spec, by_rank) == ch.valuation_table(spec)).all()


@pytest.mark.parametrize("n", range(2, 9))
def test_meets_of_dyck_join_irreducibles(n):
    lat = lattice(DYCK, n)
    assert ch.special_meet_property(lat) is None
    for j, r in ch.spectrum_ranks(lat).items():
        assert r == max(t.height for t in ch.tunnels(lat.paths[j]))


def test_schroder_special_meets():
    for n in range(1, 6):
        lat = lattice(SCHRODER, n)
        assert ch.special_meet_property(lat, lambda m: ch.has_unique_peak(lat.paths[m])) is None


def test_qji_examples():
    d3, d4, d2 = lattice(DYCK, 3), lattice(DYCK, 4), lattice(DYCK, 2)
    assert not ch.is_quasi_join_irreducible(d3, "UUDUDD")
    assert ch.is_quasi_join_irreducible(d4, "UUUDDDUD")
    assert not ch.is_quasi_join_irreducible(d2, "UDUD")
    assert len(ch.qji_decomposition(d3, "UUDUDD")) == 2
    assert ch.qji_decomposition(d3, d3.bottom) == []


def test_qji_decomposition_of_the_nine_tunnel_path():
    lat = lattice(DYCK, 9)
    parts = ch.qji_decomposition(lat, FIG4)
    assert len(parts) == 4 == ch.chi(lat, FIG4)
    assert lat.join_all(parts) == lat.index(FIG4)


@pytest.mark.parametrize("family,top,level", [(DYCK, 7, 1), (SCHRODER, 4, 0)])
def test_qji_characterisation(family, top, level):
    for n in range(1, top + 1):
        lat = lattice(family, n)
        table = ch.chi_table(lat)
        for i, p in enumerate(lat.paths):
            q = ch.is_quasi_join_irreducible(lat, i)
            assert q == (ups_from(p, level) == 1)
            if q:
                assert table[i] == 1
            parts = ch.qji_decomposition(lat, i)
            assert len(parts) == table[i]
            assert lat.join_all(parts) == i
            assert all(lat.meet(a, b) == lat.bottom for a, b in combinations(parts, 2))


@pytest.mark.parametrize("family,n", [(DYCK, 6), (MOTZKIN, 7), (SCHRODER, 4)])
def test_decomposition_size_under_shuffled_order(family, n):
    lat = lattice(family, n)
    rng = np.random.default_rng(0)
    for i in range(len(lat)):
        tops = ch.maximal_join_irreducibles(lat, i)
        # connected components of the "meet above 0" graph, found from a shuffled start
        order = list(rng.permutation(len(tops)))
        G = nx.Graph()
        G.add_nodes_from(order)
        G.add_edges_from((u, v) for u, v in combinations(order, 2)
                         if lat.meet(tops[u], tops[v]) != lat.bottom)
        assert nx.number_connected_components(G) == len(ch.qji_decomposition(lat, i))


def test_pyramid_labels_are_distinct_on_antichains():
    from pathlat.order import ideals_lattice, spectrum_poset

    for n in range(2, 7):
        lat = lattice(DYCK, n)
        spec = spectrum_poset(lat)
        ji = lat.join_irreducibles()
        for ideal in ideals_lattice(spec).elements:
            m = sorted(ideal.members)
            tops = [ji[k] for k in m if not any(spec.lt(k, q) for q in m)]
            if len(tops) < 2:
                continue
            labels = [ch.pyramid_label(lat, j) for j in tops]
            assert len(set(labels)) == len(labels)
            ordered = [j for _, j in sorted(zip(labels, tops))]
            assert lat.meet_all(ordered) == lat.meet(ordered[0], ordered[-1])


def test_truncated_pyramid_class():
    assert ch.truncated_pyramid_class(validate(MOTZKIN, "HHUUUHHHHHDDDHHH")) == (16, 5, 3)
    assert ch.truncated_pyramid_class(validate(MOTZKIN, "UHDHH")) == (5, 1, 1)
    assert ch.truncated_pyramid_class(validate(MOTZKIN, "HHHH")) is None
    assert ch.truncated_pyramid_class(validate(MOTZKIN, "UUDHD")) is None


def test_truncpyr_values():
    m5 = lattice(MOTZKIN, 5)
    assert ch.chi(m5, "UUHDD") == 0 == ch.truncated_pyramid_chi(1, 2)
    for n in range(3, 11):
        lat = lattice(MOTZKIN, n)
        table = ch.chi_table(lat)
        for i, p in enumerate(lat.paths):
            cls = ch.truncated_pyramid_class(p)
            if cls:
                assert table[i] == (-1) ** (cls[2] + 1) * cls[1] + 1


def test_streaming_matches_the_full_lattice():
    for fam, n in [(MOTZKIN, 7), (DYCK, 6), (SCHRODER, 4)]:
        lat = lattice(fam, n)
        assert ch.streaming_top_chi(fam, n) == ch.chi(lat, lat.top)
        for i, p in enumerate(lat.paths):
            assert (len(ch.lower_neighbours(p)) == 1) == (len(lat.poset.lower_covers(i)) == 1)


def test_motzkin_top_pattern():
    assert [ch.motzkin_top_chi(n) for n in range(1, 9)] == [0, 1, 2, 1, 0, 1, 2, 1]
    assert [ch.streaming_top_chi(MOTZKIN, n) for n in range(1, 10)] == [ch.motzkin_top_chi(n) for n in range(1, 10)]


@pytest.mark.parametrize("n", range(1, 10))
def test_motzchar(n):
    lat = lattice(MOTZKIN, n)
    table = ch.chi_table(lat)
    for i, p in enumerate(lat.paths):
        s = ch.step_stats(p)
        assert table[i] == ch.norm(lat, i) + s.o_prime - s.e


def test_motzkin_closed_form_counterexample():
    # UUDUDD is quasi-join-irreducible in M6 although it has two 1-tunnels
    lat = lattice(MOTZKIN, 6)
    x = lat.index("UUDUDD")
    assert ch.is_quasi_join_irreducible(lat, x)
    assert ch.chi(lat, x) == 1
    assert ch.tunnel_count(lat.paths[x], 1) == 2
    assert ch.chi_combinatorial(lat.paths[x]) == 2


def test_motzkin_decomposition_examples():
    m5 = lattice(MOTZKIN, 5)
    assert [m5.paths[s].steps for s in ch.motzkin_decomposition(m5, "UHDHH")] == ["UHDHH"]
    assert [m5.paths[s].steps for s in ch.motzkin_decomposition(m5, "UUDDH")] == ["UUDDH"]
    m7 = lattice(MOTZKIN, 7)
    assert [m7.paths[s].steps for s in ch.motzkin_decomposition(m7, "UUUDHDD")] == ["UUUDDDH", "HHUUHDD"]
    with pytest.raises(NotQuasiJoinIrreducible):
        ch.motzkin_decomposition(m5, m5.bottom)
    with pytest.raises(PathLatError):
        ch.motzkin_decomposition(lattice(DYCK, 3), 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_motzkin_decomposition_of_every_qji(n):
    lat = lattice(MOTZKIN, n)
    ji = set(lat.join_irreducibles())
    for i in range(len(lat)):
        if not ch.is_quasi_join_irreducible(lat, i):
            continue
        parts = ch.motzkin_decomposition(lat, i)
        assert lat.join_all(parts) == i
        assert all(s in ji or ch.truncated_pyramid_class(lat.paths[s]) for s in parts)
        assert all(lat.meet(a, b) in ji for a, b in zip(parts, parts[1:]))


def test_unranked_spectrum_is_reported():
    lat = lattice(PathFamily.dycklike(2, 1), 3)
    with pytest.raises(SpectrumNotRanked):
        ch.chi_k_spec(lat, 2)
    # chi itself needs no ranks
    assert ch.chi(lat, lat.top) == ch.valuation_by_inclusion_exclusion(ch.chi_spec(lat), lat.top)
