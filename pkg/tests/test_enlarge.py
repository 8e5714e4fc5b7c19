import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import naive_td_ok, random_augment_instance, random_family
from layered_coloring.enlarge import LinkageEntry, LinkageFamily, augment, measure_overlap
from layered_coloring.errors import DecompositionError, LinkageError
from layered_coloring.families import FamilySpec, generate_family
from layered_coloring.graph import Graph, TreeDecomposition
from layered_coloring.pipeline import three_color

PATH4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
PATH4_TD = TreeDecomposition.build([[0, 1], [1, 2], [2, 3]], [(0, 1), (1, 2)])


def test_empty_family_is_identity():
    res = augment(PATH4, PATH4_TD, LinkageFamily())
    assert res.g_prime == PATH4 and res.td_prime == PATH4_TD
    assert (res.h_actual, res.k_actual, res.d_actual) == (0, 0, 0)


def test_pair_inside_one_bag():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    td = TreeDecomposition.build([[0, 1, 2]], [])
    res = augment(g, td, LinkageFamily((LinkageEntry.build([0], [0], [(0, 2)]),)))
    assert res.td_prime.width == td.width
    assert res.g_prime.degree(0) == 2 and res.g_prime.degree(2) == 2


def test_growth_along_subtree():
    entry = LinkageEntry.build([0, 2], [0, 1, 2], [(0, 3), (1, 3), (0, 2)])
    res = augment(PATH4, PATH4_TD, LinkageFamily((entry,)))
    assert res.h_actual == 1 and res.k_actual == 3
    for t in range(3):
        assert len(res.td_prime.bags[t]) - len(PATH4_TD.bags[t]) <= 2 * res.k_actual
    assert naive_td_ok(res.g_prime, res.td_prime)


def test_existing_edges_are_deduplicated():
    entry = LinkageEntry.build([0], [0], [(0, 1), (1, 0)])
    res = augment(PATH4, PATH4_TD, LinkageFamily((entry,)))
    assert res.g_prime == PATH4 and res.k_actual == 1


def test_overlap_examples():
    a = LinkageEntry.build([0], [0], [])
    b = LinkageEntry.build([2], [2], [])
    assert measure_overlap(PATH4_TD, LinkageFamily((a, b))) == 1
    assert measure_overlap(PATH4_TD, LinkageFamily((a, a))) == 2


def test_pipeline_overlap_on_tri_grid():
    g, ltd = generate_family(FamilySpec("tri-grid", 16))
    report = three_color(g, ltd)
    assert report.phase2.h <= report.phase2.width_before + 1


@pytest.mark.parametrize(
    "entry, error",
    [
        (LinkageEntry((0,), (0, 2), ()), LinkageError),              # subtree not connected
        (LinkageEntry((2,), (0, 1), ()), LinkageError),              # covering outside subtree
        (LinkageEntry((0,), (0,), ((0, 3),)), LinkageError),         # pair leaves the covering bags
        (LinkageEntry((7,), (7,), ()), LinkageError),                # unknown node
    ],
)
def test_invalid_families(entry, error):
    with pytest.raises(error):
        augment(PATH4, PATH4_TD, LinkageFamily((entry,)))


def test_self_pair_and_bad_decomposition():
    with pytest.raises(LinkageError):
        LinkageEntry.build([0], [0], [(1, 1)])
    broken = TreeDecomposition.build([[0, 1], [2, 3]], [(0, 1)])
    with pytest.raises(DecompositionError):
        augment(PATH4, broken, LinkageFamily())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 50_000))
def test_adding_an_entry_never_shrinks_bags(seed):
    g, td, fam = random_augment_instance(seed)
    extra = random_family(td, random.Random(seed + 1), max_entries=1)
    base = augment(g, td, fam)
    more = augment(g, td, LinkageFamily(fam.entries + extra.entries))
    assert all(a <= b for a, b in zip(base.td_prime.bags, more.td_prime.bags))
    assert augment(base.g_prime, base.td_prime, LinkageFamily()).td_prime == base.td_prime


@pytest.mark.parametrize("seed", range(30))
def test_degree_grows_by_pair_count(seed):
    g, td, fam = random_augment_instance(seed)
    res = augment(g, td, fam)
    pairs = {p for e in fam for p in e.pairs}
    for v in range(g.n):
        assert res.g_prime.degree(v) <= g.degree(v) + sum(v in p for p in pairs)
    assert naive_td_ok(res.g_prime, res.td_prime)
