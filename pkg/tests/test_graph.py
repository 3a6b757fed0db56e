from itertools import combinations, permutations
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from spatial_linking.graph import (
    CyclePair,
    InvalidClassError,
    MalformedCycleError,
    canonicalize,
    class_counts,
    cycle_edges,
    enumerate_cycles,
    enumerate_disjoint_pairs,
    hamiltonian_splits,
    pair_classes,
)


@pytest.mark.parametrize("n,p,count", [(6, 3, 20), (7, 7, 360), (6, 6, 60), (5, 4, 15)])
def test_cycle_counts(n, p, count):
    assert len(enumerate_cycles(n, p)) == count


@pytest.mark.parametrize("n,p,q,count", [(6, 3, 3, 10), (8, 4, 4, 315), (8, 3, 5, 672), (7, 3, 4, 105)])
def test_pair_counts(n, p, q, count):
    assert len(enumerate_disjoint_pairs(n, p, q)) == count


def brute_cycles(n, p):
    # every vertex sequence, deduplicated by its set of undirected edges
    seen = set()
    for verts in combinations(range(1, n + 1), p):
        for perm in permutations(verts):
            seen.add(frozenset(frozenset(e) for e in zip(perm, perm[1:] + perm[:1])))
    return seen


@pytest.mark.parametrize("n,p", [(5, 3), (5, 4), (5, 5), (6, 4), (6, 6)])
def test_cycles_match_brute_force(n, p):
    got = enumerate_cycles(n, p)
    assert len(set(got)) == len(got)
    as_edges = {frozenset(frozenset(e) for e in zip(c, c[1:] + c[:1])) for c in got}
    assert as_edges == brute_cycles(n, p)


@pytest.mark.parametrize("n", range(6, 10))
def test_closed_form_sizes(n):
    for p in range(3, n + 1):
        assert len(enumerate_cycles(n, p)) == comb(n, p) * factorial(p - 1) // 2
    assert len(enumerate_cycles(n, n)) == factorial(n - 1) // 2
    for p, q in hamiltonian_splits(n):
        want = factorial(n) // (8 * p * p) if p == q else factorial(n) // (4 * p * q)
        assert class_counts(n, p, q).pair_count == want
        if n <= 8:
            assert len(enumerate_disjoint_pairs(n, p, q)) == want


def test_enumeration_is_sorted_and_canonical():
    cycles = enumerate_cycles(7, 5)
    assert cycles == sorted(cycles)
    assert all(canonicalize(c) == c for c in cycles)
    pairs = enumerate_disjoint_pairs(6, 3, 3)
    assert all(p.first < p.second for p in pairs)


def test_unequal_pairs_put_shorter_first():
    pairs = enumerate_disjoint_pairs(7, 4, 3)
    assert all(len(p.first) == 3 and len(p.second) == 4 for p in pairs)


@pytest.mark.parametrize("raw,want", [([3, 1, 2], (1, 2, 3)), ([1, 3, 2], (1, 2, 3)), ([2, 5, 4, 7], (2, 5, 4, 7)),
                                      ([7, 4, 5, 2], (2, 5, 4, 7)), ([4, 5, 2, 7], (2, 5, 4, 7))])
def test_canonicalize_examples(raw, want):
    assert canonicalize(raw) == want


@given(st.lists(st.integers(1, 30), min_size=3, max_size=9, unique=True), st.integers(0, 8), st.booleans())
def test_canonicalize_dihedral_invariance(cycle, shift, flip):
    moved = cycle[shift % len(cycle):] + cycle[:shift % len(cycle)]
    if flip:
        moved = moved[::-1]
    c = canonicalize(moved)
    assert c == canonicalize(cycle)
    assert canonicalize(c) == c
    assert c[0] == min(cycle) and c[1] < c[-1]


@pytest.mark.parametrize("raw", [[1, 2], [1, 2, 1], [1, 2, 3, 2]])
def test_malformed_cycles(raw):
    with pytest.raises(MalformedCycleError):
        canonicalize(raw)


@pytest.mark.parametrize("n,p", [(6, 2), (6, 7)])
def test_invalid_cycle_class(n, p):
    with pytest.raises(InvalidClassError):
        enumerate_cycles(n, p)


def test_invalid_pair_class():
    with pytest.raises(InvalidClassError):
        enumerate_disjoint_pairs(6, 3, 4)
    with pytest.raises(InvalidClassError):
        enumerate_disjoint_pairs(6, 2, 3)


def test_splits_and_classes():
    assert hamiltonian_splits(8) == [(3, 5), (4, 4)]
    assert hamiltonian_splits(9) == [(3, 6), (4, 5)]
    assert (3, 3) in pair_classes(8) and (3, 5) in pair_classes(8) and (3, 6) not in pair_classes(8)


def test_cycle_edges_orientation():
    assert cycle_edges((1, 3, 2)) == [(1, 3, 1), (2, 3, -1), (1, 2, -1)]


def test_pair_str():
    assert str(CyclePair((1, 2, 3), (4, 5, 6))) == "[1 2 3]|[4 5 6]"
