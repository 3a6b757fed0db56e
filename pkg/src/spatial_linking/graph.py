"""Cycles and disjoint cycle pairs of the complete graph K_n.

A cycle is stored as a tuple of vertex labels in canonical form: the
smallest vertex first, followed by the smaller of its two neighbours.
Two cycles are the same subgraph exactly when their canonical tuples are
equal, so no hashing modulo rotation/reflection is ever needed.
"""
from __future__ import annotations

from math import comb, factorial
from typing import Iterator, NamedTuple, Sequence

Cycle = tuple[int, ...]


class InvalidClassError(ValueError):
    """Requested cycle class does not exist in K_n."""


class MalformedCycleError(ValueError):
    """A vertex sequence does not describe a cycle."""


class CyclePair(NamedTuple):
    first: Cycle
    second: Cycle

    def __str__(self) -> str:
        return f"{format_cycle(self.first)}|{format_cycle(self.second)}"


class CycleClassCounts(NamedTuple):
    n: int
    p: int
    q: int | None
    cycle_count: int
    pair_count: int | None


def format_cycle(cycle: Sequence[int]) -> str:
    return "[" + " ".join(str(v) for v in cycle) + "]"


def canonicalize(raw: Sequence[int]) -> Cycle:
    """Return the canonical representative of a closed walk.

    >>> canonicalize([3, 1, 2])
    (1, 2, 3)
    >>> canonicalize([2, 5, 4, 7])
    (2, 5, 4, 7)
    """
    seq = list(raw)
    if len(seq) < 3:
        raise MalformedCycleError(f"cycle needs at least 3 vertices, got {seq}")
    if len(set(seq)) != len(seq):
        raise MalformedCycleError(f"repeated vertex in {seq}")
    k = seq.index(min(seq))
    seq = seq[k:] + seq[:k]
    if seq[-1] < seq[1]:
        seq = [seq[0]] + seq[:0:-1]
    return tuple(seq)


def _extend(path: list[int], used: set[int], pool: Sequence[int], p: int) -> Iterator[Cycle]:
    if len(path) == p:
        if path[1] < path[-1]:
            yield tuple(path)
        return
    for v in pool:
        if v not in used:
            path.append(v)
            used.add(v)
            yield from _extend(path, used, pool, p)
            path.pop()
            used.discard(v)


def cycles_on(vertices: Sequence[int], p: int, prefix: Cycle = ()) -> Iterator[Cycle]:
    """Canonical p-cycles of the complete graph on ``vertices``.

    ``prefix`` restricts the output to cycles whose canonical form starts
    with it; used to split work into deterministic chunks.
    """
    vertices = sorted(vertices)
    if prefix:
        starts = [prefix[0]]
    else:
        starts = vertices[: max(len(vertices) - p + 1, 0)]
    for v0 in starts:
        pool = [v for v in vertices if v > v0]
        path = list(prefix) if prefix else [v0]
        yield from _extend(path, set(path), pool, p)


def _check_cycle_class(n: int, p: int) -> None:
    if p < 3 or p > n:
        raise InvalidClassError(f"no {p}-cycles in K_{n}")


def enumerate_cycles(n: int, p: int) -> list[Cycle]:
    """All p-cycles of K_n in canonical form, lexicographically ordered."""
    _check_cycle_class(n, p)
    return list(cycles_on(range(1, n + 1), p))


def normalize_pq(p: int, q: int) -> tuple[int, int]:
    return (p, q) if p <= q else (q, p)


def _check_pair_class(n: int, p: int, q: int) -> None:
    if p < 3 or q < 3:
        raise InvalidClassError(f"cycle lengths must be at least 3, got ({p},{q})")
    if p + q > n:
        raise InvalidClassError(f"no disjoint ({p},{q}) pairs in K_{n}")


def iter_disjoint_pairs(n: int, p: int, q: int, firsts: Sequence[Cycle] | None = None) -> Iterator[CyclePair]:
    """Lazily yield Gamma_{p,q}(K_n) in normalized lexicographic order.

    If ``firsts`` is given, only pairs whose first cycle is in it are
    produced (in the order of ``firsts``).
    """
    p, q = normalize_pq(p, q)
    _check_pair_class(n, p, q)
    everything = range(1, n + 1)
    if firsts is None:
        firsts = cycles_on(everything, p)
    for a in firsts:
        rest = [v for v in everything if v not in a]
        for b in cycles_on(rest, q):
            if p == q and b <= a:
                continue
            yield CyclePair(a, b)


def enumerate_disjoint_pairs(n: int, p: int, q: int) -> list[CyclePair]:
    return list(iter_disjoint_pairs(n, p, q))


def cycle_count(n: int, p: int) -> int:
    _check_cycle_class(n, p)
    return comb(n, p) * factorial(p - 1) // 2


def pair_count(n: int, p: int, q: int) -> int:
    """Size of Gamma_{p,q}(K_n) for any n >= p + q."""
    p, q = normalize_pq(p, q)
    _check_pair_class(n, p, q)
    both = comb(n, p) * comb(n - p, q) * cycle_count(p, p) * cycle_count(q, q)
    return both // 2 if p == q else both


def class_counts(n: int, p: int, q: int | None = None) -> CycleClassCounts:
    """Closed-form class sizes.

    For Hamiltonian pairs (p + q = n) these are n!/(8p^2) when p == q and
    n!/(4pq) otherwise; there are (n-1)!/2 Hamiltonian cycles.
    """
    if q is None:
        return CycleClassCounts(n, p, None, cycle_count(n, p), None)
    p, q = normalize_pq(p, q)
    return CycleClassCounts(n, p, q, cycle_count(n, p), pair_count(n, p, q))


def hamiltonian_splits(n: int) -> list[tuple[int, int]]:
    """All (p, q) with 3 <= p <= q and p + q = n."""
    return [(p, n - p) for p in range(3, n // 2 + 1)]


def pair_classes(n: int) -> list[tuple[int, int]]:
    """Every legal (p, q), p <= q, p + q <= n."""
    return [(p, q) for p in range(3, n + 1) for q in range(p, n + 1) if p + q <= n]


def cycle_edges(cycle: Sequence[int]) -> list[tuple[int, int, int]]:
    """Traversed edges as (low, high, orientation) with orientation +1 when
    the edge is walked from its smaller to its larger endpoint."""
    out = []
    k = len(cycle)
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        out.append((a, b, 1) if a < b else (b, a, -1))
    return out
