"""Class sums of lk and a2 over a whole embedded K_n, and the checks built
on them.

Work is split into chunks that depend only on (n, class), never on the
number of worker processes, and chunk results are merged in chunk order.
Integer sums are exact, so ``jobs`` never changes a reported number.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Iterator, NamedTuple, Sequence

from .diagram import Passage
from .geometry import PLEmbedding, SceneDiagram, build_scene_diagram, require_valid
from .graph import (
    Cycle,
    CyclePair,
    InvalidClassError,
    cycle_edges,
    cycles_on,
    format_cycle,
    hamiltonian_splits,
    iter_disjoint_pairs,
    normalize_pq,
)
from .invariants import InconsistentDiagramError, a2_of_passages

STATISTICS = ("lk", "lk2", "maxlk", "a2", "maxa2")
PAIR_STATISTICS = ("lk", "lk2", "maxlk")
KNOT_STATISTICS = ("a2", "maxa2")
JOBS_ENV = "SPATIAL_LINKING_JOBS"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


class ClassSum(NamedTuple):
    n: int
    p: int
    q: int | None
    statistic: str
    value: int


class LkStats(NamedTuple):
    count: int
    total: int            # sum of lk
    total_sq: int         # sum of lk^2
    max_abs: int
    max_witness: CyclePair | None
    odd_witness: CyclePair | None


class KnotStats(NamedTuple):
    count: int
    total: int
    max_value: int | None
    max_witness: Cycle | None
    nonzero: int


# -- worker kernel ----------------------------------------------------------

class Kernel:
    """The parts of a scene diagram needed per cycle, in plain lists."""

    def __init__(self, scene: SceneDiagram):
        self.n = scene.n
        self.edge_index = dict(scene.edge_index)
        self.pair_sums = scene.edge_pair_sums
        self.passages = [tuple((ep.crossing, ep.other_edge, ep.over, ep.sign) for ep in lst)
                         for lst in scene.edge_passages]

    def oriented(self, cycle: Sequence[int]) -> list[tuple[int, int]]:
        idx = self.edge_index
        return [(idx[(lo, hi)], o) for lo, hi, o in cycle_edges(cycle)]

    def weights(self, cycle: Sequence[int]) -> list[int]:
        w = [0] * len(self.pair_sums)
        for k, o in self.oriented(cycle):
            row = self.pair_sums[k]
            for f, v in enumerate(row):
                if v:
                    w[f] += o * v
        return w

    def lk_with(self, weights: list[int], cycle: Sequence[int]) -> int:
        s = 0
        for k, o in self.oriented(cycle):
            s += o * weights[k]
        if s % 2:
            raise InconsistentDiagramError(f"odd signed crossing sum {s} against {cycle}")
        return s // 2

    def lk(self, pair: CyclePair) -> int:
        return self.lk_with(self.weights(pair.first), pair.second)

    def knot_passages(self, cycle: Sequence[int]) -> list[Passage]:
        edges = self.oriented(cycle)
        orient = dict(edges)
        out = []
        for k, o in edges:
            lst = self.passages[k] if o > 0 else self.passages[k][::-1]
            for cid, other, over, s in lst:
                o2 = orient.get(other)
                if o2 is not None:
                    out.append(Passage(cid, over, s * o * o2))
        return out

    def a2(self, cycle: Sequence[int]) -> int:
        return a2_of_passages(self.knot_passages(cycle))


_KERNEL: Kernel | None = None


def _init_worker(kernel: Kernel) -> None:
    global _KERNEL
    _KERNEL = kernel


def _lk_chunk(args) -> LkStats:
    firsts, n, p, q = args
    kernel = _KERNEL
    count = total = total_sq = max_abs = 0
    max_w = odd_w = None
    for a in firsts:
        w = kernel.weights(a)
        for pair in iter_disjoint_pairs(n, p, q, [a]):
            lk = kernel.lk_with(w, pair.second)
            count += 1
            total += lk
            total_sq += lk * lk
            if max_w is None or abs(lk) > max_abs:
                max_abs, max_w = abs(lk), pair
            if odd_w is None and lk % 2:
                odd_w = pair
    return LkStats(count, total, total_sq, max_abs, max_w, odd_w)


def _knot_chunk(args) -> KnotStats:
    vertices, p, prefix = args
    kernel = _KERNEL
    count = total = nonzero = 0
    best = best_w = None
    for cyc in cycles_on(vertices, p, prefix):
        v = kernel.a2(cyc)
        count += 1
        total += v
        if v:
            nonzero += 1
        if best is None or v > best:
            best, best_w = v, cyc
    return KnotStats(count, total, best, best_w, nonzero)


def _merge_lk(parts: Sequence[LkStats]) -> LkStats:
    count = total = total_sq = max_abs = 0
    max_w = odd_w = None
    for s in parts:
        count += s.count
        total += s.total
        total_sq += s.total_sq
        if s.max_witness is not None and (max_w is None or s.max_abs > max_abs):
            max_abs, max_w = s.max_abs, s.max_witness
        if odd_w is None:
            odd_w = s.odd_witness
    return LkStats(count, total, total_sq, max_abs, max_w, odd_w)


def _merge_knots(parts: Sequence[KnotStats]) -> KnotStats:
    count = total = nonzero = 0
    best = best_w = None
    for s in parts:
        count += s.count
        total += s.total
        nonzero += s.nonzero
        if s.max_value is not None and (best is None or s.max_value > best):
            best, best_w = s.max_value, s.max_witness
    return KnotStats(count, total, best, best_w, nonzero)


def _lk_chunks(n: int, p: int, q: int, size: int = 16) -> list:
    firsts = list(cycles_on(range(1, n + 1), p))
    return [(firsts[k:k + size], n, p, q) for k in range(0, len(firsts), size)]


def _knot_chunks(n: int, p: int) -> list:
    if p == n:
        # Hamiltonian cycles split by their second and third vertices
        out = []
        for v1 in range(2, n + 1):
            for v2 in range(2, n + 1):
                if v2 != v1:
                    out.append((tuple(range(1, n + 1)), p, (1, v1, v2)))
        return out
    return [(subset, p, ()) for subset in combinations(range(1, n + 1), p)]


# -- analysis ---------------------------------------------------------------

class Analysis:
    """One embedding projected once; per-class statistics computed lazily."""

    def __init__(self, embedding: PLEmbedding, direction: Sequence | None = None,
                 jobs: int | None = None, validate: bool = True):
        if validate:
            require_valid(embedding)
        self.embedding = embedding
        self.n = embedding.n
        self.scene = build_scene_diagram(embedding, direction)
        self.direction = self.scene.direction
        self.jobs = default_jobs() if jobs is None else max(1, jobs)
        self.kernel = Kernel(self.scene)
        self._lk: dict[tuple[int, int], LkStats] = {}
        self._knots: dict[int, KnotStats] = {}

    @property
    def rectilinear(self) -> bool:
        return self.embedding.is_rectilinear

    def _run(self, func, chunks, merge):
        if self.jobs == 1 or len(chunks) < 2:
            _init_worker(self.kernel)
            return merge([func(c) for c in chunks])
        with ProcessPoolExecutor(max_workers=self.jobs, initializer=_init_worker,
                                 initargs=(self.kernel,)) as pool:
            return merge(list(pool.map(func, chunks)))

    def lk_stats(self, p: int, q: int) -> LkStats:
        p, q = normalize_pq(p, q)
        if p < 3 or p + q > self.n:
            raise InvalidClassError(f"no disjoint ({p},{q}) pairs in K_{self.n}")
        if (p, q) not in self._lk:
            self._lk[(p, q)] = self._run(_lk_chunk, _lk_chunks(self.n, p, q), _merge_lk)
        return self._lk[(p, q)]

    def knot_stats(self, p: int) -> KnotStats:
        if p < 3 or p > self.n:
            raise InvalidClassError(f"no {p}-cycles in K_{self.n}")
        if p not in self._knots:
            self._knots[p] = self._run(_knot_chunk, _knot_chunks(self.n, p), _merge_knots)
        return self._knots[p]

    def lk(self, pair: CyclePair) -> int:
        return self.kernel.lk(pair)

    def a2(self, cycle: Cycle) -> int:
        return self.kernel.a2(cycle)

    def iter_lk(self, p: int, q: int) -> Iterator[tuple[CyclePair, int]]:
        """Every pair of the class with its linking number, in order."""
        for pair in iter_disjoint_pairs(self.n, p, q):
            yield pair, self.kernel.lk(pair)

    def iter_a2(self, p: int) -> Iterator[tuple[Cycle, int]]:
        for cyc in cycles_on(range(1, self.n + 1), p):
            yield cyc, self.kernel.a2(cyc)

    def class_sum(self, p: int, q: int | None, statistic: str) -> ClassSum:
        if statistic in PAIR_STATISTICS:
            if q is None:
                raise InvalidClassError(f"statistic {statistic} needs a pair class (p,q)")
            p, q = normalize_pq(p, q)
            s = self.lk_stats(p, q)
            value = {"lk": s.total, "lk2": s.total_sq, "maxlk": s.max_abs}[statistic]
            return ClassSum(self.n, p, q, statistic, value)
        if statistic in KNOT_STATISTICS:
            if q is not None:
                raise InvalidClassError(f"statistic {statistic} is defined on knot classes only")
            s = self.knot_stats(p)
            value = s.total if statistic == "a2" else s.max_value
            return ClassSum(self.n, p, None, statistic, value)
        raise ValueError(f"unknown statistic {statistic!r}")

    # convenience sums used by the checks
    def lk2(self, p: int, q: int) -> int:
        return self.lk_stats(p, q).total_sq

    def hamiltonian_lk2_total(self) -> int:
        return sum(self.lk2(p, q) for p, q in hamiltonian_splits(self.n))

    def a2_sum(self, p: int) -> int:
        return self.knot_stats(p).total


def class_sum(e: PLEmbedding | Analysis, cls: tuple[int, int] | int, statistic: str,
              direction: Sequence | None = None, jobs: int | None = None) -> ClassSum:
    """Exact sum (or max) of ``statistic`` over a pair class ``(p, q)`` or a
    knot class ``p``."""
    analysis = e if isinstance(e, Analysis) else Analysis(e, direction, jobs)
    if isinstance(cls, tuple):
        return analysis.class_sum(cls[0], cls[1], statistic)
    return analysis.class_sum(cls, None, statistic)


# -- verification -----------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    claim_id: str
    n: int
    p: int | None
    q: int | None
    statistic: str
    status: str                 # holds | violated | skipped
    lhs: int | None
    rhs: int | None
    witness: str = ""

    FIELDS = ("claim_id", "n", "p", "q", "statistic", "status", "lhs", "rhs", "witness")

    def as_row(self) -> list[str]:
        return ["" if getattr(self, f) is None else str(getattr(self, f)) for f in self.FIELDS]

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.FIELDS}


def _report(claim, n, p, q, stat, ok, lhs, rhs, witness="") -> VerificationReport:
    return VerificationReport(claim, n, p, q, stat, "holds" if ok else "violated", lhs, rhs, witness)


def _skipped(claim, n, p, q, stat, reason) -> VerificationReport:
    return VerificationReport(claim, n, p, q, stat, "skipped", None, None, f"skipped: {reason}")


def _as_analysis(e) -> Analysis:
    return e if isinstance(e, Analysis) else Analysis(e)


def _split_factor(n: int, p: int, q: int) -> int:
    return factorial(n - 6) if p == q else 2 * factorial(n - 6)


def verify_identities(e: PLEmbedding | Analysis) -> list[VerificationReport]:
    """Exact identities tying every lk^2 class sum and the Hamiltonian a2
    sum to the triangle-triangle sum."""
    a = _as_analysis(e)
    n = a.n
    if n < 6:
        raise ValueError("identities need n >= 6")
    s33 = a.lk2(3, 3)
    out = []
    for p, q in hamiltonian_splits(n):
        lhs, rhs = a.lk2(p, q), _split_factor(n, p, q) * s33
        out.append(_report("lk2-split-identity", n, p, q, "lk2", lhs == rhs, lhs, rhs))
    lhs, rhs = a.hamiltonian_lk2_total(), factorial(n - 5) * s33
    out.append(_report("lk2-total-identity", n, None, None, "lk2", lhs == rhs, lhs, rhs))
    if n >= 7:
        lhs, rhs = a.lk2(3, 4), 2 * (n - 6) * s33
        out.append(_report("lk2-34-identity", n, 3, 4, "lk2", lhs == rhs, lhs, rhs))
    if n >= 8:
        lhs, rhs = a.lk2(3, 5), 2 * (n - 6) * (n - 7) * s33
        out.append(_report("lk2-35-identity", n, 3, 5, "lk2", lhs == rhs, lhs, rhs))
    # doubled so that the (n-5)!/2 coefficient stays integral at n = 6
    f = factorial(n - 5)
    lhs = 2 * (a.a2_sum(n) - f * a.a2_sum(5))
    rhs = f * (s33 - comb(n - 1, 5))
    out.append(_report("a2-lk2-identity", n, n, None, "2*a2", lhs == rhs, lhs, rhs))
    return out


def _odd_class(n: int, residues: tuple[int, ...]) -> bool:
    return n % 8 in residues


def verify_congruences(e: PLEmbedding | Analysis) -> list[VerificationReport]:
    """Residues of the lk^2 class sums and of the Hamiltonian a2 sum, which
    do not depend on the embedding."""
    a = _as_analysis(e)
    n = a.n
    if n < 6:
        raise ValueError("congruences need n >= 6")
    odd = _odd_class(n, (6, 7))
    base = factorial(n - 6)
    out = []
    for p, q in hamiltonian_splits(n):
        mod = 2 * base if p == q else 4 * base
        want = (base if p == q else 2 * base) if odd else 0
        got = a.lk2(p, q) % mod
        out.append(_report("lk2-split-congruence", n, p, q, "lk2", got == want, got, want, f"mod {mod}"))
    mod = 2 * factorial(n - 5)
    want = factorial(n - 5) if odd else 0
    got = a.hamiltonian_lk2_total() % mod
    out.append(_report("lk2-total-congruence", n, None, None, "lk2", got == want, got, want, f"mod {mod}"))
    if n >= 7:
        mod = factorial(n - 5)
        want = mod // 2 if _odd_class(n, (0, 7)) else 0
        got = a.a2_sum(n) % mod
        out.append(_report("a2-hamiltonian-congruence", n, n, None, "a2", got == want, got, want, f"mod {mod}"))
    return out


def _threshold(target: int, scale: int) -> int:
    """Largest m >= 0 with target > scale * (m - 1)^2 (0 if none)."""
    m = 0
    while target > scale * m * m:
        m += 1
    return m


def verify_bounds_and_parities(e: PLEmbedding | Analysis) -> list[VerificationReport]:
    """Lower bounds, rectilinear upper bounds, parity facts and existence
    claims, each with exact integer evidence."""
    a = _as_analysis(e)
    n = a.n
    if n < 6:
        raise ValueError("bounds need n >= 6")
    out = []
    unit = factorial(n) // factorial(6)
    s33 = a.lk2(3, 3)
    out.append(_report("lk2-33-lower-bound", n, 3, 3, "lk2", s33 >= comb(n, 6), s33, comb(n, 6)))
    for p, q in hamiltonian_splits(n):
        bound = unit if p == q else 2 * unit
        v = a.lk2(p, q)
        out.append(_report("lk2-split-lower-bound", n, p, q, "lk2", v >= bound, v, bound))
    total = a.hamiltonian_lk2_total()
    out.append(_report("lk2-total-lower-bound", n, None, None, "lk2", total >= (n - 5) * unit, total, (n - 5) * unit))

    if n == 6:
        s = a.lk_stats(3, 3).total
        out.append(_report("lk-33-sum-odd", n, 3, 3, "lk", s % 2 == 1, s % 2, 1))
    else:
        s = sum(a.lk_stats(p, q).total for p, q in hamiltonian_splits(n))
        out.append(_report("lk-hamiltonian-sum-even", n, None, None, "lk", s % 2 == 0, s % 2, 0))
        witness = None
        for p, q in hamiltonian_splits(n):
            witness = a.lk_stats(p, q).odd_witness
            if witness is not None:
                break
        if witness is None:
            out.append(_report("odd-lk-hamiltonian-exists", n, None, None, "lk", False, 0, 1, "none found"))
        else:
            lk = a.lk(witness)
            p, q = len(witness.first), len(witness.second)
            out.append(_report("odd-lk-hamiltonian-exists", n, p, q, "lk", lk % 2 == 1, lk, 1, str(witness)))
    if n == 7:
        s = a.a2_sum(7)
        out.append(_report("a2-7-sum-odd", n, 7, None, "a2", s % 2 == 1, s % 2, 1))

    for p, q in hamiltonian_splits(n):
        st = a.lk_stats(p, q)
        out.append(_report("maxlk-squared-bound", n, p, q, "90*maxlk^2", 90 * st.max_abs ** 2 >= p * q,
                           90 * st.max_abs ** 2, p * q, str(st.max_witness)))
        m = _threshold(p * q, 90)
        out.append(_report("maxlk-threshold", n, p, q, "maxlk", st.max_abs >= m, st.max_abs, m, str(st.max_witness)))

    rect = [
        ("lk2-33-rectilinear-upper-bound", 3, 3, "lk2"),
        *[("lk2-split-rectilinear-upper-bound", p, q, "lk2") for p, q in hamiltonian_splits(n)],
        ("lk2-total-rectilinear-upper-bound", None, None, "lk2"),
        ("six-stick-dichotomy", 3, 3, "maxlk"),
        ("five-stick-triviality", 5, None, "a2 nonzero count"),
        ("a2-rectilinear-lower-bound", n, None, "1440*a2"),
        ("maxa2-rectilinear-bound", n, None, "720*maxa2"),
    ]
    if n == 6:
        rect.insert(0, ("k6-rectilinear-hopf-count", 3, 3, "lk2"))
    if not a.rectilinear:
        out.extend(_skipped(c, n, p, q, s, "not rectilinear") for c, p, q, s in rect)
        return out

    if n == 6:
        out.append(_report("k6-rectilinear-hopf-count", n, 3, 3, "lk2", s33 in (1, 3), s33, 3, "allowed {1, 3}"))
    out.append(_report("lk2-33-rectilinear-upper-bound", n, 3, 3, "lk2", s33 <= 3 * comb(n, 6), s33, 3 * comb(n, 6)))
    for p, q in hamiltonian_splits(n):
        bound = 3 * unit if p == q else 6 * unit
        v = a.lk2(p, q)
        out.append(_report("lk2-split-rectilinear-upper-bound", n, p, q, "lk2", v <= bound, v, bound))
    bound = 3 * (n - 5) * unit
    out.append(_report("lk2-total-rectilinear-upper-bound", n, None, None, "lk2", total <= bound, total, bound))
    st = a.lk_stats(3, 3)
    out.append(_report("six-stick-dichotomy", n, 3, 3, "maxlk", st.max_abs <= 1, st.max_abs, 1, str(st.max_witness)))
    bad = sum(a.knot_stats(p).nonzero for p in range(3, 6))
    out.append(_report("five-stick-triviality", n, 5, None, "a2 nonzero count", bad == 0, bad, 0))
    ks = a.knot_stats(n)
    lhs, rhs = 2 * 720 * ks.total, (n - 5) * (n - 6) * factorial(n - 1)
    out.append(_report("a2-rectilinear-lower-bound", n, n, None, "1440*a2", lhs >= rhs, lhs, rhs))
    lhs, rhs = 720 * ks.max_value, (n - 5) * (n - 6)
    out.append(_report("maxa2-rectilinear-bound", n, n, None, "720*maxa2", lhs >= rhs, lhs, rhs,
                       format_cycle(ks.max_witness)))
    m = _threshold((n - 5) * (n - 6), 720)
    if m >= 1:
        out.append(_report("maxa2-rectilinear-threshold", n, n, None, "maxa2", ks.max_value >= m, ks.max_value, m,
                           format_cycle(ks.max_witness)))
    return out


def verify_all(e: PLEmbedding | Analysis) -> list[VerificationReport]:
    a = _as_analysis(e)
    return verify_identities(a) + verify_congruences(a) + verify_bounds_and_parities(a)
