"""Built-in acceptance suite shared by ``spatial-linking selftest`` and the
pytest acceptance module. Every check is exact integer equality or an
exact integer inequality."""
from __future__ import annotations

import io
import os
import tempfile
import time
from contextlib import redirect_stdout
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .aggregate import Analysis, verify_bounds_and_parities, verify_congruences, verify_identities
from .diagram import LinkDiagram, extract_link_diagram, gauss_diagram
from .generators import moment_curve, random_embedding
from .geometry import find_generic_direction
from .graph import enumerate_cycles, hamiltonian_splits, pair_classes
from .invariants import OracleUnavailable, a2, coefficient, conway_skein_oracle, linking_number

TREFOIL = "O1+ U2+ O3+ U1+ O2+ U3+"
FIGURE_EIGHT = "O1- U2+ O3+ U1- O4- U3+ O2+ U4-"


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"criterion {self.number:2d} {'PASS' if self.passed else 'FAIL'}: {self.title} ({self.detail}; {self.seconds:.1f}s)"


@dataclass
class Corpus:
    """Embeddings and their analyses, built once and shared by criteria."""

    quick: bool = False
    _cache: dict = field(default_factory=dict)

    def seeds(self, full: int) -> range:
        return range(min(full, 3) if self.quick else full)

    def moment(self, n: int) -> Analysis:
        key = ("moment", n)
        if key not in self._cache:
            self._cache[key] = Analysis(moment_curve(n))
        return self._cache[key]

    def random(self, n: int, seed: int) -> Analysis:
        key = ("random", n, seed)
        if key not in self._cache:
            self._cache[key] = Analysis(random_embedding(n, seed))
        return self._cache[key]

    def analyses(self):
        return list(self._cache.values())


def _holds(reports, claims=None) -> tuple[bool, list]:
    bad = [r for r in reports if (claims is None or r.claim_id in claims) and r.status != "holds"]
    return not bad, bad


def criterion_1(c: Corpus):
    start = time.perf_counter()
    got = {n: c.moment(n).lk2(3, 3) for n in (6, 7, 8, 9)}
    elapsed = time.perf_counter() - start
    ok = all(got[n] == comb(n, 6) for n in got) and elapsed < 60
    return ok, f"sum lk^2 over triangle pairs = {got}, expected C(n,6); {elapsed:.1f}s < 60s"


def criterion_2(c: Corpus):
    a = c.moment(8)
    v35, v44, tot = a.lk2(3, 5), a.lk2(4, 4), a.hamiltonian_lk2_total()
    ok = (v35, v44, tot) == (112, 56, 168) and tot == 6 * a.lk2(3, 3)
    return ok, f"(3,5)={v35} (4,4)={v44} total={tot}"


def criterion_3(c: Corpus):
    start = time.perf_counter()
    count = 0
    failures = []
    plan = [(n, s) for n in (6, 7, 8) for s in c.seeds(20)] + [(9, s) for s in c.seeds(3)]
    for n, seed in plan:
        ok, bad = _holds(verify_identities(c.random(n, seed)), {"lk2-split-identity", "lk2-total-identity"})
        count += 1
        failures += [(n, seed, r) for r in bad]
    elapsed = time.perf_counter() - start
    return not failures and elapsed < 600, f"{count} embeddings, {len(failures)} failures, {elapsed:.0f}s < 600s"


def criterion_4(c: Corpus):
    targets = [c.moment(n) for n in (6, 7, 8)] + [c.random(n, s) for n in (6, 7, 8) for s in c.seeds(10)]
    failures = []
    for a in targets:
        ok, bad = _holds(verify_identities(a), {"a2-lk2-identity"})
        failures += bad
    k7 = c.moment(7).a2_sum(7)
    return not failures and k7 == 1, f"{len(targets)} embeddings, {len(failures)} failures, moment K7 sum a2 = {k7}"


def criterion_5(c: Corpus):
    k6_bad = [s for s in c.seeds(50) if c.random(6, s).lk_stats(3, 3).total % 2 != 1]
    k7_bad = [s for s in c.seeds(10) if c.random(7, s).a2_sum(7) % 2 != 1]
    ham_bad = []
    for n in (7, 8):
        for s in c.seeds(10):
            a = c.random(n, s)
            total = sum(a.lk_stats(p, q).total for p, q in hamiltonian_splits(n))
            witness = next((a.lk_stats(p, q).odd_witness for p, q in hamiltonian_splits(n)
                            if a.lk_stats(p, q).odd_witness is not None), None)
            if total % 2 or witness is None:
                ham_bad.append((n, s))
                continue
            ld = extract_link_diagram(a.scene, [witness.first, witness.second])
            if linking_number(ld) % 2 != 1:
                ham_bad.append((n, s))
    ok = not (k6_bad or k7_bad or ham_bad)
    return ok, f"K6 odd-sum failures {k6_bad}, K7 odd-a2 failures {k7_bad}, Hamiltonian parity/witness failures {ham_bad}"


def _criteria_1_to_4_embeddings(c: Corpus):
    out = [c.moment(n) for n in (6, 7, 8, 9)]
    out += [c.random(n, s) for n in (6, 7, 8) for s in c.seeds(20)]
    out += [c.random(9, s) for s in c.seeds(3)]
    return out


def criterion_6(c: Corpus):
    failures = []
    count = 0
    for a in _criteria_1_to_4_embeddings(c):
        reports = verify_congruences(a)
        count += len(reports)
        failures += [r for r in reports if r.status != "holds"]
    return not failures, f"{count} congruence checks, {len(failures)} failures"


_BOUND_CLAIMS = {
    "lk2-33-lower-bound", "lk2-split-lower-bound", "lk2-total-lower-bound",
    "lk2-33-rectilinear-upper-bound", "lk2-split-rectilinear-upper-bound", "lk2-total-rectilinear-upper-bound",
    "k6-rectilinear-hopf-count", "maxlk-squared-bound", "maxlk-threshold",
    "a2-rectilinear-lower-bound", "maxa2-rectilinear-bound", "maxa2-rectilinear-threshold",
}


def criterion_7(c: Corpus):
    failures = []
    count = 0
    for a in _criteria_1_to_4_embeddings(c):
        reports = [r for r in verify_bounds_and_parities(a) if r.claim_id in _BOUND_CLAIMS]
        count += len(reports)
        failures += [r for r in reports if r.status != "holds"]
    return not failures, f"{count} bound checks, {len(failures)} failures"


def calibration() -> dict[str, int]:
    return {
        "unknot": a2(gauss_diagram(LinkDiagram.from_passages([[]]))),
        "trefoil": a2(gauss_diagram(LinkDiagram.from_code(TREFOIL))),
        "figure-eight": a2(gauss_diagram(LinkDiagram.from_code(FIGURE_EIGHT))),
    }


def criterion_8(c: Corpus):
    cal = calibration()
    cal_ok = cal == {"unknot": 0, "trefoil": 1, "figure-eight": -1}
    knots = lk_pairs = skipped = 0
    mismatches = []
    for s in c.seeds(5):
        a = c.random(7, s)
        for cyc in enumerate_cycles(7, 7):
            ld = extract_link_diagram(a.scene, [cyc])
            try:
                poly = conway_skein_oracle(ld)
            except OracleUnavailable:
                skipped += 1
                continue
            knots += 1
            if a2(gauss_diagram(ld)) != coefficient(poly, 2) or a.a2(cyc) != coefficient(poly, 2):
                mismatches.append((s, cyc))
        for pair, lk in a.iter_lk(3, 4):
            ld = extract_link_diagram(a.scene, pair)
            poly = conway_skein_oracle(ld, cutoff=64)
            lk_pairs += 1
            if linking_number(ld) != coefficient(poly, 1) or lk != coefficient(poly, 1):
                mismatches.append((s, pair))
    ok = cal_ok and not mismatches and knots > 0
    return ok, (f"calibration {cal}; {knots} knots and {lk_pairs} (3,4) links agree with the skein oracle, "
                f"{skipped} knots over the cutoff, {len(mismatches)} mismatches")


def _all_values(a: Analysis) -> dict:
    vals = {}
    for p, q in pair_classes(a.n):
        for pair, lk in a.iter_lk(p, q):
            vals[pair] = lk
    for p in range(3, a.n + 1):
        for cyc, v in a.iter_a2(p):
            vals[cyc] = v
    return vals


def criterion_9(c: Corpus):
    independent = []
    for s in c.seeds(5):
        a = c.random(7, s)
        other = Analysis(a.embedding, find_generic_direction(a.embedding, skip=1))
        independent.append(a.direction != other.direction and _all_values(a) == _all_values(other))
    rotations_bad = 0
    for s in c.seeds(5):
        a = c.random(7, s)
        for cyc in enumerate_cycles(7, 7):
            gd = gauss_diagram(extract_link_diagram(a.scene, [cyc]))
            base = a2(gd)
            rotations_bad += sum(a2(gd.rotate(k)) != base for k in range(1, gd.size))
    six = five = 0
    for a in c.analyses():
        if not a.rectilinear or a.n < 6:
            continue
        six += a.lk_stats(3, 3).max_abs > 1
        five += sum(a.knot_stats(p).nonzero for p in (3, 4, 5))
    ok = all(independent) and rotations_bad == 0 and six == 0 and five == 0
    return ok, (f"direction independence {independent}; basepoint failures {rotations_bad}; "
                f"six-stick violations {six}; nonzero a2 on <=5-cycles {five} over {len(c.analyses())} embeddings")


def criterion_10(c: Corpus):
    from .cli import main

    def run(args) -> tuple[int, str]:
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(args)
        return code, buf.getvalue()

    with tempfile.TemporaryDirectory() as tmp:
        emb = os.path.join(tmp, "k7.json")
        outputs = []
        for _ in range(2):
            outputs.append(run(["gen", "--random", "-n", "7", "--seed", "11"])[1])
        with open(emb, "w") as fh:
            fh.write(outputs[0])
        results = {}
        for label, jobs in (("run1", "1"), ("run2", "1"), ("jobs8", "8")):
            for cmd in ("sums", "verify"):
                for fmt in ("csv", "json"):
                    results[(label, cmd, fmt)] = run([cmd, "-i", emb, "--jobs", jobs, "--format", fmt])
    same_gen = outputs[0] == outputs[1]
    same = all(results[("run1", cmd, fmt)] == results[(other, cmd, fmt)]
               for cmd in ("sums", "verify") for fmt in ("csv", "json") for other in ("run2", "jobs8"))
    codes = {k: v[0] for k, v in results.items()}
    ok = same_gen and same and all(v == 0 for v in codes.values())
    return ok, f"gen identical {same_gen}; sums/verify identical across runs and --jobs 1 vs 8: {same}"


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "moment-curve triangle-pair sums equal C(n,6)", criterion_1),
    (2, "moment-curve K8 regression triple", criterion_2),
    (3, "lk^2 split and total identities on random embeddings", criterion_3),
    (4, "doubled a2 / lk^2 identity", criterion_4),
    (5, "parities and odd-lk Hamiltonian witnesses", criterion_5),
    (6, "congruences", criterion_6),
    (7, "lower and rectilinear upper bounds", criterion_7),
    (8, "Gauss-diagram a2 and lk agree with the skein oracle", criterion_8),
    (9, "projection, basepoint, six-stick and five-stick properties", criterion_9),
    (10, "byte-identical CLI output", criterion_10),
]


def run_criterion(number: int, corpus: Corpus) -> CriterionResult:
    for num, title, func in CRITERIA:
        if num == number:
            start = time.perf_counter()
            ok, detail = func(corpus)
            return CriterionResult(num, title, bool(ok), detail, time.perf_counter() - start)
    raise KeyError(number)


def run_all(quick: bool = False, echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    corpus = Corpus(quick=quick)
    results = []
    for num, _, _ in CRITERIA:
        r = run_criterion(num, corpus)
        if echo:
            echo(r.line())
        results.append(r)
    return results

