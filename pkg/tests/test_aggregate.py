from math import comb

import pytest

from spatial_linking.aggregate import (
    Analysis,
    LkStats,
    class_sum,
    verify_all,
    verify_bounds_and_parities,
    verify_congruences,
    verify_identities,
)
from spatial_linking.diagram import extract_link_diagram, gauss_diagram
from spatial_linking.generators import moment_curve, random_embedding
from spatial_linking.graph import InvalidClassError, enumerate_cycles, enumerate_disjoint_pairs
from spatial_linking.invariants import a2, linking_number


@pytest.fixture(scope="module")
def k8():
    return Analysis(moment_curve(8))


@pytest.fixture(scope="module")
def k7():
    return Analysis(moment_curve(7))


def test_moment_k8_sums(k8):
    assert class_sum(k8, (3, 3), "lk2").value == 28
    assert class_sum(k8, (3, 5), "lk2").value == 112
    assert class_sum(k8, (5, 3), "lk2").value == 112
    assert class_sum(k8, (4, 4), "lk2").value == 56


def test_moment_k7_a2(k7):
    assert class_sum(k7, 7, "a2").value == 1
    assert k7.a2_sum(5) == 0


def test_class_sum_from_embedding():
    assert class_sum(moment_curve(6), (3, 3), "lk2").value == 1
    assert class_sum(moment_curve(6), (3, 3), "maxlk").value == 1


def test_class_sum_errors(k7):
    with pytest.raises(InvalidClassError):
        k7.class_sum(4, 4, "lk2")
    with pytest.raises(InvalidClassError):
        k7.class_sum(7, None, "lk2")
    with pytest.raises(InvalidClassError):
        k7.class_sum(3, 4, "a2")
    with pytest.raises(ValueError):
        k7.class_sum(3, 4, "bogus")


def test_moment_k3_trivial():
    a = Analysis(moment_curve(3))
    assert a.class_sum(3, None, "a2").value == 0


@pytest.mark.parametrize("seed", range(2))
def test_fast_path_matches_diagrams(seed):
    a = Analysis(random_embedding(7, seed))
    for pair in enumerate_disjoint_pairs(7, 3, 4):
        assert a.lk(pair) == linking_number(extract_link_diagram(a.scene, pair))
    for cyc in enumerate_cycles(7, 7)[::3]:
        assert a.a2(cyc) == a2(gauss_diagram(extract_link_diagram(a.scene, [cyc])))
    stats = a.lk_stats(3, 4)
    assert stats.count == 105
    assert stats.total_sq == sum(v * v for _, v in a.iter_lk(3, 4))
    assert a.knot_stats(7).total == sum(v for _, v in a.iter_a2(7))


def test_jobs_do_not_change_results():
    e = random_embedding(8, 4)
    one, many = Analysis(e, jobs=1), Analysis(e, jobs=3)
    for p, q in [(3, 3), (3, 5), (4, 4)]:
        assert one.lk_stats(p, q) == many.lk_stats(p, q)
    assert one.knot_stats(8) == many.knot_stats(8)
    assert one.knot_stats(5) == many.knot_stats(5)


def test_moment_k8_all_hold(k8):
    reports = verify_all(k8)
    assert reports and all(r.status == "holds" for r in reports)
    ident = [r for r in verify_identities(k8)]
    assert all(r.lhs == r.rhs for r in ident)


def test_random_k7_all_hold():
    reports = verify_all(random_embedding(7, 5))
    assert {r.claim_id for r in reports} >= {"lk2-split-identity", "lk2-total-identity", "lk2-34-identity",
                                            "a2-lk2-identity", "a2-hamiltonian-congruence"}
    assert all(r.status == "holds" for r in reports)


def test_congruence_residues(k7, k8):
    got = {(r.claim_id, r.p, r.q): (r.lhs, r.witness) for r in verify_congruences(k7)}
    assert got[("lk2-split-congruence", 3, 4)] == (2, "mod 4")
    got = {(r.claim_id, r.p, r.q): (r.lhs, r.witness) for r in verify_congruences(k8)}
    assert got[("lk2-split-congruence", 3, 5)] == (0, "mod 8")
    assert got[("lk2-split-congruence", 4, 4)] == (0, "mod 4")


def test_bounds_at_equality(k7, k8):
    rep = {(r.claim_id, r.p, r.q): r for r in verify_bounds_and_parities(k8)}
    r = rep[("lk2-split-lower-bound", 4, 4)]
    assert (r.lhs, r.rhs) == (56, 56)
    assert rep[("lk2-split-rectilinear-upper-bound", 4, 4)].rhs == 168
    rep = {r.claim_id: r for r in verify_bounds_and_parities(k7)}
    assert rep["a2-rectilinear-lower-bound"].lhs == rep["a2-rectilinear-lower-bound"].rhs


class Corrupted(Analysis):
    """Reports one extra unit of lk^2 on the (3,4) class."""

    def lk_stats(self, p, q):
        s = super().lk_stats(p, q)
        if (p, q) == (3, 4):
            return LkStats(s.count, s.total, s.total_sq + 1, s.max_abs, s.max_witness, s.odd_witness)
        return s


def test_corrupted_sum_is_violated():
    a = Corrupted(moment_curve(7))
    bad = {r.claim_id: r for r in verify_all(a) if r.status == "violated"}
    assert "lk2-split-identity" in bad
    r = bad["lk2-split-identity"]
    assert (r.lhs, r.rhs) == (15, 14)
    assert "lk2-split-congruence" in bad


def test_bent_embedding_skips_rectilinear_claims(hopf_k6):
    reports = verify_all(hopf_k6)
    skipped = [r for r in reports if r.status == "skipped"]
    assert {r.claim_id for r in skipped} >= {"k6-rectilinear-hopf-count", "six-stick-dichotomy",
                                            "five-stick-triviality"}
    assert all(r.witness == "skipped: not rectilinear" for r in skipped)
    assert all(r.status == "holds" for r in reports if r.status != "skipped")


def test_small_n_rejected():
    with pytest.raises(ValueError):
        verify_identities(moment_curve(5))


@pytest.mark.parametrize("n", [6, 7])
def test_moment_k_n_triangle_sum(n):
    assert Analysis(moment_curve(n)).lk2(3, 3) == comb(n, 6)
