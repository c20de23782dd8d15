"""Exit criteria.  Each test prints one PASS/FAIL line in the terminal summary."""

import random
import time
from fractions import Fraction
from itertools import combinations

import pytest

from bitflip import constructions as cons
from bitflip.cli import main
from bitflip.decoder import DecoderConfig, TieBreak, decode, monitor_monotonicity
from bitflip.errors import TrivialCodeError
from bitflip.geometry import expansion_check, max_pairwise_intersection
from bitflip.gf2 import column_blocks, dimension, min_distance, nullspace_basis, syndrome
from bitflip.instances import fig1_instance, random_left_regular
from bitflip.spectral import spectral_summary, tanner_distance_bound
from bitflip.verifier import (
    certify_pseudoredundancy,
    explore_runs,
    structural_t3_scan_c5,
    two_error_scan,
    verify_exhaustive,
)

pytestmark = pytest.mark.acceptance

SPECTRAL_TOL = 1e-6
EXPANDER_INSTANCES = 200
EXPANDER_SEED = 2024


class Clock:
    def __init__(self, limit: float):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start

    def check(self, record, label=""):
        record("detail", f"{label}{self.elapsed:.2f}s (limit {self.limit:g}s)")
        assert self.elapsed < self.limit


# Workloads are plain functions so criterion 11 can replay them when run alone.


def _crit1():
    out = {}
    for name, H in (
        ("pg4", cons.projective_plane(4)),
        ("eg4", cons.euclidean_punctured(4)),
        ("pg2", cons.projective_plane(2)),
    ):
        out[name] = (H.ncols, dimension(H), min_distance(H))
    return out


def _crit2():
    out = {}
    for name, H, t in (("pg4", cons.projective_plane(4), 2), ("eg4", cons.euclidean_punctured(4), 2)):
        start = time.perf_counter()
        rep = verify_exhaustive(H, t, "adversarial")
        cert = certify_pseudoredundancy(H, H)
        out[name] = (rep, cert, time.perf_counter() - start)
    return out


def _crit3():
    H = cons.simplex_weight3_matrix(4)
    ref = nullspace_basis(cons.hamming_matrix(4))
    return H, verify_exhaustive(H, 3, "adversarial"), certify_pseudoredundancy(ref, H)


def _crit4():
    return verify_exhaustive(cons.simplex_circulant(4), 3, "adversarial")


def _crit5():
    return {
        m: (
            verify_exhaustive(cons.hamming_circulant(m), 1, "adversarial"),
            certify_pseudoredundancy(cons.cyclic_hamming_matrix(m), cons.hamming_circulant(m)),
        )
        for m in (3, 4)
    }


def _crit7():
    out = {}
    for name, H in (
        ("pg2", cons.projective_plane(2)),
        ("pg4", cons.projective_plane(4)),
        ("eg4", cons.euclidean_punctured(4)),
        ("sw3_4", cons.simplex_weight3_matrix(4)),
    ):
        blocks = column_blocks(H)
        failing = {f.pair for f in two_error_scan(blocks)}
        discrepancies = [
            pair
            for pair in combinations(range(blocks.n), 2)
            if (pair in failing) != (not explore_runs(blocks, pair, "adversarial").passed)
        ]
        rep = verify_exhaustive(blocks, 2, "adversarial")
        out[name] = (len(failing), discrepancies, rep)
    return out


def _crit8():
    blocks = column_blocks(cons.projective_plane(4))
    return structural_t3_scan_c5(blocks), verify_exhaustive(blocks, 3, "adversarial")


def _crit9():
    blocks, support = fig1_instance()
    cfg = DecoderConfig(tie_break=TieBreak("forced_first", 4))
    run = decode(blocks, syndrome(blocks, support), cfg)
    ex = explore_runs(blocks, support, "existential")
    return blocks, support, run, ex


def _max_expansion_t(blocks, alpha):
    d = 0
    while d < blocks.n and expansion_check(blocks, d + 1, alpha).passed:
        d += 1
    return d


def _crit10():
    rng = random.Random(EXPANDER_SEED)
    stats = {"instances": 0, "partial_geometry": 0, "distance_checked": 0, "verify_checked": 0}
    violations = []
    while stats["instances"] < EXPANDER_INSTANCES:
        c = rng.choice([3, 5])
        n = rng.randint(4, 20)
        pg = stats["instances"] % 2 == 1
        r = rng.randint(c + 1, 4 * n if pg else 3 * n)
        blocks = random_left_regular(rng, n, r, c, partial_geometry=pg)
        if blocks is None:
            continue
        stats["instances"] += 1
        stats["partial_geometry"] += pg
        d_half = _max_expansion_t(blocks, Fraction(c, 2))
        try:
            dmin = min_distance(blocks.to_matrix())
        except TrivialCodeError:
            dmin = None  # no nonzero codeword: the distance implication holds vacuously
        if dmin is not None:
            stats["distance_checked"] += 1
            if not dmin > d_half:
                violations.append(("distance", blocks, d_half, dmin))
        d_34 = _max_expansion_t(blocks, Fraction(3 * c, 4))
        if d_34 // 2 >= 1:
            stats["verify_checked"] += 1
        if not verify_exhaustive(blocks, d_34 // 2, "adversarial").passed:
            violations.append(("decoding", blocks, d_34))
    return stats, violations


STEP_WORKLOADS = (_crit2, _crit3, _crit4, _crit5, _crit7, _crit8, _crit9, _crit10)


def test_criterion_01_construction_parameters(record_property):
    """Criterion 1: pg4 = [21,11,6], eg4 = [15,7,5], pg2 = [7,3,4]"""
    with Clock(1.0) as clock:
        got = _crit1()
    record_property("detail", ", ".join(f"{k}={list(v)}" for k, v in got.items()))
    assert got == {"pg4": (21, 11, 6), "eg4": (15, 7, 5), "pg2": (7, 3, 4)}
    clock.check(record_property)


def test_criterion_02_partial_geometry_certificates(record_property, step_monitor):
    """Criterion 2: adversarial t=2 on PG(2,4) and EG(2,4) passes, rho <= 21 and rho <= 15"""
    with monitor_monotonicity(step_monitor):
        got = _crit2()
    pg, eg = got["pg4"], got["eg4"]
    record_property(
        "detail",
        f"pg4 {pg[0].patterns_checked} patterns rho<={pg[1].rho_upper_bound} {pg[2]:.2f}s; "
        f"eg4 {eg[0].patterns_checked} patterns rho<={eg[1].rho_upper_bound} {eg[2]:.2f}s",
    )
    assert pg[0].patterns_checked == 231 and pg[0].passed
    assert eg[0].patterns_checked == 120 and eg[0].passed
    assert pg[1].verdict == "pass" and pg[1].rho_upper_bound == 21
    assert eg[1].verdict == "pass" and eg[1].rho_upper_bound == 15
    assert pg[2] < 5.0 and eg[2] < 5.0


def test_criterion_03_simplex_certificate(record_property, step_monitor):
    """Criterion 3: simplex-w3 m=4 (35x15, c=7, s=1) adversarial t=3 passes, rho <= 35"""
    with Clock(10.0) as clock, monitor_monotonicity(step_monitor):
        H, rep, cert = _crit3()
    blocks = column_blocks(H)
    record_property("detail", f"{rep.patterns_checked} patterns, {len(rep.failures)} failures, rho<={cert.rho_upper_bound}")
    assert (H.nrows, H.ncols, blocks.block_size, max_pairwise_intersection(blocks)) == (35, 15, 7, 1)
    assert rep.patterns_checked == 575 and rep.passed
    assert cert.verdict == "pass" and cert.rho_upper_bound == 35 == 15 * 14 // 6
    clock.check(record_property)


def test_criterion_04_circulant_insufficient(record_property, step_monitor):
    """Criterion 4: simplex-circulant m=4 adversarial t=3 has at least one failure"""
    with Clock(10.0) as clock, monitor_monotonicity(step_monitor):
        rep = _crit4()
    record_property("detail", f"{len(rep.failures)} of {rep.patterns_checked} patterns fail")
    assert rep.patterns_checked == 575 and len(rep.failures) >= 1
    clock.check(record_property)


def test_criterion_05_hamming_circulant(record_property, step_monitor):
    """Criterion 5: hamming-circulant m=3, 4 adversarial t=1 pass, rho <= 7 and rho <= 15"""
    with Clock(1.0) as clock, monitor_monotonicity(step_monitor):
        got = _crit5()
    record_property("detail", ", ".join(f"m={m} rho<={cert.rho_upper_bound}" for m, (_, cert) in got.items()))
    for m, rho in ((3, 7), (4, 15)):
        rep, cert = got[m]
        assert rep.passed and rep.patterns_checked == rho
        assert cert.verdict == "pass" and cert.rho_upper_bound == rho
    clock.check(record_property)


def test_criterion_06_spectral(record_property):
    """Criterion 6: PG(2,q) eigenvalues ((q+1)^2, q) and Tanner distance bound q+2 within 1e-6"""
    details = []
    with Clock(5.0) as clock:
        for q in (2, 3, 4):
            H = cons.projective_plane(q)
            s = spectral_summary(H)
            bound = tanner_distance_bound(s.n, s.c, s.lambda1, s.lambda2)
            d = min_distance(H)
            details.append(f"q={q} l1={s.lambda1:.9g} l2={s.lambda2:.9g} bound={bound:.9g} d={d}")
            assert s.lambda1 == pytest.approx((q + 1) ** 2, abs=SPECTRAL_TOL)
            assert s.lambda2 == pytest.approx(q, abs=SPECTRAL_TOL)
            assert bound == pytest.approx(q + 2, abs=SPECTRAL_TOL)
            assert bound <= d + SPECTRAL_TOL
            if q in (2, 4):
                assert abs(bound - d) < SPECTRAL_TOL
    record_property("detail", "; ".join(details))
    clock.check(record_property)


def test_criterion_07_two_error_equivalence(record_property, step_monitor):
    """Criterion 7: two_error_scan agrees with adversarial verify on every pair"""
    with Clock(30.0) as clock, monitor_monotonicity(step_monitor):
        got = _crit7()
    record_property(
        "detail", ", ".join(f"{k}: {nf} failing pairs, {len(disc)} discrepancies" for k, (nf, disc, _) in got.items())
    )
    for name, (nf, disc, rep) in got.items():
        assert disc == []
        assert nf == len(rep.failures)
    assert got["pg2"][0] == 21
    clock.check(record_property)


def test_criterion_08_three_error_criterion(record_property, step_monitor):
    """Criterion 8: PG(2,4) has a four-line witness and adversarial t=3 fails"""
    with Clock(60.0) as clock, monitor_monotonicity(step_monitor):
        verdict, rep = _crit8()
    w = verdict.witness
    record_property("detail", f"witness lines {w.block_indices if w else None}; verify t=3: {len(rep.failures)} failures")
    assert not verdict.passed and w is not None and len(w.block_indices) == 4
    assert not rep.passed
    assert verdict.passed == rep.passed
    clock.check(record_property)


def test_criterion_09_fig1(record_property, step_monitor):
    """Criterion 9: frame example forced cross-first decode gives |S| = 12,11,10,9,8,5,0"""
    with Clock(1.0) as clock, monitor_monotonicity(step_monitor):
        blocks, support, run, ex = _crit9()
    c, s = blocks.block_size, max_pairwise_intersection(blocks)
    guaranteed = max(t for t in range(blocks.n + 1) if t == 0 or (2 * t - 1) * s < c)
    record_property(
        "detail", f"trace {run.weights()}; existential pass={ex.passed}; weight {len(support)} > guarantee {guaranteed}"
    )
    assert run.trace[0].flipped == (4,)
    assert run.weights() == [12, 11, 10, 9, 8, 5, 0]
    assert run.estimated_error == frozenset(support)
    assert ex.passed
    # the code has dimension 0, so the only radius guarantee is the partial-geometry one
    assert dimension(blocks.to_matrix()) == 0
    assert len(support) > guaranteed
    clock.check(record_property)


def test_criterion_10_expander_properties(record_property, step_monitor):
    """Criterion 10: expansion c/2 implies distance, 3c/4 implies decoding, over 200 instances"""
    with Clock(300.0) as clock, monitor_monotonicity(step_monitor):
        stats, violations = _crit10()
    record_property("detail", f"{stats}, {len(violations)} violations")
    assert stats["instances"] >= EXPANDER_INSTANCES
    assert violations == []
    clock.check(record_property)


def test_criterion_11_monotonicity(record_property, step_monitor):
    """Criterion 11: every step-by-step flip in criteria 2-10 strictly decreased |S|"""
    if step_monitor.flips == 0:
        with monitor_monotonicity(step_monitor):
            for work in STEP_WORKLOADS:
                work()
    record_property("detail", f"{step_monitor.flips} flips over {step_monitor.runs} runs, {len(step_monitor.violations)} violations")
    assert step_monitor.flips > 0
    assert step_monitor.violations == []


def _cli(capsys, argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_criterion_12_determinism(record_property, capsys, tmp_path):
    """Criterion 12: criteria 2, 3, 7 reports are byte-identical for --jobs 1 and --jobs 8"""
    files = {}
    for name, family, param in (
        ("pg2", "pg", ("--q", 2)),
        ("pg4", "pg", ("--q", 4)),
        ("eg4", "eg", ("--q", 4)),
        ("sw3_4", "simplex-w3", ("--m", 4)),
    ):
        files[name] = tmp_path / f"{name}.alist"
        assert _cli(capsys, ["construct", "--family", family, *param, "--out", files[name]])[0] == 0
    commands = [
        ["verify", files["pg4"], "--t", 2, "--mode", "adversarial"],
        ["certify", files["pg4"]],
        ["verify", files["eg4"], "--t", 2, "--mode", "adversarial"],
        ["certify", files["eg4"]],
        ["verify", files["sw3_4"], "--t", 3, "--mode", "adversarial"],
        ["certify", files["sw3_4"]],
    ] + [["verify", files[k], "--t", 2, "--mode", "adversarial"] for k in ("pg2", "pg4", "eg4", "sw3_4")]
    mismatches = 0
    for cmd in commands:
        serial = _cli(capsys, cmd + ["--jobs", 1])
        pooled = _cli(capsys, cmd + ["--jobs", 8])
        again = _cli(capsys, cmd + ["--jobs", 1])
        mismatches += not (serial == pooled == again)
    record_property("detail", f"{len(commands)} reports compared, {mismatches} mismatches")
    assert mismatches == 0
