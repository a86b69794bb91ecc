"""Acceptance criteria 1-10 over the full grid, one pass/fail line per criterion."""

from __future__ import annotations

import re
import subprocess
import sys
import time
from collections import Counter

import pytest

from kummer_genus.fq_arith import make_field
from kummer_genus.genus_core import ComponentSpec, ExtensionSpec, bookkeeping
from kummer_genus.rt_poly import IrreduciblePoly, Poly
from kummer_genus.suites import ACCEPTANCE_GRID, run_suite

from conftest import record

SEED = 0
TIME_LIMIT = 60.0

CRITERION_OF = {
    "ramification": 1,
    "constant_degree": 2,
    "geE_degree": 3,
    "pipeline": 4, "oracle": 4, "E_in_gE_in_geE": 4, "K_in_gK_in_geK": 4,
    "gE_unramified": 4, "gK_unramified": 4, "geE_unramified": 4,
    "gE_split_infinity": 4, "gK_split_infinity": 4, "explicit_form_when_m_eq_t": 4,
    "gEH_in_gE": 4, "geE_character_route": 4, "geK_oracle": 4, "geK_contains_K": 4,
    "e_inf_gE": 5, "e_inf_E": 5, "E_K_same_ramification": 5, "ef_product": 5, "f_inf_is_deg_P_inf": 5,
    "geK_gK_degree": 6, "geK_gK_divides_q_minus_1": 6, "f_inf_geK_over_gK": 6,
    "e_inf_geK_over_gK": 6, "gK_constants": 6,
    "geK_constants": 7, "hplus_constants": 7,
    "compositum_law": 8,
    "star_sensitivity": 9, "ramified_over_gEH_implies_geE_eq_gE": 9,
    "tied_pivot_keeps_ramification": 9, "exceptional_gE_eq_geE": 9,
}


def criterion_of(check: str) -> int:
    """Strip component and per-l prefixes, then look up the check family."""
    name = re.sub(r"^(components\[\d+\]\.|compositum\.)", "", check)
    name = re.sub(r"^l\d+\.", "", name)
    for key in (name, name.split(".")[0], name.split(".")[-1]):
        if key in CRITERION_OF:
            return CRITERION_OF[key]
    raise KeyError(check)


@pytest.fixture(scope="module")
def acceptance():
    start = time.perf_counter()
    result = run_suite("acceptance", SEED)
    elapsed = time.perf_counter() - start
    by_criterion: Counter = Counter(criterion_of(f.check) for f in result.failures)
    return result, elapsed, by_criterion


def verdict(number: int, ok: bool, detail: str) -> None:
    record(number, ok, detail)
    assert ok, detail


def test_criterion_1_ramification(acceptance):
    result, elapsed, bad = acceptance
    ok = bad[1] == 0 and elapsed < TIME_LIMIT and result.stats["ramification"] > 0
    verdict(1, ok, f"{result.stats['ramification']} comparisons, {bad[1]} disagreements, "
                   f"full grid in {elapsed:.1f}s")


def test_criterion_2_constant_degree(acceptance):
    result, _, bad = acceptance
    expected = sum(q - 1 for q, _, _ in ACCEPTANCE_GRID)
    ok = bad[2] == 0 and result.stats["constants"] == expected
    verdict(2, ok, f"{result.stats['constants']}/{expected} constants, {bad[2]} disagreements")


def test_criterion_3_extended_genus_degree(acceptance):
    result, _, bad = acceptance
    verdict(3, bad[3] == 0, f"{result.trials} trials, {bad[3]} degree mismatches")


def test_criterion_4_oracle(acceptance):
    result, _, bad = acceptance
    s = result.stats
    branches = {b: s[f"branch.{b}"] for b in ("before", "pivot", "after", "after-lower")}
    ok = bad[4] == 0 and all(branches.values()) and s["oracle.skipped"] == 0
    verdict(4, ok, f"{s['oracle']} oracle runs, {s['oracle.skipped']} skipped, branches {branches}, "
                   f"{bad[4]} mismatches")


def test_criterion_5_infinity(acceptance):
    result, _, bad = acceptance
    verdict(5, bad[5] == 0, f"{bad[5]} infinity mismatches")


def test_criterion_6_bookkeeping(acceptance):
    result, _, bad = acceptance
    verdict(6, bad[6] == 0, f"{bad[6]} bookkeeping mismatches")


def test_criterion_7_hplus_constants(acceptance):
    result, _, bad = acceptance
    F = make_field(5)
    T = IrreduciblePoly(Poly.of(F, (0, 1)))
    rep = bookkeeping(ExtensionSpec(F, (ComponentSpec(2, 2, F(2), ((T, 1),)),))).components[0]
    thread = rep.constants["KH+"]
    s = result.stats
    ok = bad[7] == 0 and thread == 4 and s["case.Exceptional"] > 0
    verdict(7, ok, f"worked thread gives {thread}, {s['case.Exceptional']} Exceptional instances, "
                   f"routes {dict((k, v) for k, v in s.items() if k.startswith('hplus.'))}, "
                   f"{bad[7]} mismatches")


def test_criterion_8_compositum(acceptance):
    result, _, bad = acceptance
    pairs = result.stats["pairs"]
    ok = bad[8] == 0 and pairs >= 100 * len(ACCEPTANCE_GRID)
    verdict(8, ok, f"{pairs} pairs ({result.stats['pairs.oracle']} also by oracle), {bad[8]} mismatches")


def test_criterion_9_edge_cases(acceptance):
    result, _, bad = acceptance
    s = result.stats
    ok = bad[9] == 0 and s["star.sensitive"] > 0 and s["star.insensitive"] > 0
    verdict(9, ok, f"star sensitive {s['star.sensitive']}, insensitive {s['star.insensitive']}, "
                   f"conditional equality checked {s['cond.ramified_over_gEH']} times, {bad[9]} mismatches")


def test_criterion_10_reproducible():
    cmd = [sys.executable, "-m", "kummer_genus", "verify", "--suite", "kummer-small", "--seed", "7"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout
    ok = same and all(r.returncode == 0 for r in runs) and runs[0].stdout
    verdict(10, bool(ok), f"byte-identical={same}, exit codes {[r.returncode for r in runs]}, "
                          f"{len(runs[0].stdout)} bytes")


def test_every_failure_maps_to_a_criterion(acceptance):
    result, _, _ = acceptance
    for f in result.failures:
        criterion_of(f.check)
    for name in ("components[0].gE_unramified", "compositum.l2.geE_degree", "oracle.gK",
                 "ramification.geK", "compositum_law.oracle", "compositum.l3.geK_oracle"):
        assert 1 <= criterion_of(name) <= 9
