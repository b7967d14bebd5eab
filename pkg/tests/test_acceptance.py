"""Acceptance gate: six end-to-end criteria, one verdict line each.

The heavy artifacts (the descent sweep up to 5000 and the big reference-table
groups) are computed once in module fixtures and shared between criteria.
Every criterion prints exactly one ACCEPTANCE line; details that matter for
auditing (escape reports, suite tallies) print above it.
"""

import math
import random
import subprocess
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import product as iter_product

import numpy as np
import pytest

from heronselmer.checks import run_all
from heronselmer.cli import TABLE_ROWS, main, report_from_json
from heronselmer.curve import DescentPair, build_curve, torsion_image
from heronselmer.errors import HypothesisFailed, NotSquarefree
from heronselmer.formula import predict
from heronselmer.localsolve import (
    HomogeneousSpace,
    LocalSolveConfig,
    frontier_at_level,
)
from heronselmer.selmer import compute_selmer

SWEEP_LIMIT = 5000


def conclude(label, passed, detail=""):
    line = "ACCEPTANCE %s: %s" % (label, "PASS" if passed else "FAIL")
    if detail:
        line += " (%s)" % detail
    print(line)
    assert passed, line


def _group_summary(n):
    group = compute_selmer(build_curve(n), prune_by_torsion=True)
    return n, group.rank, tuple(sorted(p.as_tuple() for p in group.elements))


def _qualifying(lo, hi):
    out = []
    for n in range(lo, hi + 1):
        try:
            build_curve(n)
        except (HypothesisFailed, NotSquarefree):
            continue
        out.append(n)
    return out


@pytest.fixture(scope="module")
def sweep_groups():
    ns = _qualifying(2, SWEEP_LIMIT)
    with ProcessPoolExecutor(max_workers=8) as pool:
        rows = list(pool.map(_group_summary, ns, chunksize=8))
    return {n: (rank, elements) for n, rank, elements in rows}


@pytest.fixture(scope="module")
def table_groups(sweep_groups):
    table_ns = [math.prod(row[0]) for row in TABLE_ROWS]
    extra = sorted(n for n in table_ns if n not in sweep_groups)
    with ProcessPoolExecutor(max_workers=len(extra)) as pool:
        rows = list(pool.map(_group_summary, extra))
    groups = {n: sweep_groups[n] for n in table_ns if n in sweep_groups}
    groups.update({n: (rank, elements) for n, rank, elements in rows})
    return groups


def test_criterion_1_reference_table_reproduction(capsys):
    started = time.monotonic()
    code = main(["verify-table", "--json"])
    elapsed = time.monotonic() - started
    payload = report_from_json(capsys.readouterr().out)
    rows = payload["rows"]
    counts = payload["counts"]
    ranks_exact = all(r["rank_computed"] == r["rank_printed"] for r in rows)
    corrected = sorted(r["n"] for r in rows if r["status"] == "PASS-WITH-CORRECTION")
    conclude(
        "criterion 1 (reference table: all 20 ranks reproduced, two rows flagged PASS-WITH-CORRECTION)",
        code == 0
        and len(rows) == 20
        and ranks_exact
        and counts == {"PASS": 18, "PASS-WITH-CORRECTION": 2, "FAIL": 0}
        and corrected == [1241, 7770]
        and elapsed < 300.0,
        "%d PASS, %d corrected, %.0fs" % (counts["PASS"], counts["PASS-WITH-CORRECTION"], elapsed),
    )


def test_criterion_2_formula_agrees_with_descent_up_to_5000(sweep_groups):
    hard_mismatches = []
    flagged = []
    for n in sorted(sweep_groups):
        rank = sweep_groups[n][0]
        prediction = predict(build_curve(n))
        if prediction.discrepancy:
            flagged.append((n, prediction.rank, rank))
            if rank != prediction.span_rank:
                hard_mismatches.append((n, rank, prediction.span_rank))
        elif rank != prediction.rank:
            hard_mismatches.append((n, rank, prediction.rank))
    for n, formula_rank, descent_rank in flagged:
        print(
            "criterion 2 escape: n=%d formula rank %d vs descent rank %d "
            "(descent authoritative)" % (n, formula_rank, descent_rank)
        )
    conclude(
        "criterion 2 (closed-form rank equals descent rank for every qualifying n <= 5000)",
        len(sweep_groups) == 581 and not hard_mismatches,
        "%d instances, %d reported escapes, mismatches %s"
        % (len(sweep_groups), len(flagged), hard_mismatches or "none"),
    )


def test_criterion_3_property_suites_report_zero_violations():
    results = run_all(2, SWEEP_LIMIT)
    for result in results:
        print(
            "suite %-40s checked=%-7d violations=%d"
            % (result["name"], result["checked"], len(result["violations"]))
        )
        for violation in result["violations"][:10]:
            print("  violation: %s" % (violation,))
    conclude(
        "criterion 3 (selftest property suites, zero violations)",
        all(result["checked"] > 0 and not result["violations"] for result in results),
        ", ".join("%s=%d" % (r["name"], r["checked"]) for r in results),
    )


def _squarefree_small(x):
    x = abs(x)
    d = 2
    while d * d <= x:
        if x % (d * d) == 0:
            return False
        d += 1
    return True


def _c4_corpus(count=50, seed=20260813):
    """Fixed corpus of small spaces. Coordinates scale by squares of l-adic
    units, so coefficients stay squarefree; b1 is kept coprime to b2 and to
    n because shared small primes inflate the solution sets past anything an
    exhaustive oracle can enumerate at level 3."""
    rng = random.Random(seed)
    spaces = []
    while len(spaces) < count:
        b1 = rng.choice([-1, 1]) * rng.randint(1, 60)
        b2 = rng.choice([-1, 1]) * rng.randint(1, 60)
        n = rng.randint(1, 50)
        if not (_squarefree_small(b1) and _squarefree_small(b2)):
            continue
        if math.gcd(b1, b2) != 1 or math.gcd(b1, n) != 1:
            continue
        spaces.append((b1, b2, n))
    return spaces


def _oracle_encodings(b1, b2, n, l, m):
    """Every primitive solution of the quadric pair modulo l^m, encoded in
    base l^m, found by exhausting (z0, z1) and reading matching z2, z3 from
    sorted value tables. Independent of the survivor machine."""
    M = l**m
    res = np.arange(M, dtype=np.int64)
    sq = (res * res) % M
    a1 = (b1 % M) * sq % M  # b1 z1^2
    v2 = (b2 % M) * sq % M  # b2 z2^2
    v3 = (b1 * b2 % M) * sq % M  # b1 b2 z3^2
    nn = (n * n) % M
    order2 = np.argsort(v2, kind="stable")
    sorted2 = v2[order2]
    order3 = np.argsort(v3, kind="stable")
    sorted3 = v3[order3]

    chunks = []
    block = max(1, 500_000 // M)
    for z0_start in range(0, M, block):
        z0 = np.repeat(res[z0_start : z0_start + block], M)
        z1 = np.tile(res, min(block, M - z0_start))
        t1 = (a1[z1] - sq[z0]) % M
        t2 = (a1[z1] + nn * sq[z0]) % M
        left2 = np.searchsorted(sorted2, t1, side="left")
        cnt2 = np.searchsorted(sorted2, t1, side="right") - left2
        left3 = np.searchsorted(sorted3, t2, side="left")
        cnt3 = np.searchsorted(sorted3, t2, side="right") - left3
        total = cnt2 * cnt3
        keep = np.nonzero(total)[0]
        if keep.size == 0:
            continue
        tot = total[keep]
        starts = np.concatenate(([0], np.cumsum(tot[:-1])))
        rows = int(tot.sum())
        rank = np.arange(rows, dtype=np.int64) - np.repeat(starts, tot)
        c3r = np.repeat(cnt3[keep], tot)
        z2v = order2[np.repeat(left2[keep], tot) + rank // c3r]
        z3v = order3[np.repeat(left3[keep], tot) + rank % c3r]
        z0v = z0[np.repeat(keep, tot)]
        z1v = z1[np.repeat(keep, tot)]
        primitive = ((z0v % l) != 0) | ((z1v % l) != 0) | ((z2v % l) != 0) | ((z3v % l) != 0)
        encoded = ((z0v * M + z1v) * M + z2v) * M + z3v
        chunks.append(encoded[primitive])
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(chunks))


def _machine_encodings(space, l, m, config):
    frontier = frontier_at_level(space, l, m, config)
    M = l**m
    if not frontier:
        return np.empty(0, dtype=np.int64)
    units = np.arange(M, dtype=np.int64)
    units = units[units % l != 0]
    out = []
    reps = np.array(frontier, dtype=np.int64)
    for start in range(0, len(reps), 256):
        block = reps[start : start + 256]
        tuples = (units[:, None, None] * block[None, :, :]) % M
        encoded = (
            (tuples[..., 0] * M + tuples[..., 1]) * M + tuples[..., 2]
        ) * M + tuples[..., 3]
        out.append(encoded.ravel())
    return np.sort(np.concatenate(out))


def _literal_encodings(b1, b2, n, l, m):
    M = l**m
    found = []
    for z0, z1, z2, z3 in iter_product(range(M), repeat=4):
        if z0 % l == 0 and z1 % l == 0 and z2 % l == 0 and z3 % l == 0:
            continue
        if (b1 * z1 * z1 - b2 * z2 * z2 - z0 * z0) % M:
            continue
        if (b1 * z1 * z1 - b1 * b2 * z3 * z3 + n * n * z0 * z0) % M:
            continue
        found.append(((z0 * M + z1) * M + z2) * M + z3)
    return np.array(sorted(found), dtype=np.int64)


def _c4_worker(task):
    b1, b2, n, l = task
    space = HomogeneousSpace(b1, b2, n)
    config = LocalSolveConfig()
    results = []
    for m in (1, 2, 3):
        machine = _machine_encodings(space, l, m, config)
        oracle = _oracle_encodings(b1, b2, n, l, m)
        agree = bool(np.array_equal(machine, oracle))
        literal_agrees = True
        if (l**m) ** 4 <= 10_000:
            literal_agrees = bool(np.array_equal(oracle, _literal_encodings(b1, b2, n, l, m)))
        results.append((m, agree, literal_agrees, int(machine.size)))
    return task, results


def test_criterion_4_survivor_machine_matches_exhaustive_enumeration():
    corpus = _c4_corpus()
    tasks = [(b1, b2, n, l) for (b1, b2, n) in corpus for l in (2, 3, 5, 7, 11, 13)]
    combos = 0
    disagreements = []
    with ProcessPoolExecutor(max_workers=4) as pool:
        for task, results in pool.map(_c4_worker, tasks, chunksize=3):
            for m, agree, literal_agrees, _ in results:
                combos += 1
                if not (agree and literal_agrees):
                    disagreements.append((task, m))
    conclude(
        "criterion 4 (survivor machine equals exhaustive enumeration, l <= 13, level <= 3, 50 spaces)",
        combos == 50 * 6 * 3 and not disagreements,
        "%d combos, disagreements %s" % (combos, disagreements or "none"),
    )


def test_criterion_5_selmer_sets_are_groups(sweep_groups, table_groups):
    merged = dict(sweep_groups)
    merged.update(table_groups)
    violations = []
    for n in sorted(merged):
        rank, element_tuples = merged[n]
        curve = build_curve(n)
        elements = {DescentPair(a, b) for a, b in element_tuples}
        if not torsion_image(curve) <= elements:
            violations.append((n, "torsion image escapes"))
        if len(elements) != 2 ** (2 + rank):
            violations.append((n, "size is not 2^(2+rank)"))
        if any(x.mul(y) not in elements for x in elements for y in elements):
            violations.append((n, "not closed under multiplication"))
    conclude(
        "criterion 5 (every computed Selmer set is a torsion-containing group of size 2^(2+rank))",
        len(merged) == 581 + 5 and not violations,
        "%d groups, violations %s" % (len(merged), violations or "none"),
    )


def test_criterion_6_jobs_do_not_change_json_bytes():
    base = [sys.executable, "-m", "heronselmer.cli"]
    commands = (
        ["analyze", "391", "--json"],
        ["analyze", "2310", "--json", "--verbose-local"],
        ["search", "2", "120", "--json"],
    )
    stable = True
    for command in commands:
        runs = [
            subprocess.run(base + command + ["--jobs", jobs], capture_output=True)
            for jobs in ("1", "8")
        ]
        if any(r.returncode != 0 for r in runs) or runs[0].stdout != runs[1].stdout:
            stable = False
            print("criterion 6 divergence: %s" % " ".join(command))
    conclude(
        "criterion 6 (--jobs 1 and --jobs 8 emit byte-identical JSON)",
        stable,
        "%d command pairs compared" % len(commands),
    )
