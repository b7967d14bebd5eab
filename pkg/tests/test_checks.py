"""Property suite internals on ranges small enough for the unit layer."""

import heronselmer.checks as checks
from heronselmer.arith import jacobi
from heronselmer.cli import main
from heronselmer.curve import build_curve
from heronselmer.formula import predict


def test_run_all_is_clean_on_a_small_range():
    results = checks.run_all(2, 250)
    assert [r["name"] for r in results] == [
        "bad-prime-b1-divisors-fail-locally",
        "generator-family-everywhere-solvable",
        "companion-prime-symbol-pattern",
    ]
    for result in results:
        assert result["checked"] > 0
        assert result["violations"] == []


def test_bad_prime_suite_covers_every_flagged_candidate():
    # n=15: 1024 candidates, half carry the 3 (mod 8) prime 3 in b1, plus
    # the single (1,q) probe at the 5 (mod 8) prime 5
    result = checks.check_bad_prime_divisors(15, 15)
    assert result["checked"] == 1024 // 2 + 1
    assert result["violations"] == []


def test_family_suite_checked_count_matches_family_sizes():
    lo, hi = 2, 80
    expected = sum(
        len(predict(curve).generator_family) for curve in checks.hypothesis_range(lo, hi)
    )
    result = checks.check_generator_families(lo, hi)
    assert result["checked"] == expected
    assert result["violations"] == []


def test_symbol_suite_agrees_with_direct_evaluation():
    result = checks.check_companion_symbols(85, 85)
    assert result["checked"] == 2  # p=5 wants -1, p=17 wants +1
    assert result["violations"] == []
    q = build_curve(85).q
    assert jacobi(5, q) == -1
    assert jacobi(17, q) == 1

    even = checks.check_companion_symbols(130, 130)
    assert even["checked"] == 2  # p=5 and p=13 both want +1
    assert even["violations"] == []


def test_hypothesis_range_yields_qualifying_curves_only():
    ns = [curve.value for curve in checks.hypothesis_range(2, 20)]
    assert ns == [2, 3, 5, 6, 10, 11, 14, 15, 19]


def test_selftest_command_wiring(monkeypatch, capsys):
    monkeypatch.setattr(
        checks, "run_all", lambda: [{"name": "stub-suite", "checked": 3, "violations": []}]
    )
    assert main(["selftest"]) == 0
    assert "stub-suite" in capsys.readouterr().out

    monkeypatch.setattr(
        checks,
        "run_all",
        lambda: [{"name": "stub-suite", "checked": 3, "violations": [{"n": 9}]}],
    )
    assert main(["selftest"]) == 1
    assert "violation" in capsys.readouterr().out
