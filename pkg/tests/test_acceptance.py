"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` (or `satgame verify`).
The fuzzed-claims criterion plays ten thousand games and dominates the runtime.
"""

from satgame.analysis import f_closed, f_sequence, tree_score_formula
from satgame.cli import main as cli_main
from satgame.engine import Player
from satgame.families import PathFamily, TreeFamily
from satgame.solver import solve
from satgame.verify import (
    Check,
    anchor_checks,
    classifier_checks,
    naive_value,
    response_checks_p4,
    response_checks_p5,
    solve_window_checks,
    suite_claims,
    suite_pass,
)
from satgame.analysis import classify_p4_saturated, classify_p5_saturated

BOTH = (Player.PROLONGER, Player.SHORTENER)


def report(criterion: str, checks: list[Check]) -> None:
    failed = [c for c in checks if not c.passed]
    status = "PASS" if not failed else "FAIL"
    print(f"{status} {criterion} ({len(checks)} checks)")
    for c in failed:
        print(f"  {c.render()}")
    assert not failed, f"{criterion}: {len(failed)} of {len(checks)} checks failed"


def test_criterion_1_p4_window_and_anchors():
    checks = solve_window_checks("p4", PathFamily(4), "2.2", range(3, 9), time_limit=60.0)
    checks += anchor_checks()
    report("criterion 1: 4-path solve windows with oracle anchors", checks)


def test_criterion_2_p5_window():
    checks = solve_window_checks("p5", PathFamily(5), "2.3", range(4, 9), time_limit=300.0)
    report("criterion 2: 5-path solve windows", checks)


def test_criterion_3_tree_formula_exact():
    checks = []
    for k in (3, 4, 5):
        for n in range(k, 10):
            if n % (k - 1) == 1 % (k - 1):
                continue
            expected = tree_score_formula(n, k)
            for first in BOTH:
                got = solve(n, TreeFamily(k), first_mover=first).score
                checks.append(
                    Check("trees", f"k={k} n={n} first={first.value}",
                          got == expected, f"solver={got} formula={expected}")
                )
    report("criterion 3: tree-game scores equal the closed formula", checks)


def test_criterion_4_pass_variant_floor():
    report("criterion 4: pass-variant floor against the traceable script", suite_pass())


def test_criterion_5_one_sided_guarantees():
    checks = response_checks_p4(8) + response_checks_p5(8)
    report("criterion 5: one-sided strategy guarantees", checks)


def test_criterion_6_classifier_oracle_equivalence():
    checks = classifier_checks("p4", PathFamily(4), classify_p4_saturated, 7)
    checks += classifier_checks("p5", PathFamily(5), classify_p5_saturated, 8)
    report("criterion 6: classifier equals empty-legal-move oracle", checks)


def test_criterion_7_claim_invariants_fuzzed():
    checks = suite_claims(games=10000, n_max=20, seed=0)
    report("criterion 7: strategy claim invariants, zero violations", checks)


def test_criterion_8_algebra_and_traces():
    checks = []
    bad = sum(
        1
        for k in range(2, 51)
        for n in (10, 100, 1000)
        for i in range(k)
        if f_sequence(n, k)[i] != f_closed(n, k, i)
    )
    checks.append(Check("algebra", "f-recurrence-vs-closed-form", bad == 0,
                        f"{bad} mismatches over k<=50"))
    from satgame.verify import suite_algebra

    checks += suite_algebra(seed=0, games=600)[1:]  # the two trace-inequality rows
    report("criterion 8: excess-degree algebra and trace inequalities", checks)


def test_criterion_9_determinism(tmp_path):
    checks = []
    # byte-identical verify reports for equal seeds
    outs = []
    for name in ("a.txt", "b.txt"):
        path = tmp_path / name
        code = cli_main(["verify", "--suite", "claims", "--games", "60",
                         "--n-max", "12", "--seed", "5", "--out", str(path)])
        assert code == 0
        outs.append(path.read_bytes())
    checks.append(Check("determinism", "verify-byte-identical", outs[0] == outs[1],
                        f"{len(outs[0])} bytes"))
    outs = []
    for name in ("c.txt", "d.txt"):
        path = tmp_path / name
        cli_main(["verify", "--suite", "algebra", "--games", "40",
                  "--seed", "7", "--out", str(path)])
        outs.append(path.read_bytes())
    checks.append(Check("determinism", "verify-algebra-byte-identical", outs[0] == outs[1],
                        f"{len(outs[0])} bytes"))
    # parallel and serial solver agreement
    for fam, n in [(PathFamily(4), 7), (PathFamily(5), 7), (TreeFamily(4), 8)]:
        serial = solve(n, fam, workers=1).score
        parallel = solve(n, fam, workers=4).score
        checks.append(Check("determinism", f"parallel n={n}", serial == parallel,
                            f"serial={serial} parallel={parallel}"))
    report("criterion 9: determinism", checks)
