"""The twelve acceptance criteria, each run at full scale with its time budget.

Run directly (python tests/test_acceptance.py) for a plain pass/fail listing.
"""

import pytest

from eigenkummer.sweeps import run_suite

# (number, suite, description, seconds budget or None)
CRITERIA = [
    (1, "lemma110", "[M:L] = p^(n-c) against multiplicative orders", 5.0),
    (2, "remark113", "|H^i(G(M/L), mu_p^k)| formula against norm/difference cohomology", 5.0),
    (3, "lemma111", "H^1 = H^2 = 1 at k = n", None),
    (4, "cor112", "F*/F*^(p^n) -> fixed classes of M is bijective", None),
    (5, "cor25", "theta-component surjects onto the theta'-component mod p", None),
    (6, "idempotents", "group-ring idempotents orthogonal, complete, eigen", 2.0),
    (7, "relabel", "relabeling map is a bijective algebra homomorphism", None),
    (8, "ex42", "(x, y) over the F_4 descriptor is Type1 with index 9", None),
    (9, "mixedex", "F(p) residue labels and value groups for V1, V2", None),
    (10, "lemma19", "eigen-containment vs normality on built-in groups", 60.0),
    (11, "prop46", "induce-and-project bijection", None),
    (12, "cohom_oracle", "cyclic cohomology equals cochain cohomology", None),
]


def evaluate(number, suite, budget):
    r = run_suite(suite)
    ok = r["instances"] > 0 and r["failures"] == 0
    timing = "" if budget is None else f", budget {budget:.0f}s"
    if budget is not None and r["seconds"] >= budget:
        ok = False
    line = (f"criterion {number:2d} {suite:<13} {'PASS' if ok else 'FAIL'}  "
            f"{r['instances'] - r['failures']}/{r['instances']} rows agree, {r['seconds']:.2f}s{timing}")
    return ok, line, r


@pytest.mark.parametrize("number,suite,desc,budget", CRITERIA, ids=[f"{n:02d}-{s}" for n, s, _, _ in CRITERIA])
def test_criterion(number, suite, desc, budget, acceptance_log):
    ok, line, r = evaluate(number, suite, budget)
    print(line)
    acceptance_log.append(line)
    bad = [row for row in r["rows"] if not row["agree"]][:5]
    assert r["instances"] > 0, f"{suite}: no instances"
    assert not bad, f"{suite}: {r['failures']} failing rows, first: {bad}"
    if budget is not None:
        assert r["seconds"] < budget, f"{suite}: {r['seconds']:.2f}s exceeds {budget}s"
    assert ok


if __name__ == "__main__":
    import sys

    all_ok = True
    for number, suite, desc, budget in CRITERIA:
        ok, line, _ = evaluate(number, suite, budget)
        all_ok &= ok
        print(line, flush=True)
    sys.exit(0 if all_ok else 1)
