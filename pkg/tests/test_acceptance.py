"""Acceptance criteria 1-10, one test each.

Each test records a PASS/FAIL line shown in the pytest terminal summary.
Run as a script to print the same lines without pytest:

    python tests/test_acceptance.py
"""
import json
import math
import sys

import mpmath
import pytest

from renbo import checks, cli, heavy
from renbo.binding import PhysicalParams

try:
    from conftest import record
except ImportError:  # script mode from another directory
    def record(criterion, passed, detail):
        pass


def _summarize(results):
    bad = [c for c in results if not c.passed]
    worst = max(results, key=lambda c: c.value / c.tol if c.tol > 0 else (0.0 if c.passed else math.inf))
    detail = f"{len(results) - len(bad)}/{len(results)} checks; tightest: {worst.name} = {worst.value:.3g} (tol {worst.tol:g})"
    if bad:
        detail += "; failed: " + ", ".join(c.name for c in bad)
    return not bad, detail


def criterion_1():
    return _summarize(checks.binding_checks())


def criterion_2():
    return _summarize(checks.derivative_checks())


def criterion_3():
    return _summarize(checks.quadrature_checks())


def criterion_4():
    return _summarize(checks.coefficient_checks())


def criterion_5():
    fits = checks.adjudication()
    ok, detail = _summarize(checks.adjudication_checks(fits))
    found = {f["topic"]: f for f in checks.adjudication_findings(fits)}
    d, t = found["(1_d) coefficient"], found["centrifugal coefficient beta^2"]
    reported = all(math.isfinite(x["extracted"]) and x["claimed"] is not None for x in (d, t))
    detail += f"; (1_d) {d['extracted']:.6f} vs claimed {d['claimed']:.6f}; total {t['extracted']:.6f} vs claimed {t['claimed']:.6f}"
    return ok and reported, detail


def criterion_6():
    ok, detail = _summarize(checks.spectrum_checks())
    note = checks.energy_finding(PhysicalParams.reduced(1000.0), 5.0 / 12.0)
    ok = ok and abs(note["ratio"] - 4.0) < 1e-12 and "quarter" in note["note"]
    return ok, detail + f"; E_g note ratio {note['ratio']:.12g}"


def criterion_7():
    return _summarize(checks.expectation_checks())


def criterion_8():
    ok, detail = _summarize(checks.correction_checks())
    # independent Hurwitz zeta from mpmath
    beta = math.sqrt(5.0 / 12.0)
    p = PhysicalParams.reduced(1000.0)
    var = heavy.expect_log2_z(p, 5.0 / 12.0) - heavy.expect_log_z(p, 5.0 / 12.0) ** 2
    err = abs(var - float(mpmath.zeta(2, 2 * beta + 2)))
    return ok and err < 1e-10, detail + f"; variance vs mpmath zeta {err:.2g}"


def criterion_9():
    return _summarize(checks.cross_checks())


def criterion_10(tmpdir):
    import os

    out = os.path.join(tmpdir, "verify.json")
    code = cli.main(["verify", "--out", out])
    with open(out, encoding="utf-8") as fh:
        doc = json.load(fh)
    topics = {f["topic"] for f in doc["findings"]}
    adjud = {"(1_d) coefficient", "centrifugal coefficient beta^2"} <= topics
    texts = []
    for i in range(2):
        path = os.path.join(tmpdir, f"run{i}.csv")
        cli.main(["spectrum", "--format", "csv", "--levels", "2", "--out", path])
        with open(path, "rb") as fh:
            texts.append(fh.read())
    same = texts[0] == texts[1]
    detail = f"verify exit {code}, {doc['summary']['checks']} checks, failed {doc['summary']['failed']}; adjudication findings {'present' if adjud else 'missing'}; repeat run byte-identical {same}"
    return code == 0 and not doc["summary"]["failed"] and adjud and same, detail


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.slow
@pytest.mark.parametrize("k", range(1, 10))
def test_criterion(k):
    passed, detail = CRITERIA[k - 1]()
    record(k, passed, detail)
    assert passed, detail


@pytest.mark.slow
def test_criterion_10(tmp_path):
    passed, detail = criterion_10(str(tmp_path))
    record(10, passed, detail)
    assert passed, detail


if __name__ == "__main__":
    import tempfile

    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        passed, detail = fn()
        failed += not passed
        print(f"criterion {k:2d}: {'PASS' if passed else 'FAIL'}  {detail}", flush=True)
    with tempfile.TemporaryDirectory() as d:
        passed, detail = criterion_10(d)
    failed += not passed
    print(f"criterion 10: {'PASS' if passed else 'FAIL'}  {detail}")
    sys.exit(1 if failed else 0)
