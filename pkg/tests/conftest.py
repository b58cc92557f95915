import re

CRITERIA = {
    1: "algorithm equivalence",
    2: "split-oracle equivalence",
    3: "Hoeffding gate",
    4: "obliviousness and memory",
    5: "inference complexity",
    6: "Friedman reproduction",
    7: "Incubation Boost contract",
    8: "drift recovery",
    9: "ARF determinism and replacement",
    10: "harness correctness",
}

_results = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_c(\d\d)_", report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.when == "call" or report.outcome != "passed":
        detail = dict(report.user_properties).get("detail", "")
        if report.outcome == "failed" and not detail:
            detail = report.longreprtext.strip().splitlines()[-1] if report.longreprtext else ""
        prev = _results.get(k)
        if prev is None or prev[0] == "passed":
            _results[k] = (report.outcome, report.duration, detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k, name in CRITERIA.items():
        if k not in _results:
            continue
        outcome, duration, detail = _results[k]
        status = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        tr.write_line(f"[{status}] {k:2d}. {name} ({duration:.1f}s) {detail}")
