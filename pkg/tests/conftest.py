"""Shared pytest plumbing.

The acceptance tests in ``test_acceptance.py`` each record a single
criterion; the terminal-summary hook below prints one PASS/FAIL line per
criterion at the end of the run so the verdicts are visible even without
``-s``.
"""

_ACCEPTANCE_PREFIX = "test_acceptance.py::test_criterion_"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if getattr(report, "when", "call") not in (None, "call") and outcome == "passed":
                continue
            if _ACCEPTANCE_PREFIX not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            parts = name.split("_")  # test_criterion_<n>_<label words>
            number = int(parts[2])
            label = " ".join(parts[3:])
            status = "PASS" if outcome == "passed" else "FAIL"
            rows.append((number, f"criterion {number} ({label}): {status}"))
    if rows:
        terminalreporter.section("acceptance criteria")
        seen = set()
        for number, line in sorted(rows):
            if number not in seen:
                seen.add(number)
                terminalreporter.write_line(line)
