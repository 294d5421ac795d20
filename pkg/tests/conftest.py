import pytest

# discriminants D with -D fundamental, covering e = 0 (odd), e = 2, e = 3
ALL_D = (3, 4, 7, 8, 11, 15, 19, 20, 23, 24)
SMALL_D = (3, 4, 7, 8)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    tr = terminalreporter
    rows = []
    for status in ("passed", "failed", "error"):
        for rep in tr.stats.get(status, []):
            if "test_acceptance" in rep.nodeid and rep.when == "call":
                rows.append((rep.nodeid.split("::")[-1], status))
    if not rows:
        return
    tr.write_sep("-", "acceptance criteria")
    for name, status in sorted(rows):
        verdict = "PASS" if status == "passed" else "FAIL"
        tr.write_line(f"{name}: {verdict}")
