import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion, printed unconditionally."""
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid and getattr(rep, "when", "call") == "call":
                rows[nodeid.split("::")[-1]] = outcome
    if rows:
        terminalreporter.write_sep("=", "acceptance criteria")
        for name in sorted(rows):
            status = "PASS" if rows[name] == "passed" else "FAIL"
            terminalreporter.write_line(f"{status}  {name}")
