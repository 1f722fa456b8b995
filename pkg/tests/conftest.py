import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(results):
        checks = results[crit]
        failed = [label for label, ok in checks if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {crit}: {status} ({len(checks) - len(failed)}/{len(checks)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
