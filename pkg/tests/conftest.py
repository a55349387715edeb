import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.CRITERIA):
        if n in mod.RESULTS:
            status = "PASS" if mod.RESULTS[n] else "FAIL"
            terminalreporter.write_line(f"criterion {n}: {status} ({mod.CRITERIA[n][0]})")
