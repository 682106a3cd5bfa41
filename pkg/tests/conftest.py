import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        entries = mod.RESULTS[k]
        ok = all(e[0] for e in entries)
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}")
        for _, line in entries:
            terminalreporter.write_line(f"    {line}")
