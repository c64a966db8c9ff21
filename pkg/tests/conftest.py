import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_RESULTS = {}


def pytest_runtest_setup(item):
    table = getattr(item.module, "TOLERANCES", None)
    if table:
        prefix = item.originalname.split("_")[:2]
        item.user_properties.append(("tolerance", table.get("_".join(prefix), "")))


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        tol = dict(report.user_properties).get("tolerance", "")
        ACCEPTANCE_RESULTS[name] = ("PASS" if report.passed else "FAIL", tol)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    width = max(len(n) for n in ACCEPTANCE_RESULTS)
    for name, (status, tol) in sorted(ACCEPTANCE_RESULTS.items()):
        terminalreporter.write_line(f"{status}  {name:<{width}}  [{tol}]")
