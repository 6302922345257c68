import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._acceptance = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    crit = report.user_properties and dict(report.user_properties).get("criterion")
    if not crit:
        return
    results = pytest_runtest_logreport.config._acceptance
    prev = results.get(crit[0], (crit[1], "PASS", []))
    status = prev[1] if report.passed else "FAIL"
    details = prev[2] + [dict(report.user_properties).get("detail", "")]
    results[crit[0]] = (crit[1], status, details)


def pytest_sessionstart(session):
    pytest_runtest_logreport.config = session.config


@pytest.fixture(autouse=True)
def _criterion_tag(request, record_property):
    mark = request.node.get_closest_marker("criterion")
    if mark is not None:
        record_property("criterion", mark.args)


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, status, details = results[number]
        detail = "; ".join(d for d in details if d)
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}" + (f" -- {detail}" if detail else ""))
