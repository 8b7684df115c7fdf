from collections import OrderedDict

import pytest

from nokpoly.models import elliptic_square_model, product_elliptic_model, rho_one_abelian_model

_CRITERIA: "OrderedDict[str, list[bool]]" = OrderedDict()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.setdefault(label, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: int(s.split()[0])):
        results = _CRITERIA[label]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{status}  {label}  ({sum(results)}/{len(results)} checks)")


@pytest.fixture(scope="session")
def exe432():
    return elliptic_square_model(4, 3, 2)


@pytest.fixture(scope="session")
def rho1_23():
    return rho_one_abelian_model(1, 23)


@pytest.fixture(scope="session")
def prod40():
    return product_elliptic_model(40)
