from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_ACCEPTANCE = {}


def pytest_collection_modifyitems(items):
    # attach at collection so a test failing before its body still counts
    for item in items:
        for mark in item.iter_markers("criterion"):
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            prev = _ACCEPTANCE.get(value, True)
            _ACCEPTANCE[value] = prev and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _ACCEPTANCE[n] else 'FAIL'}")
