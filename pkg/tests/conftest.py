_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion" not in report.nodeid:
        return
    props = dict(report.user_properties)
    if report.when == "call" or report.failed:
        entry = _ACCEPTANCE.setdefault(report.nodeid, {})
        entry.update(props)
        entry["passed"] = report.passed and entry.get("passed", True)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for nodeid, entry in sorted(_ACCEPTANCE.items(), key=lambda t: int(t[0].rsplit("_", 1)[1][:-1])):
        name = entry.get("criterion", nodeid)
        status = "PASS" if entry["passed"] else "FAIL"
        timing = f" ({entry['elapsed']:.2f} s < {entry['limit']} s)" if "elapsed" in entry else ""
        terminalreporter.write_line(f"{status} criterion {name}{timing}")
