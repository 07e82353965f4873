_criteria: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    labels = [v for k, v in report.user_properties if k == "criterion"]
    if not labels:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _criteria.append((labels[0], "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for text, verdict in sorted(_criteria, key=lambda c: int(c[0].split()[0])):
        terminalreporter.write_line(f"{verdict}  criterion {text}")
