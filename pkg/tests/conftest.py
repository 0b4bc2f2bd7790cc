import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        detail = dict(item.user_properties).get("detail", "")
        _RESULTS.setdefault(marker.args[0], []).append((item.name, rep.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")

    def order(label):
        head = label.split()[0]
        return (int(head) if head.isdigit() else 99, label)

    for label in sorted(_RESULTS, key=order):
        runs = _RESULTS[label]
        ok = all(passed for _, passed, _ in runs)
        tr.write_line(f"criterion {label}: {'PASS' if ok else 'FAIL'}")
        for name, passed, detail in runs:
            tr.write_line(f"    {'ok  ' if passed else 'FAIL'} {name}  {detail}")
