import pytest

# criterion label -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")


@pytest.fixture
def record_criterion():
    def record(label, ok, detail=""):
        ACCEPTANCE_RESULTS[label] = (ok, detail)
        print(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
    return record
