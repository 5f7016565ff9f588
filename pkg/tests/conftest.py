from hypothesis import settings

# oracle calls make example times uneven; correctness, not speed, is under test here
settings.register_profile("suite", deadline=None)
settings.load_profile("suite")

# one summary line per acceptance criterion, filled in by test_acceptance.py
CRITERIA: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[n])
