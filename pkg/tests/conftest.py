import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(test_acceptance.LINES):
            terminalreporter.write_line(test_acceptance.LINES[number])
