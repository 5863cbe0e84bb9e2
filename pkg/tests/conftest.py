"""Shared pytest hooks.

The acceptance tests register one ``[PASS]``/``[FAIL]`` line apiece; echo
those in a dedicated terminal section after the run so they are visible
even though pytest captures per-test stdout.
"""


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance checks")
        for line in lines:
            terminalreporter.write_line(line)
