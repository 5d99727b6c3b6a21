import helpers


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # One pass/fail line per acceptance criterion, kept visible even when
    # stdout capture swallows the in-test prints.
    if not helpers.ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(helpers.ACCEPTANCE):
        name, ok = helpers.ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:02d} {name}: {'PASS' if ok else 'FAIL'}")
