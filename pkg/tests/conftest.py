ACCEPTANCE: list[tuple[int, str, bool, float, float]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k, name, ok, elapsed, bound in sorted(ACCEPTANCE):
        limit = f" (limit {bound:g} s)" if bound else ""
        terminalreporter.write_line(
            f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {name}, {elapsed:.2f} s{limit}"
        )
