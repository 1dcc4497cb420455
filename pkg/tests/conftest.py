from collections import defaultdict

from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# criterion number -> list of (clause, passed, detail), filled by test_acceptance.py
ACCEPTANCE = defaultdict(list)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        clauses = ACCEPTANCE[n]
        ok = all(passed for _, passed, _ in clauses)
        detail = "; ".join(f"{name}: {'ok' if passed else 'FAIL'} ({info})" for name, passed, info in clauses)
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} | {detail}")
