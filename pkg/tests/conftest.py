import itertools
from math import factorial

import pytest


def fact_binom(a, b):
    """Binomial straight from factorials; zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return factorial(a) // (factorial(b) * factorial(a - b))


def leibniz_det(matrix):
    """Determinant as a signed sum over permutations. Only for small matrices."""
    size = len(matrix)
    total = 0
    for perm in itertools.permutations(range(size)):
        inversions = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for row, col in enumerate(perm):
            term *= matrix[row][col]
            if term == 0:
                break
        total += term
    return total


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(criterion, title): acceptance criterion check")


_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _ACCEPTANCE.append((marker.kwargs["criterion"], marker.kwargs["title"], report.passed))


def _criterion_key(label):
    digits = "".join(itertools.takewhile(str.isdigit, label))
    return int(digits), label[len(digits):]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    # one verdict per criterion; parts (4a, 4b, ...) are listed after it
    grouped = {}
    for label, title, passed in sorted(_ACCEPTANCE, key=lambda r: _criterion_key(r[0])):
        grouped.setdefault(_criterion_key(label)[0], []).append((label, title, passed))
    terminalreporter.section("acceptance criteria")
    for number, parts in grouped.items():
        verdict = "PASS" if all(p for _, _, p in parts) else "FAIL"
        if len(parts) == 1:
            terminalreporter.write_line(f"{verdict}  criterion {number}: {parts[0][1]}")
            continue
        detail = "; ".join(f"{label} {'pass' if p else 'FAIL'}: {title}" for label, title, p in parts)
        terminalreporter.write_line(f"{verdict}  criterion {number}: {detail}")
