"""Exact integer combinatorics.

Everything here works on Python ints, so there is no overflow and no
rounding. Binomials use the extended convention C(a, b) = 0 whenever
b < 0, b > a or a < 0; the alternating sums downstream routinely touch
those edge indices.
"""

from dataclasses import dataclass
from math import comb

from .errors import DomainError


def neg_one_pow(e):
    """(-1)**e as an int, also for negative e."""
    return -1 if e % 2 else 1


def binomial(a, b):
    """C(a, b) with the zero convention outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


class BinomialTable:
    """Pascal triangle up to ``capacity``, built by the additive recurrence only.

    Immutable once constructed, so a single instance can be shared between
    threads.
    """

    __slots__ = ("capacity", "_rows")

    def __init__(self, capacity):
        if capacity < 0:
            raise DomainError(f"capacity must be >= 0, got {capacity}")
        rows = [(1,)]
        for _ in range(capacity):
            prev = rows[-1]
            rows.append((1,) + tuple(prev[j - 1] + prev[j] for j in range(1, len(prev))) + (1,))
        self.capacity = capacity
        self._rows = tuple(rows)

    def __call__(self, a, b):
        if a < 0 or b < 0 or b > a:
            return 0
        if a > self.capacity:
            raise DomainError(f"row {a} exceeds table capacity {self.capacity}")
        return self._rows[a][b]

    def row(self, a):
        if not 0 <= a <= self.capacity:
            raise DomainError(f"row {a} outside 0..{self.capacity}")
        return self._rows[a]

    def rows(self):
        return self._rows


def alternating_sum(values, start_sign=1):
    """Return sum_j start_sign * (-1)**j * values[j]; the empty sum is 0."""
    if start_sign not in (1, -1):
        raise DomainError(f"start_sign must be +1 or -1, got {start_sign}")
    total = 0
    sign = start_sign
    for v in values:
        total += sign * v
        sign = -sign
    return total


def _check_s_n(n, s):
    if n < 1 or s < 1 or s > n:
        raise DomainError(f"need 1 <= s <= n, got s={s}, n={n}")


@dataclass(frozen=True)
class Lemma2Report:
    n: int
    s: int
    lhs: int
    rhs_statement: int  # C(n-1, s-1)
    rhs_proof_end: int  # C(n, s-1), the form the odd-s argument ends on
    in_range: bool

    @property
    def holds(self):
        return self.in_range and self.lhs == self.rhs_statement

    @property
    def proof_end_holds(self):
        return self.lhs == self.rhs_proof_end


def lemma2_lhs(n, s):
    """sum_{i=2}^{s} (-1)^i C(n-1, i-1) C(n-i, s-i), term by term."""
    return sum((-1) ** i * binomial(n - 1, i - 1) * binomial(n - i, s - i) for i in range(2, s + 1))


def lemma2_report(n, s):
    _check_s_n(n, s)
    return Lemma2Report(
        n=n,
        s=s,
        lhs=lemma2_lhs(n, s),
        rhs_statement=binomial(n - 1, s - 1),
        rhs_proof_end=binomial(n, s - 1),
        # s = 1 leaves the sum empty while C(0, 0) = 1
        in_range=s >= 2,
    )


def verify_lemma2(n, s):
    """Check the alternating binomial identity against C(n-1, s-1).

    Returns False for s = 1, which lies outside the identity's range.
    """
    return lemma2_report(n, s).holds


def v_property_sum(n, s):
    """sum_{i=0}^{s-1} (-1)^{s-1+i} C(n-i-1, s-i-1) C(n, i)."""
    return sum(
        (-1) ** (s - 1 + i) * binomial(n - i - 1, s - i - 1) * binomial(n, i) for i in range(s)
    )


def verify_v_property(n, s):
    _check_s_n(n, s)
    return v_property_sum(n, s) == 1


def integer_det(matrix):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    m = [list(row) for row in matrix]
    size = len(m)
    if any(len(row) != size for row in m):
        raise DomainError("matrix is not square")
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for r in range(k + 1, size):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]
