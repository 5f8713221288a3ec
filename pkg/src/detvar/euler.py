"""Local Euler obstruction of generic determinantal varieties.

Two independent routes are provided: the stratified recurrence built from
slice Euler characteristics (:func:`eu_recurrence`) and the binomial closed
form (:func:`eu_closed`). Neither depends on the column excess k.
"""

from dataclasses import dataclass
from functools import lru_cache

from .combinatorics import binomial
from .errors import DomainError, LengthMismatchError
from .strata import chi_bar_slice, chi_slice, normal_slice


def _check(s, n):
    if n < 1 or not 1 <= s <= n:
        raise DomainError(f"need 1 <= s <= n, got s={s}, n={n}")


@lru_cache(maxsize=None)
def _eu_rec(s, n):
    if s == 1:
        return 1
    total = 0
    for i in range(2, s + 1):
        weight = chi_bar_slice(i, n) - chi_bar_slice(i - 1, n)
        total += weight * _eu_rec(*normal_slice(s, n, i))
    return total


def eu_recurrence(s, n):
    """Eu of Sigma^s at 0 via the slice recurrence, with e(1, m) = 1.

    The point stratum contributes nothing (its slice is empty); stratum i >= 2
    contributes chi of its open slice times the obstruction of the normal slice.
    """
    _check(s, n)
    return _eu_rec(s, n)


def eu_closed(s, n):
    """Eu of Sigma^s at 0 in closed form: C(n, s-1)."""
    _check(s, n)
    return binomial(n, s - 1)


@dataclass(frozen=True)
class ConstructibleFunction:
    """Integer value on each open stratum Sigma^i minus Sigma^{i-1}, i = 1..s."""

    s: int
    n: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.s:
            raise LengthMismatchError(f"expected {self.s} coefficients, got {len(self.coeffs)}")

    def at(self, i):
        """Value on stratum i (1-based)."""
        if not 1 <= i <= self.s:
            raise DomainError(f"stratum index {i} outside 1..{self.s}")
        return self.coeffs[i - 1]


def eu_constructible(s, n):
    _check(s, n)
    return ConstructibleFunction(s, n, tuple(binomial(n - i + 1, s - i) for i in range(1, s + 1)))


def eu_from_strata(chi_slices, eu_values):
    """Dot product of open-stratum slice Euler characteristics with Eu values."""
    if len(chi_slices) != len(eu_values):
        raise LengthMismatchError(
            f"chi_slices has {len(chi_slices)} entries, eu_values has {len(eu_values)}"
        )
    return sum(c * e for c, e in zip(chi_slices, eu_values))


def generic_open_slice_chis(s, n):
    """chi of the slice of each open stratum of Sigma^s, by inclusion-exclusion.

    Stratum 1 is {0}; its slice is empty.
    """
    _check(s, n)
    out = [0]
    for i in range(2, s + 1):
        out.append(chi_slice(i, n) - chi_slice(i - 1, n))
    return out


def pascal_triangle_of_spaces(rows):
    """Eu at 0 of each space Sigma^i_m, 1 <= i <= m+1, for rows m = 0..rows.

    The last entry of a row is the whole ambient space, which is smooth.
    """
    if rows < 0:
        raise DomainError(f"rows must be >= 0, got {rows}")
    table = []
    for m in range(rows + 1):
        table.append([eu_closed(i + 1, m) for i in range(m)] + [1])
    return table
