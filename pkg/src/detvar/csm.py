"""Chern-Schwartz-MacPherson cycles of Sigma^s.

The CSM cycle is the integer combination of the closures [Sigma^{i+1}],
i = 0..s-1, whose Euler-obstruction evaluation is 1 at every point. The same
coefficient vector expands the total CSM class in Chern-Mather classes; no
homology is computed, the vector is just tagged with the basis it refers to.
"""

from dataclasses import dataclass

from .combinatorics import binomial
from .errors import DomainError
from .euler import eu_closed
from .strata import stratum_dim

CYCLE_BASIS = "cycles"
CHERN_MATHER_BASIS = "chern-mather"


@dataclass(frozen=True)
class CsmCycle:
    s: int
    n: int
    coeffs: tuple  # coeffs[i] multiplies [Sigma^{i+1}]
    basis: str = CYCLE_BASIS

    def format(self):
        if self.basis == CHERN_MATHER_BASIS:
            label, symbol = "c_CSM", "c_CM(Σ^{})"
        else:
            label, symbol = "[csm]", "[Σ^{}]"
        parts = []
        for i, c in enumerate(self.coeffs):
            term = f"{abs(c)}·" + symbol.format(i + 1)
            if not parts:
                parts.append(f"-{term}" if c < 0 else term)
            else:
                parts.append(f"- {term}" if c < 0 else f"+ {term}")
        return f"{label} = " + " ".join(parts)


def _check(s, n):
    if n < 1 or not 1 <= s <= n:
        raise DomainError(f"need 1 <= s <= n, got s={s}, n={n}")


def csm_cycle(s, n, basis=CYCLE_BASIS):
    _check(s, n)
    coeffs = tuple((-1) ** (s - 1 + i) * binomial(n - i - 1, s - i - 1) for i in range(s))
    return CsmCycle(s, n, coeffs, basis)


def csm_class(s, n):
    """Total CSM class of Sigma^s as coefficients over c_CM(Sigma^{j+1})."""
    return csm_cycle(s, n, basis=CHERN_MATHER_BASIS)


def evaluate_cycle_at_stratum(cycle, j):
    """Euler obstruction of the weighted cycle at a point of Sigma^j minus Sigma^{j-1}.

    Only the closures containing the point (i + 1 >= j) contribute, each with
    the obstruction of its normal slice there.
    """
    s, n = cycle.s, cycle.n
    if not 1 <= j <= s:
        raise DomainError(f"stratum index j={j} outside 1..{s}")
    return sum(cycle.coeffs[i] * eu_closed(i - j + 2, n - j + 1) for i in range(j - 1, s))


@dataclass(frozen=True)
class PolarClassCoefficient:
    sign: int
    magnitude: int
    parity_exponent: int
    csm_magnitude: int  # C(n-i-1, s-i-1), shown beside the printed magnitude

    @property
    def value(self):
        return self.sign * self.magnitude


def polar_class_coefficient(s, n, k, i):
    """Coefficient relating the polar variety of Sigma^s to c_CM(Sigma^{i+1}).

    Evaluated as printed: sign (-1)^{s + dim Sigma^{i+1}} and magnitude
    C(n-i+1, s-i-1). The exponent is returned so callers can audit parity.
    """
    _check(s, n)
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if not 0 <= i < s:
        raise DomainError(f"need 0 <= i < s, got i={i}, s={s}")
    exponent = s + stratum_dim(n, k, i + 1)
    return PolarClassCoefficient(
        sign=(-1) ** exponent,
        magnitude=binomial(n - i + 1, s - i - 1),
        parity_exponent=exponent,
        csm_magnitude=binomial(n - i - 1, s - i - 1),
    )
