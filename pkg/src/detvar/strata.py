"""Rank stratification of Hom(C^n, C^{n+k}).

Sigma^s is the set of matrices of rank < s. Only discrete invariants of the
strata are modelled: dimensions, the normal-slice reduction and the Euler
characteristics of generic hyperplane slices.

A "slice" of a germ at the origin always means the nearby fibre of a generic
linear form, l^{-1}(delta) with delta != 0. In particular the slice of
Sigma^1 = {0} is empty, so its Euler characteristic is 0.
"""

from dataclasses import dataclass

from .combinatorics import binomial
from .errors import DomainError


@dataclass(frozen=True)
class StrataSpec:
    n: int
    k: int
    s: int

    def __post_init__(self):
        if self.n < 1 or self.k < 0 or not 1 <= self.s <= self.n:
            raise DomainError(
                f"need n >= 1, k >= 0, 1 <= s <= n; got n={self.n}, k={self.k}, s={self.s}"
            )

    @property
    def ambient_dim(self):
        return self.n * (self.n + self.k)

    @property
    def codim(self):
        return (self.n - self.s + 1) * (self.n + self.k - self.s + 1)

    @property
    def dim(self):
        return self.ambient_dim - self.codim


@dataclass(frozen=True)
class StrataGeometry:
    codim: int
    dim: int


def strata_geometry(spec):
    return StrataGeometry(codim=spec.codim, dim=spec.dim)


def stratum_dim(n, k, s):
    """dim Sigma^s inside Hom(C^n, C^{n+k})."""
    return StrataSpec(n, k, s).dim


def stratum_codim(n, k, s):
    return StrataSpec(n, k, s).codim


def normal_slice(s, n, i):
    """Reduce Sigma^s near a point of Sigma^i minus Sigma^{i-1}.

    The normal slice there is again generic determinantal, Sigma^{s-i+1} in
    Hom(C^{n-i+1}, C^{n-i+1+k}).
    """
    if not 1 <= i <= s <= n:
        raise DomainError(f"need 1 <= i <= s <= n, got i={i}, s={s}, n={n}")
    return s - i + 1, n - i + 1


def chi_bar_slice(i, n):
    """Reduced Euler characteristic of the generic slice of Sigma^i: (-1)^i C(n-1, i-1)."""
    if not 1 <= i <= n:
        raise DomainError(f"need 1 <= i <= n, got i={i}, n={n}")
    return (-1) ** i * binomial(n - 1, i - 1)


def chi_slice(i, n):
    return 1 + chi_bar_slice(i, n)
