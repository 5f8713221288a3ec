"""Invariants of essentially isolated determinantal singularities (EIDS).

An EIDS X = F^{-1}(Sigma^t) comes from a map F: C^q -> Hom(C^n, C^{n+k})
transverse to the rank stratification off the origin. Its strata
_iX = F^{-1}(Sigma^i) have dimension d(i) = q - codim Sigma^i.

Analytic inputs (Milnor numbers, top polar multiplicities, Euler obstructions
of strata, multiplicities of pairs of modules, slice Euler characteristics)
cannot be derived from finite data here. They are supplied by the caller, and
missing ones raise instead of defaulting to zero.
"""

import warnings
from dataclasses import dataclass, field

from .combinatorics import alternating_sum, binomial, neg_one_pow
from .errors import DomainError, HypothesisError, LengthMismatchError, MissingInvariantError
from .euler import eu_closed
from .strata import chi_bar_slice, stratum_codim, stratum_dim

# Discrepancy flags surfaced in reports.
FLAG_M_TERM_SIGN = "m-term-sign-unverified"
FLAG_HIGH_Q_BINOMIAL = "high-q-sum-uses-C(n-1,s-1)-verbatim"
FLAG_DET_SIGN = "det-A-is-(-1)^(s(s-1)/2)-not-(-1)^s"
FLAG_T2_SHORTCUT = "t2-value-differs-from-n-minus-chi1"


def n_coefficient(i, t, n, k):
    """n_{it} = (-1)^{k(t-i)} C(n-i, n-t)."""
    if n < 1 or k < 0 or not 1 <= i <= t <= n:
        raise DomainError(f"need 1 <= i <= t <= n, k >= 0; got i={i}, t={t}, n={n}, k={k}")
    return neg_one_pow(k * (t - i)) * binomial(n - i, n - t)


def _check_params(q, n, k, t):
    if q < 1 or n < 1 or k < 0 or not 1 <= t <= n:
        raise DomainError(f"need q >= 1, n >= 1, k >= 0, 1 <= t <= n; got q={q}, n={n}, k={k}, t={t}")


def _require_stabilization_regime(q, n, k):
    if q < n * (n + k):
        raise HypothesisError(f"stabilization formulas need q >= n(n+k) = {n * (n + k)}, got q={q}")


def stratum_dims(q, n, k, t):
    """d(i) = dim _iX for i = 1..t, as a dict."""
    return {i: q - stratum_codim(n, k, i) for i in range(1, t + 1)}


@dataclass(frozen=True)
class StratumInvariants:
    i: int
    chi_stab: int | None = None
    m_top: int | None = None
    eu0: int | None = None

    def supplied(self):
        return [name for name in ("chi_stab", "m_top", "eu0") if getattr(self, name) is not None]


@dataclass(frozen=True)
class EidsProblem:
    q: int
    n: int
    k: int
    t: int
    strata: tuple = field(default_factory=tuple)

    def __post_init__(self):
        _check_params(self.q, self.n, self.k, self.t)
        seen = set()
        for entry in self.strata:
            if not 1 <= entry.i <= self.t:
                raise DomainError(f"stratum index i={entry.i} outside 1..{self.t}")
            if entry.i in seen:
                raise DomainError(f"stratum i={entry.i} given twice")
            seen.add(entry.i)

    def stratum(self, i):
        for entry in self.strata:
            if entry.i == i:
                return entry
        return None

    def require(self, i, name):
        entry = self.stratum(i)
        value = None if entry is None else getattr(entry, name)
        if value is None:
            raise MissingInvariantError(i, name)
        return value

    def dims(self):
        return stratum_dims(self.q, self.n, self.k, self.t)

    def provenance(self):
        """Which invariants the user supplied, per stratum."""
        return {str(e.i): e.supplied() for e in sorted(self.strata, key=lambda e: e.i)}


def chi_stabilization(problem):
    """Euler characteristic of the stabilization of an EIDS.

    chi = (-1)^{d(t)-d(1)} n_{1t} chi(_1X~)
          + sum_{i=2}^t n_{it} ((-1)^{d(t)} m_{d(i)}(_iX) + (-1)^{d(t)-d(i)} Eu_0(_iX))
    """
    q, n, k, t = problem.q, problem.n, problem.k, problem.t
    _require_stabilization_regime(q, n, k)
    d = problem.dims()
    total = neg_one_pow(d[t] - d[1]) * n_coefficient(1, t, n, k) * problem.require(1, "chi_stab")
    for i in range(2, t + 1):
        m_top = problem.require(i, "m_top")
        eu0 = problem.require(i, "eu0")
        total += n_coefficient(i, t, n, k) * (neg_one_pow(d[t]) * m_top + neg_one_pow(d[t] - d[i]) * eu0)
    return total


def stabilization_flags(problem):
    if any(problem.stratum(i) is not None and problem.stratum(i).m_top for i in range(2, problem.t + 1)):
        return [FLAG_M_TERM_SIGN]
    return []


def chi_stabilization_good_approx(q, n, k, t, chi1):
    """Same quantity for a good approximation, where Eu_0(_iX) = C(n, i-1) and m-terms vanish."""
    _check_params(q, n, k, t)
    _require_stabilization_regime(q, n, k)
    d = stratum_dims(q, n, k, t)
    total = neg_one_pow(d[t] - d[1]) * n_coefficient(1, t, n, k) * chi1
    for i in range(2, t + 1):
        total += neg_one_pow(d[t] - d[i]) * n_coefficient(i, t, n, k) * eu_closed(i, n)
    return total


def good_approx_flags(n, t, chi1):
    # the shortcut chi = n - chi1 only matches n - (n-1) chi1 when n = 2 or chi1 = 0
    if t == 2 and n > 2 and chi1 != 0:
        return [FLAG_T2_SHORTCUT]
    return []


def icis_chi_bar(dim, mu):
    """Reduced Euler characteristic of the Milnor fibre of an ICIS: (-1)^dim mu."""
    return neg_one_pow(dim) * mu


def chi_bar_stabilization_from_milnor(q, n, k, t, mu):
    """Reduced chi of the stabilization, given the Milnor number of _1X instead of chi(_1X~)."""
    _check_params(q, n, k, t)
    _require_stabilization_regime(q, n, k)
    chi1 = 1 + icis_chi_bar(q - n * (n + k), mu)
    return chi_stabilization_good_approx(q, n, k, t, chi1) - 1


def icis_chi_from_polar(m):
    """chi(_1X~) = m_0 - m_1 + ... + (-1)^d m_d for the ICIS stratum."""
    return alternating_sum(m, 1)


@dataclass(frozen=True)
class TriangularSystem:
    """A x = rhs with A stored in its anti-triangular printed layout.

    Row r (0-based) is the equation for stratum j = s - r and holds
    n_{1j}, ..., n_{jj} followed by zeros; ``rhs[r]`` is b_j.
    """

    size: int
    matrix: tuple
    rhs: tuple

    @property
    def b(self):
        """Right-hand side in stratum order b_1..b_s."""
        return tuple(reversed(self.rhs))

    def apply(self, x):
        return tuple(sum(a * v for a, v in zip(row, x)) for row in self.matrix)


def _anti_triangular(n, k, s):
    return tuple(
        tuple(n_coefficient(c, s - r, n, k) if c <= s - r else 0 for c in range(1, s + 1))
        for r in range(s)
    )


def build_system(n, k, b):
    """System for strata 1..len(b) with caller-supplied b_1..b_s."""
    s = len(b)
    if n < 1 or k < 0 or not 1 <= s <= n:
        raise DomainError(f"need 1 <= s <= n, k >= 0; got s={s}, n={n}, k={k}")
    return TriangularSystem(s, _anti_triangular(n, k, s), tuple(reversed(tuple(b))))


def generic_b(n, k, s):
    """b_i = (-1)^{d'_i} chi(Sigma^i) + (-1)^{d'_i - 1} chi(Sigma^i cap H), d'_i = dim Sigma^i.

    chi(Sigma^i) = 1 (a cone) and chi(Sigma^i cap H) = 1 + chi_bar_slice(i, n),
    which is 0 for the point stratum.
    """
    b = []
    for i in range(1, s + 1):
        d = stratum_dim(n, k, i)
        b.append(neg_one_pow(d) + neg_one_pow(d - 1) * (1 + chi_bar_slice(i, n)))
    return b


def build_generic_system(n, k, s):
    if n < 1 or k < 0 or not 1 <= s <= n:
        raise DomainError(f"need 1 <= s <= n, k >= 0; got s={s}, n={n}, k={k}")
    return build_system(n, k, generic_b(n, k, s))


def solve_polar_multiplicities(system):
    """Forward substitution x_j = b_j - sum_{i<j} n_{ij} x_i, reading n_{ij} from the matrix."""
    s = system.size
    if len(system.matrix) != s or len(system.rhs) != s or any(len(row) != s for row in system.matrix):
        raise DomainError("system dimensions are inconsistent")
    for r, row in enumerate(system.matrix):
        j = s - r
        if row[j - 1] != 1 or any(row[c] != 0 for c in range(j, s)):
            raise DomainError(f"row {r} is not anti-triangular with unit anti-diagonal")
    b = system.b
    x = []
    for j in range(1, s + 1):
        row = system.matrix[s - j]
        x.append(b[j - 1] - sum(row[i] * x[i] for i in range(j - 1)))
    return x


def expected_det_sign(s):
    """Sign of the reversal permutation, the determinant of a unit anti-triangular matrix."""
    return neg_one_pow(s * (s - 1) // 2)


def _check_section_regime(q, n, k, low):
    if q is None:
        return
    if k is None:
        raise DomainError("k is required when q is given")
    ambient = n * (n + k)
    if low and not q < ambient:
        raise HypothesisError(f"low-q section formula needs q < n(n+k) = {ambient}, got q={q}")
    if not low and not q > ambient:
        raise HypothesisError(f"high-q section formula needs q > n(n+k) = {ambient}, got q={q}")


def eu_section_low_q(s, n, chi_bar_star, q=None, k=None):
    """Eu_0(X) = e(s-1, n-1) + sum_{i=2}^s chi_bar_*(i) C(n-i, s-i), for q < n(n+k).

    ``chi_bar_star`` lists chi_bar_*(i) for i = 2..s.
    """
    if n < 2 or not 2 <= s <= n:
        raise DomainError(f"need 2 <= s <= n, got s={s}, n={n}")
    if len(chi_bar_star) != s - 1:
        raise LengthMismatchError(f"expected {s - 1} slice values (i=2..{s}), got {len(chi_bar_star)}")
    _check_section_regime(q, n, k, low=True)
    return eu_closed(s - 1, n - 1) + sum(
        c * binomial(n - i, s - i) for i, c in enumerate(chi_bar_star, start=2)
    )


def eu_section_high_q(s, n, chi_bar_1H, chi_bar_star, q=None, k=None):
    """Eu_0(X) for q > n(n+k), as printed: every slice term carries C(n-1, s-1)."""
    if n < 1 or not 1 <= s <= n:
        raise DomainError(f"need 1 <= s <= n, got s={s}, n={n}")
    if len(chi_bar_star) != s - 1:
        raise LengthMismatchError(f"expected {s - 1} slice values (i=2..{s}), got {len(chi_bar_star)}")
    _check_section_regime(q, n, k, low=False)
    c = binomial(n - 1, s - 1)
    return binomial(n, s - 1) + chi_bar_1H * c + sum(v * c for v in chi_bar_star)


def generic_chi_bar_star(s, n):
    """Slice values of Sigma^i itself, i = 2..s."""
    return [chi_bar_slice(i, n) for i in range(2, s + 1)]


def eu_of_module(polar_mults):
    """Eu_0(M) = sum_{i=0}^{d-1} (-1)^i m_0(P_i(M))."""
    if not polar_mults:
        warnings.warn("empty polar multiplicity list: module locus of dimension 0, Eu taken as 0")
        return 0
    return alternating_sum(polar_mults, 1)


def eu_via_pair_multiplicities(pair_mults, eu_pullback):
    """Eu_0(X) = sum_i (-1)^i e(M_i, N_i) + Eu_0(F^*(JM(Sigma^r))), with M_0 = N_0 = 0."""
    if not pair_mults:
        raise DomainError("pair multiplicity list must contain at least the i=0 entry")
    if pair_mults[0] != 0:
        raise DomainError(f"the i=0 pair multiplicity must be 0, got {pair_mults[0]}")
    return alternating_sum(pair_mults, 1) + eu_pullback


@dataclass(frozen=True)
class QWindow:
    """Admissible source dimensions q with dim Sigma^{r+1} < q < n(n+k).

    ``r`` is the kernel-rank index; the same variety is Sigma^{r+1} in the
    rank-bound indexing used everywhere else.
    """

    n: int
    k: int
    r: int
    lower_exclusive: int
    upper_exclusive: int

    @property
    def rank_bound(self):
        return self.r + 1

    @property
    def values(self):
        return tuple(range(self.lower_exclusive + 1, self.upper_exclusive))

    def __contains__(self, q):
        return self.lower_exclusive < q < self.upper_exclusive

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


def good_approx_q_window(n, k, r):
    if n < 1 or k < 0 or r < 0 or r + 1 > n:
        raise DomainError(f"need n >= 1, k >= 0, 0 <= r <= n-1; got n={n}, k={k}, r={r}")
    return QWindow(n, k, r, stratum_dim(n, k, r + 1), n * (n + k))
