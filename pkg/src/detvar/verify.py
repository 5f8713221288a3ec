"""Parameter sweeps checking every identity against an independent route.

Each suite yields :class:`Check` rows. Rows are sorted before reporting so
the output does not depend on evaluation order.
"""

from dataclasses import dataclass

from .combinatorics import BinomialTable, binomial, integer_det, lemma2_lhs, v_property_sum
from .csm import csm_cycle, evaluate_cycle_at_stratum
from .eids import (
    EidsProblem,
    StratumInvariants,
    build_generic_system,
    chi_stabilization,
    chi_stabilization_good_approx,
    eu_section_low_q,
    expected_det_sign,
    generic_chi_bar_star,
    solve_polar_multiplicities,
)
from .euler import eu_closed, eu_constructible, eu_recurrence, pascal_triangle_of_spaces

CSV_HEADER = ["suite", "n", "k", "s", "index", "expected", "actual", "ok"]


@dataclass(frozen=True, order=True)
class Check:
    suite: str
    n: int
    k: int
    s: int
    index: int
    expected: str
    actual: str

    @property
    def ok(self):
        return self.expected == self.actual

    def row(self):
        return [self.suite, self.n, self.k, self.s, self.index, self.expected, self.actual, int(self.ok)]


def _pairs(n_max, s_max, s_min=1):
    for n in range(1, n_max + 1):
        top = n if s_max is None else min(n, s_max)
        for s in range(s_min, top + 1):
            yield n, s


def suite_lemma2(n_max, k_max, s_max):
    for n, s in _pairs(n_max, s_max, s_min=2):
        yield Check("lemma2", n, -1, s, 0, str(binomial(n - 1, s - 1)), str(lemma2_lhs(n, s)))


def suite_v_property(n_max, k_max, s_max):
    for n, s in _pairs(n_max, s_max):
        yield Check("v-property", n, -1, s, 0, "1", str(v_property_sum(n, s)))


def suite_eu(n_max, k_max, s_max):
    for n, s in _pairs(n_max, s_max):
        yield Check("eu", n, -1, s, 0, str(eu_closed(s, n)), str(eu_recurrence(s, n)))


def suite_constructible(n_max, k_max, s_max):
    for n, s in _pairs(n_max, s_max):
        f = eu_constructible(s, n)
        for i in range(1, s + 1):
            yield Check("constructible", n, -1, s, i, str(eu_closed(s - i + 1, n - i + 1)), str(f.at(i)))


def suite_csm(n_max, k_max, s_max):
    for n, s in _pairs(n_max, s_max):
        cycle = csm_cycle(s, n)
        for j in range(1, s + 1):
            yield Check("csm", n, -1, s, j, "1", str(evaluate_cycle_at_stratum(cycle, j)))


def suite_generic_system(n_max, k_max, s_max):
    for n, s in _pairs(n_max, s_max):
        for k in range(k_max + 1):
            system = build_generic_system(n, k, s)
            x = solve_polar_multiplicities(system)
            want = " ".join(["1"] + ["0"] * (s - 1))
            yield Check("generic-system", n, k, s, 0, want, " ".join(map(str, x)))
            yield Check("generic-det", n, k, s, 0, str(expected_det_sign(s)), str(integer_det(system.matrix)))


def suite_section(n_max, k_max, s_max):
    for n, s in _pairs(n_max, s_max, s_min=2):
        value = eu_section_low_q(s, n, generic_chi_bar_star(s, n))
        yield Check("section", n, -1, s, 0, str(eu_closed(s, n)), str(value))


def suite_stabilization(n_max, k_max, s_max):
    for n, t in _pairs(min(n_max, 8), s_max):
        for k in range(k_max + 1):
            base = n * (n + k)
            for q in range(base, base + 3):
                for chi1 in (-2, 1, 3):
                    strata = [StratumInvariants(1, chi_stab=chi1)] + [
                        StratumInvariants(i, m_top=0, eu0=eu_closed(i, n)) for i in range(2, t + 1)
                    ]
                    general = chi_stabilization(EidsProblem(q, n, k, t, tuple(strata)))
                    good = chi_stabilization_good_approx(q, n, k, t, chi1)
                    yield Check("stabilization", n, k, t, q, str(good), str(general))
            # Sigma^t itself is a cone, so its Euler characteristic is 1
            yield Check("cone", n, k, t, base, "1", str(chi_stabilization_good_approx(base, n, k, t, 1)))


def suite_pascal(n_max, k_max, s_max):
    table = BinomialTable(n_max)
    produced = pascal_triangle_of_spaces(n_max)
    for m in range(n_max + 1):
        expected = ",".join(map(str, table.row(m)))
        yield Check("pascal", m, -1, -1, m, expected, ",".join(map(str, produced[m])))


SUITES = {
    "lemma2": suite_lemma2,
    "v-property": suite_v_property,
    "eu": suite_eu,
    "constructible": suite_constructible,
    "csm": suite_csm,
    "generic-system": suite_generic_system,
    "section": suite_section,
    "stabilization": suite_stabilization,
    "pascal": suite_pascal,
}


def run_suites(names, n_max, k_max=3, s_max=None):
    checks = []
    for name in names:
        checks.extend(SUITES[name](n_max, k_max, s_max))
    return sorted(checks)
