import warnings

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from detvar.combinatorics import alternating_sum, integer_det
from detvar.eids import (
    FLAG_M_TERM_SIGN,
    FLAG_T2_SHORTCUT,
    EidsProblem,
    StratumInvariants,
    TriangularSystem,
    build_generic_system,
    build_system,
    chi_bar_stabilization_from_milnor,
    chi_stabilization,
    chi_stabilization_good_approx,
    eu_of_module,
    eu_section_high_q,
    eu_section_low_q,
    eu_via_pair_multiplicities,
    expected_det_sign,
    generic_b,
    generic_chi_bar_star,
    good_approx_flags,
    good_approx_q_window,
    icis_chi_bar,
    icis_chi_from_polar,
    n_coefficient,
    solve_polar_multiplicities,
    stabilization_flags,
    stratum_dims,
)
from detvar.errors import DomainError, HypothesisError, LengthMismatchError, MissingInvariantError
from detvar.euler import eu_closed
from detvar.strata import stratum_dim

from conftest import fact_binom, leibniz_det


def _problem(q, n, k, t, chi1, m_tops=None, eus=None):
    strata = [StratumInvariants(1, chi_stab=chi1)]
    for i in range(2, t + 1):
        m = 0 if m_tops is None else m_tops[i - 2]
        e = eu_closed(i, n) if eus is None else eus[i - 2]
        strata.append(StratumInvariants(i, m_top=m, eu0=e))
    return EidsProblem(q, n, k, t, tuple(strata))


# ---- n_{it}


def test_n_coefficient_examples():
    assert n_coefficient(1, 2, 2, 1) == -1
    assert n_coefficient(1, 2, 3, 0) == 2


def test_n_coefficient_diagonal():
    for n in range(1, 21):
        for k in range(11):
            for i in range(1, n + 1):
                assert n_coefficient(i, i, n, k) == 1


@pytest.mark.parametrize("i, t, n, k", [(0, 1, 2, 0), (3, 2, 3, 0), (1, 4, 3, 0), (1, 1, 1, -1)])
def test_n_coefficient_domain(i, t, n, k):
    with pytest.raises(DomainError):
        n_coefficient(i, t, n, k)


# ---- stabilization Euler characteristic


@pytest.mark.parametrize("k", [0, 1, 3])
@pytest.mark.parametrize("extra", [0, 1, 4])
@pytest.mark.parametrize("c", [-3, 0, 1, 5])
def test_maximal_minors_two_by_two(k, extra, c):
    q = 2 * (2 + k) + extra
    assert chi_stabilization(_problem(q, 2, k, 2, c, eus=[2])) == 2 - c
    assert chi_stabilization_good_approx(q, 2, k, 2, c) == 2 - c


def test_icis_case():
    p = EidsProblem(7, 2, 1, 1, (StratumInvariants(1, chi_stab=-4),))
    assert chi_stabilization(p) == -4
    assert chi_stabilization_good_approx(7, 2, 1, 1, -4) == -4


def test_cross_check_n3():
    p = _problem(9, 3, 0, 2, 1, eus=[3])
    assert chi_stabilization(p) == chi_stabilization_good_approx(9, 3, 0, 2, 1) == 1


def test_general_matches_good_approx_sweep():
    for n in range(1, 9):
        for k in range(4):
            for t in range(1, n + 1):
                for q in range(n * (n + k), n * (n + k) + 4):
                    for c in (-2, 0, 1, 7):
                        assert chi_stabilization(_problem(q, n, k, t, c)) == chi_stabilization_good_approx(
                            q, n, k, t, c
                        )


def test_cone_has_euler_characteristic_one():
    # F = identity: X = Sigma^t is a cone and its own stabilization, _1X = {0}.
    # At t = 2 this separates n - (n-1) chi1 = 1 from the shortcut n - chi1 = n - 1.
    for n in range(1, 10):
        for k in range(5):
            for t in range(1, n + 1):
                assert chi_stabilization_good_approx(n * (n + k), n, k, t, 1) == 1


def test_two_by_two_minors_frozen():
    # n=3, k=0, q=9: (-1)^(9-4) * C(2,1) * chi1 + C(3,1) = 3 - 2 chi1
    assert [chi_stabilization_good_approx(9, 3, 0, 2, c) for c in range(4)] == [3, 1, -1, -3]


def test_t2_flag():
    assert good_approx_flags(3, 2, 2) == [FLAG_T2_SHORTCUT]
    assert good_approx_flags(3, 2, 1) == [FLAG_T2_SHORTCUT]
    assert good_approx_flags(3, 2, 0) == []
    assert good_approx_flags(3, 3, 2) == []
    assert good_approx_flags(2, 2, 5) == []


def test_reduced_form_from_milnor_number():
    for k in range(3):
        for q in range(2 * (2 + k), 2 * (2 + k) + 5):
            for mu in (0, 1, 4, 11):
                assert chi_bar_stabilization_from_milnor(q, 2, k, 2, mu) == (-1) ** (q - 3) * mu


def test_icis_helpers():
    assert icis_chi_bar(0, 3) == 3
    assert icis_chi_bar(1, 3) == -3
    assert icis_chi_from_polar([1]) == 1
    assert icis_chi_from_polar([4, 6]) == -2
    assert icis_chi_from_polar([2, 3, 4]) == 3


def test_missing_invariants_name_the_stratum():
    with pytest.raises(MissingInvariantError) as info:
        chi_stabilization(EidsProblem(6, 2, 1, 2, (StratumInvariants(2, m_top=0, eu0=2),)))
    assert info.value.stratum == 1 and info.value.name == "chi_stab"
    with pytest.raises(MissingInvariantError) as info:
        chi_stabilization(EidsProblem(6, 2, 1, 2, (StratumInvariants(1, chi_stab=1), StratumInvariants(2, m_top=0))))
    assert info.value.stratum == 2 and info.value.name == "eu0"


def test_stabilization_hypothesis():
    with pytest.raises(HypothesisError):
        chi_stabilization(_problem(5, 2, 1, 2, 1))
    with pytest.raises(HypothesisError):
        chi_stabilization_good_approx(5, 2, 1, 2, 1)
    with pytest.raises(HypothesisError):
        chi_bar_stabilization_from_milnor(5, 2, 1, 2, 1)


def test_problem_validation():
    with pytest.raises(DomainError):
        EidsProblem(6, 2, 1, 3)
    with pytest.raises(DomainError):
        EidsProblem(6, 2, 1, 2, (StratumInvariants(3),))
    with pytest.raises(DomainError):
        EidsProblem(6, 2, 1, 2, (StratumInvariants(1), StratumInvariants(1)))


def test_m_term_flag_and_sign():
    p = _problem(7, 2, 1, 2, 1, m_tops=[3])
    assert stabilization_flags(p) == [FLAG_M_TERM_SIGN]
    assert stabilization_flags(_problem(7, 2, 1, 2, 1)) == []
    # d(2) = 7 - 2 = 5: the m-term enters with sign (-1)^5
    assert chi_stabilization(p) == chi_stabilization(_problem(7, 2, 1, 2, 1)) - 3


def test_stratum_dims_and_provenance():
    assert stratum_dims(9, 3, 0, 3) == {1: 0, 2: 5, 3: 8}
    p = _problem(9, 3, 0, 2, 1)
    assert p.provenance() == {"1": ["chi_stab"], "2": ["m_top", "eu0"]}


# ---- triangular system


def test_generic_b():
    for n in range(1, 10):
        for k in range(4):
            assert generic_b(n, k, n)[0] == 1
    d2 = stratum_dim(3, 1, 2)
    assert generic_b(3, 1, 2) == [1, (-1) ** d2 + (-1) ** (d2 - 1) * 3]


def test_system_layout_matches_display():
    system = build_generic_system(3, 1, 3)
    n = lambda i, t: n_coefficient(i, t, 3, 1)
    assert system.matrix == (
        (n(1, 3), n(2, 3), n(3, 3)),
        (n(1, 2), n(2, 2), 0),
        (n(1, 1), 0, 0),
    )
    assert system.b == tuple(generic_b(3, 1, 3))


def test_generic_solution():
    for n in range(1, 13):
        for k in range(6):
            for s in range(1, n + 1):
                assert solve_polar_multiplicities(build_generic_system(n, k, s)) == [1] + [0] * (s - 1)


def test_single_stratum_system():
    assert solve_polar_multiplicities(build_system(4, 2, [17])) == [17]


def test_det_is_reversal_sign():
    for n in range(1, 13):
        for k in range(6):
            for s in range(1, n + 1):
                m = build_generic_system(n, k, s).matrix
                det = integer_det(m)
                assert det == sympy.Matrix(m).det() == expected_det_sign(s)
                if s <= 6:
                    assert det == leibniz_det(m)


def test_det_differs_from_printed_sign_for_small_s():
    assert integer_det(build_generic_system(3, 0, 1).matrix) == 1 != (-1) ** 1
    assert integer_det(build_generic_system(3, 0, 2).matrix) == -1 != (-1) ** 2


@settings(max_examples=300)
@given(
    st.integers(1, 8).flatmap(
        lambda s: st.tuples(
            st.lists(st.integers(-10**6, 10**6), min_size=s, max_size=s),
            st.integers(s, s + 4),
            st.integers(0, 5),
        )
    )
)
def test_solver_round_trip(args):
    b, n, k = args
    system = build_system(n, k, b)
    x = solve_polar_multiplicities(system)
    assert list(system.apply(x)) == list(system.rhs)
    assert all(isinstance(v, int) for v in x)


def test_solver_rejects_malformed():
    with pytest.raises(DomainError):
        solve_polar_multiplicities(TriangularSystem(2, ((1, 1), (1, 1)), (0, 0)))
    with pytest.raises(DomainError):
        solve_polar_multiplicities(TriangularSystem(2, ((1, 2), (2, 0)), (0, 0)))
    with pytest.raises(DomainError):
        solve_polar_multiplicities(TriangularSystem(2, ((1, 1),), (0, 0)))
    with pytest.raises(DomainError):
        build_system(2, 0, [1, 2, 3])


# ---- section Euler obstruction


def test_low_q_reproduces_generic():
    for n in range(2, 21):
        for s in range(2, n + 1):
            assert eu_section_low_q(s, n, generic_chi_bar_star(s, n)) == eu_closed(s, n)


def test_low_q_examples():
    for n in range(2, 10):
        for s in range(2, n + 1):
            assert eu_section_low_q(s, n, [0] * (s - 1)) == eu_closed(s - 1, n - 1)
    for x in (-4, 0, 9):
        assert eu_section_low_q(2, 2, [x]) == 1 + x


def test_high_q_examples():
    assert eu_section_high_q(3, 5, 0, [0, 0]) == fact_binom(5, 2)
    for a in (-2, 0, 3):
        for b in (-1, 4):
            assert eu_section_high_q(2, 3, a, [b]) == 3 + 2 * a + 2 * b


def test_siesquen_formula():
    for q in range(5, 12):
        for mu in (0, 1, 6):
            for c in (-3, 0, 2):
                value = eu_section_high_q(2, 2, (-1) ** (q - 1) * mu, [c], q=q, k=0)
                assert value == 2 + (-1) ** (q - 1) * mu + c


def test_section_regimes():
    eu_section_low_q(2, 2, [1], q=3, k=0)
    with pytest.raises(HypothesisError):
        eu_section_low_q(2, 2, [1], q=4, k=0)
    with pytest.raises(HypothesisError):
        eu_section_high_q(2, 2, 0, [1], q=4, k=0)
    with pytest.raises(HypothesisError):
        eu_section_high_q(2, 2, 0, [1], q=3, k=0)
    with pytest.raises(DomainError):
        eu_section_low_q(2, 2, [1], q=3)


def test_section_length_and_domain():
    with pytest.raises(LengthMismatchError):
        eu_section_low_q(3, 4, [1])
    with pytest.raises(LengthMismatchError):
        eu_section_high_q(3, 4, 0, [1, 2, 3])
    with pytest.raises(DomainError):
        eu_section_low_q(1, 4, [])


# ---- module Euler obstruction


def test_eu_of_module_examples():
    assert eu_of_module([1]) == 1
    assert eu_of_module([7, 3]) == 4
    assert eu_of_module([3, 2, 1]) == 2


def test_eu_of_module_empty_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert eu_of_module([]) == 0
    assert caught


@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=12))
def test_eu_of_module_index_reversal(m):
    d = len(m)
    assert alternating_sum(list(reversed(m)), (-1) ** (d - 1)) == eu_of_module(m)


def test_pair_multiplicities():
    assert eu_via_pair_multiplicities([0, 0, 0], 9) == 9
    assert eu_via_pair_multiplicities([0, 5], 7) == 2
    assert eu_via_pair_multiplicities([0], -3) == -3
    with pytest.raises(DomainError):
        eu_via_pair_multiplicities([1, 5], 7)
    with pytest.raises(DomainError):
        eu_via_pair_multiplicities([], 7)


# ---- q window


def test_q_window_example():
    w = good_approx_q_window(2, 1, 1)
    assert set(w) == {5}
    assert w.rank_bound == 2
    assert 5 in w and 4 not in w and 6 not in w


def test_q_window_k1_r1():
    for n in range(2, 12):
        assert set(good_approx_q_window(n, 1, 1)) == set(range(2 * n + 1, n * (n + 1)))


def test_q_window_empty():
    w = good_approx_q_window(1, 0, 0)
    assert list(w) == [] and len(w) == 0


def test_q_window_domain():
    with pytest.raises(DomainError):
        good_approx_q_window(2, 1, 2)
    with pytest.raises(DomainError):
        good_approx_q_window(2, 1, -1)
