import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from galtower.bounds import (
    admissible_ks,
    best_k,
    de_ratio_bounds,
    de_ratio_caps,
    dv_bound,
    genus_bound_coeff,
    is_dv_optimal,
    lambda_bound,
    lambda_report,
    ram_profile,
    two_bounded_different,
)
from galtower.errors import BadLevel
from galtower.ff import prime_power
from galtower.tower import dual_params, params_from

QS = [2, 3, 4, 5, 7, 8, 9]


def all_params(n_max=6):
    for q in QS:
        for n in range(2, n_max + 1):
            for k in admissible_ks(n):
                yield params_from(q, n, k)


def test_lambda_anchors():
    assert lambda_bound(params_from(3, 2, 1)) == 2
    assert lambda_bound(params_from(2, 3, 1)) == Fraction(3, 2)
    assert lambda_bound(params_from(2, 5, 2)) == Fraction(21, 5)


def test_lambda_closed_form_and_symmetry():
    for P in all_params():
        q, n, k = P.q, P.n, P.k
        lam = lambda_bound(P)
        assert lam == Fraction(2 * (q ** k - 1) * (q ** (n - k) - 1), q ** k + q ** (n - k) - 2)
        assert lam == lambda_bound(dual_params(P))
        assert lam * genus_bound_coeff(P) == 1
        assert float(lam) <= dv_bound(P) + 1e-12


@pytest.mark.parametrize("q", QS)
def test_n2_is_dv_optimal(q):
    P = params_from(q, 2, 1)
    assert lambda_bound(P) == q - 1
    assert is_dv_optimal(P) and lambda_report(P).ratio == pytest.approx(1.0)


def test_dv_optimal_only_when_exact():
    assert not is_dv_optimal(params_from(2, 3, 1))


def test_genus_anchors():
    assert genus_bound_coeff(params_from(3, 2, 1)) == Fraction(1, 2)
    assert genus_bound_coeff(params_from(2, 3, 1)) == Fraction(2, 3)


def test_best_k():
    assert best_k(2, 2)[0] == 1
    k, rep = best_k(2, 5)
    assert k == 2 and rep.lambda_bound == Fraction(21, 5) and rep.best_k_flag
    k, _ = best_k(3, 4)
    assert admissible_ks(4) == [1, 3] and k == 1


def test_ram_profile_anchor():
    r = ram_profile(params_from(2, 3, 1), 2)
    assert (r.tame_inf, r.wild_inf_exponent, r.wild_inf) == (3, 2, 4)
    assert (r.tame0, r.wild0_exponent, r.wild0) == (1, 1, 2)
    assert r.epsilon0 == r.epsilon_inf == "unknown>=0"
    assert r.valid
    with pytest.raises(BadLevel):
        ram_profile(params_from(2, 3, 1), 1)


def test_ram_profile_negative_exponent_is_flagged():
    r = ram_profile(params_from(2, 5, 4), 2)
    assert r.wild0_exponent == -3 and not r.valid
    assert r.wild0 == Fraction(1, 8)


def test_ram_profile_structure():
    for P in all_params(5):
        for i in range(2, 6):
            r = ram_profile(P, i)
            assert math.gcd(r.tame0, P.p) == 1 and math.gcd(r.tame_inf, P.p) == 1
            if P.n % P.k == 0:
                assert (P.ell - 1) % r.tame0 == 0


def test_tame_factor_need_not_divide_ell_minus_one():
    r = ram_profile(params_from(2, 3, 1), 2)
    assert r.tame_inf == 3 and 7 % 3 != 0


def test_de_ratio_anchors():
    P = params_from(2, 3, 1)
    assert de_ratio_bounds(P, 1)[0] == 0
    assert de_ratio_bounds(P, 4)[1] == Fraction(14, 12)
    assert de_ratio_bounds(P, 4)[1] < 1 + Fraction(1, 3)


@pytest.mark.parametrize("qnk", [(2, 3, 1), (3, 2, 1), (2, 5, 2), (4, 2, 1), (3, 4, 1)])
def test_de_ratio_monotone_and_capped(qnk):
    P = params_from(*qnk)
    c0, ci = de_ratio_caps(P)
    prev = (Fraction(-10), Fraction(-10))
    for e in range(1, 1001):
        r = de_ratio_bounds(P, e)
        assert r[0] < c0 and r[1] < ci
        assert r[0] > prev[0] and r[1] > prev[1]
        prev = r
    limit = Fraction(P.q ** P.k, P.q ** P.k - 1)
    assert limit - prev[0] < Fraction(1, 100)


def test_two_bounded_different():
    assert two_bounded_different(1) == 0
    assert two_bounded_different(4) == 6
    assert two_bounded_different(2 ** 2) == 6


@given(st.sampled_from(QS), st.integers(2, 9))
def test_symmetry_property(q, n):
    for k in admissible_ks(n):
        assert lambda_bound(params_from(q, n, k)) == lambda_bound(params_from(q, n, n - k))
