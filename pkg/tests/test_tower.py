import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galtower.errors import BadRange, DegenerateZ, GcdNotOne, NotOnCurve, NotPrime, PoleHit, ZeroArgument
from galtower.ff import make_field
from galtower.linpoly import LinearizedPoly, root_space, trace
from galtower.rng import SplitMix64
from galtower.tower import (
    affine_root_list,
    compute_RSu,
    distinguished_z,
    dual_params,
    dual_z_step,
    f_i_from_u,
    f_poly,
    fiber_linear,
    fiber_poly_F,
    fiber_roots,
    g_poly,
    params_from,
    rsu_checks,
    u_poly_for_z,
    u_roots,
    z_step,
)
from oracle import NaiveField, naive_trace_roots

SETS = [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (2, 5, 2), (2, 5, 3), (4, 2, 1), (3, 4, 1)]


def test_params_anchors():
    P = params_from(2, 3, 1)
    assert (P.a, P.b, P.ell) == (1, 0, 8)
    assert (params_from(2, 3, 2).a, params_from(2, 3, 2).b) == (1, 1)
    assert (params_from(3, 5, 2).a, params_from(3, 5, 2).b) == (2, 1)


@pytest.mark.parametrize("q,n,k", SETS + [(3, 5, 2), (5, 7, 3), (8, 4, 1)])
def test_params_bezout_and_minimality(q, n, k):
    P = params_from(q, n, k)
    assert P.a * k - P.b * (n - k) == 1
    for a in range(P.a):
        assert a * k < 1 or (a * k - 1) % (n - k) != 0


def test_params_errors():
    with pytest.raises(GcdNotOne):
        params_from(2, 4, 2)
    with pytest.raises(BadRange):
        params_from(2, 3, 3)
    with pytest.raises(BadRange):
        params_from(2, 1, 1)
    with pytest.raises(NotPrime):
        params_from(6, 3, 1)


def test_a_zero_mod_p_flag():
    P = params_from(3, 5, 3, a_zero_mod_p=True)
    assert (P.a, P.b) == (3, 4)
    with pytest.raises(BadRange):
        params_from(3, 5, 2, a_zero_mod_p=True)  # n - k = 3 is divisible by p = 3


def test_dual_params():
    P = params_from(2, 3, 1)
    D = dual_params(P)
    assert (D.q, D.n, D.k) == (2, 3, 2) and D.dual_of == (2, 3, 1)
    assert D.a * D.k - D.b * (D.n - D.k) == 1
    assert dual_params(D).key == P.key


def test_fiber_anchor_231():
    P = params_from(2, 3, 1)
    F = P.field()
    poly = fiber_poly_F(P, F.one)
    assert [c.value for c in poly.coeffs] == [1, 1, 1, 0, 1]  # y^4 + y^2 + y - 1
    assert len(poly.roots_by_sweep()) == 4


def test_fiber_anchor_321():
    P = params_from(3, 2, 1)
    F = P.field()
    poly = fiber_poly_F(P, F.one)
    assert poly.degree == 3
    assert [c for c in poly.coeffs] == [-F.one, F.one, F.zero, F.one]


@pytest.mark.parametrize("q,n,k", SETS)
def test_fiber_degree_and_forms_agree(q, n, k):
    P = params_from(q, n, k)
    F = P.field()
    for x in list(F.elements())[1:6]:
        poly = fiber_poly_F(P, x)
        assert poly.degree == q ** (n - 1)
        assert poly.roots_by_sweep() == fiber_roots(P, x)
    with pytest.raises(ZeroArgument):
        fiber_poly_F(P, F.zero)


def test_fiber_roots_against_naive_model():
    P = params_from(2, 3, 1)
    F = P.field()
    N = NaiveField(2, F.modulus)
    for x in list(F.elements())[1:]:
        L = fiber_linear(P, x)
        expect = naive_trace_roots(N, 1, [c.coeffs for c in L.coeffs], N.const(-1))
        assert {y.coeffs for y in fiber_roots(P, x)} == set(expect)


@pytest.mark.parametrize("q,n,k", SETS)
def test_rsu_relations_on_every_solution(q, n, k):
    P = params_from(q, n, k)
    F = P.field()
    for x in F.elements():
        if x.is_zero():
            continue
        for y in fiber_roots(P, x):
            checks = rsu_checks(P, x, y)
            assert all(v is not False for v in checks.values()), checks


def test_rsu_u_equals_R_when_b_is_zero():
    P = params_from(2, 3, 1)
    F = P.field()
    y = fiber_roots(P, F.one)[0]
    r = compute_RSu(P, F.one, y)
    assert r.u == r.R
    with pytest.raises(NotOnCurve):
        compute_RSu(P, F.one, y + 1)


def test_u_poly_anchor():
    P = params_from(2, 3, 1)
    F = P.field()
    L, c = u_poly_for_z(P, F.one)
    assert L.values() == [1, 1, 1] and c == F.one  # T + T^2 + T^4 + 1
    z = F.gen
    assert u_poly_for_z(P, z)[1] == z * P.b - P.a
    with pytest.raises(DegenerateZ):
        u_poly_for_z(P, F.zero)


def test_f_and_g_anchor():
    P = params_from(2, 3, 1)
    F = P.field()
    assert f_poly(P, F.one).values() == [1, 1, 1]
    assert g_poly(P, F.one).values() == [1, 1, 1]


@pytest.mark.parametrize("q,n,k", SETS)
def test_f_g_separable_with_degree_n_minus_1(q, n, k):
    P = params_from(q, n, k)
    F = P.field()
    for z in list(F.elements())[1:]:
        for h in (f_poly(P, z), g_poly(P, z)):
            assert h.separable and h.t == n - 1
        assert f_poly(P, z).coeffs[0] == -z.inverse()
        assert g_poly(P, z).coeffs[0] == -z


@pytest.mark.parametrize("q,n,k", SETS)
def test_u_fiber_is_empty_or_coset(q, n, k):
    P = params_from(q, n, k)
    F = P.field()
    nonempty = 0
    for z in list(F.elements())[1:]:
        us = u_roots(P, z)
        L, c = u_poly_for_z(P, z)
        assert L == f_poly(P, z).scale(-z)
        assert us == sorted(x for x in F.elements() if (L(x) + c).is_zero())
        if us:
            nonempty += 1
            V = set(root_space(f_poly(P, z), F).elements())
            assert {u - us[0] for u in us} == V
    assert nonempty >= 1


def test_z_step_formula_231():
    P = params_from(2, 3, 1)
    F = make_field(2, 6)
    rng = SplitMix64(3)
    for _ in range(20):
        u = F.random_element(rng)
        if u.is_zero():
            with pytest.raises(PoleHit):
                z_step(P, u, "left")
            continue
        assert z_step(P, u, "left") == (u + u ** 2 + 1) / u ** 4
    with pytest.raises(PoleHit):
        z_step(P, F.zero, "right")


@pytest.mark.parametrize("q,n,k", SETS)
def test_left_step_gives_a_root_of_its_u_fiber(q, n, k):
    P = params_from(q, n, k)
    F = make_field(P.p, P.e * P.n * 2, cap=None)
    rng = SplitMix64(17)
    for _ in range(15):
        u = F.random_element(rng)
        try:
            z = z_step(P, u, "left")
        except PoleHit:
            continue
        if z.is_zero():
            continue
        L, c = u_poly_for_z(P, z)
        assert (L(u) + c).is_zero()


@pytest.mark.parametrize("q,n,k", SETS)
def test_both_z_expressions_agree_along_chains(q, n, k):
    P = params_from(q, n, k)
    F = P.field()
    z = distinguished_z(F)
    for u in u_roots(P, z):
        z1 = z_step(P, u, "right")
        for v in u_roots(P, z1):
            assert z_step(P, v, "left") == z1


def test_distinguished_z_in_char_2_is_one():
    assert distinguished_z(make_field(2, 3)) == make_field(2, 3).one
    assert distinguished_z(make_field(3, 2)) != make_field(3, 2).one


@pytest.mark.parametrize("q,n,k", SETS)
def test_dual_steps_are_reciprocal(q, n, k):
    P = params_from(q, n, k)
    F = make_field(P.p, P.e * P.n * 2, cap=None)
    rng = SplitMix64(23)
    for _ in range(10):
        u = F.random_element(rng)
        try:
            zl, zr = z_step(P, u, "left"), z_step(P, u, "right")
            dl, dr = dual_z_step(P, u, "left"), dual_z_step(P, u, "right")
        except PoleHit:
            continue
        assert dl * zr == 1 and dr * zl == 1


@pytest.mark.parametrize("q,n,k", SETS)
def test_f_i_closed_forms(q, n, k):
    P = params_from(q, n, k)
    F = make_field(P.p, P.e * P.n * 2, cap=None)
    rng = SplitMix64(29)
    for _ in range(10):
        u = F.random_element(rng)
        try:
            same = f_i_from_u(P, u, "same")
            nxt = f_i_from_u(P, u, "next")
            zl, zr = z_step(P, u, "left"), z_step(P, u, "right")
        except PoleHit:
            continue
        assert same.coeffs[-1] == F.one and same.t == n - 1
        assert same == f_poly(P, zl)
        assert nxt == f_poly(P, zr)


def test_f_i_hand_expansion_231():
    # Tr_3(T) - c*Tr_2(T) with c = (Tr_3(u) - 1)/(Tr_2(u) - 1)
    P = params_from(2, 3, 1)
    F = make_field(2, 6)
    u = F.gen
    c = (u + u ** 2 + u ** 4 - 1) / (u + u ** 2 - 1)
    assert f_i_from_u(P, u, "same") == LinearizedPoly.of(2, F, [1 - c, 1 - c, 1])
    c2 = (u + u ** 2 + u ** 4 - 1) / ((u + u ** 2) ** 2 - 1)
    assert f_i_from_u(P, u, "next") == LinearizedPoly.of(2, F, [1 - c2, 1 - c2, 1])


def test_affine_roots_empty_case():
    F = make_field(2, 3)
    L = LinearizedPoly.of(2, F, [1, 1, 1])  # image is F_2
    assert affine_root_list(L, F.gen) == []


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SETS), st.integers(0, 2 ** 32))
def test_traces_combine(qnk, seed):
    P = params_from(*qnk)
    F = P.field()
    x = F.random_element(SplitMix64(seed))
    q, n, k = P.q, P.n, P.k
    assert trace(x, n, q) == trace(x, n - k, q) + trace(x, k, q).frobenius(P.e * (n - k))
    assert trace(x, n, q) == trace(x, k, q) + trace(x, n - k, q).frobenius(P.e * k)
