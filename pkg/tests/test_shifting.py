import pytest

from galtower.errors import PoleHit, PrecondViolated, SplittingTooSmall
from galtower.ff import make_field
from galtower.linpoly import lin_eval, root_space
from galtower.rng import SplitMix64
from galtower.shifting import (
    admissible_u,
    check_harvest,
    harvest,
    negative_control,
    phi_matrix,
    prep_identities,
    psi_check,
    sample_u,
    sample_z,
    shift,
    splitting_fields_equal,
)
from galtower.tower import f_i_from_u, params_from

SETS = [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1), (4, 2, 1)]


def _harvest_231(seed=1):
    P = params_from(2, 3, 1)
    F64 = make_field(2, 6)
    rng = SplitMix64(seed)
    while True:
        u = F64.random_element(rng)
        if admissible_u(P, u):
            return P, harvest(P, u)


def test_zero_root():
    P, h = _harvest_231()
    z = h.field.zero
    assert prep_identities(P, h.u, z) == {"power": True, "frobenius": True}
    assert shift(P, h.u, z) == z


def test_every_root_maps_to_next_root_231():
    P, h = _harvest_231()
    fnext = f_i_from_u(P, h.u, "next")
    roots = h.V.elements()
    assert len(roots) == 4
    for s in roots:
        assert all(prep_identities(P, h.u, s).values())
        assert lin_eval(fnext, shift(P, h.u, s)).is_zero()


def test_shift_is_additive():
    P, h = _harvest_231(5)
    roots = h.V.elements()
    for s1 in roots:
        for s2 in roots:
            assert shift(P, h.u, s1 + s2) == shift(P, h.u, s1) + shift(P, h.u, s2)


def test_corrupted_root_fails():
    P, h = _harvest_231(2)
    s = h.V.elements()[1]
    bad = s + 1 if not h.V.contains(h.field.one) else s + negative_control(h.V)
    assert not all(prep_identities(P, h.u, bad, strict=False).values())
    with pytest.raises(PrecondViolated):
        prep_identities(P, h.u, bad)
    with pytest.raises(PrecondViolated):
        shift(P, h.u, bad)


def test_pole_inputs():
    P = params_from(2, 3, 1)
    F = make_field(2, 6)
    # Tr_1(u) = b = 0 at u = 0
    with pytest.raises(PoleHit):
        shift(P, F.zero, F.zero)
    assert not admissible_u(P, F.zero)


def test_phi_matrix_shape_and_rank():
    P, h = _harvest_231(3)
    res = phi_matrix(P, h.u, h.V)
    e, n1 = P.e, P.n - 1
    assert res.matrix.shape == (e * n1, e * n1)
    assert res.rank == e * n1 and res.bijective and res.linear
    assert res.dim_in == res.dim_out == n1


def test_phi_matrix_over_f4_basis():
    P = params_from(4, 2, 1)
    us, _ = sample_u(P, 20, seed=4)
    h = harvest(P, us[0])
    res = phi_matrix(P, h.u, h.V)
    assert res.matrix.shape == (2, 2) and res.bijective and res.linear


def test_phi_needs_split_field():
    P = params_from(2, 3, 1)
    F = make_field(2, 6)
    rng = SplitMix64(8)
    for _ in range(50):
        u = F.random_element(rng)
        if not admissible_u(P, u):
            continue
        V = root_space(f_i_from_u(P, u, "same"), F)
        if V.dim < P.n - 1:
            with pytest.raises(SplittingTooSmall):
                phi_matrix(P, u, V)
            return
    pytest.fail("every sampled u already split in F_64")


def test_psi_anchor_231():
    P = params_from(2, 3, 1)
    F8 = P.field()
    res = psi_check(P, F8.one, field=F8)
    assert res["bijective"] and res["dim"] == 2
    eq = splitting_fields_equal(P, F8.one)
    assert eq["deg_f"] == eq["deg_g"] == 1 and eq["equal"]
    eq = splitting_fields_equal(P, F8.gen)
    assert eq["deg_f"] == eq["deg_g"] and eq["equal"]


def test_psi_too_small_field():
    P = params_from(2, 3, 1)
    F8 = P.field()
    wide = [z for z in list(F8.elements())[1:] if splitting_fields_equal(P, z)["deg_g"] > 1]
    assert wide
    with pytest.raises(SplittingTooSmall):
        psi_check(P, wide[0], field=F8)


def test_f9_degrees_agree():
    P = params_from(3, 2, 1)
    F9 = P.field()
    rng = SplitMix64(20)
    for _ in range(20):
        z = F9.random_element(rng, nonzero=True)
        assert splitting_fields_equal(P, z)["equal"]


@pytest.mark.parametrize("qnk", SETS)
def test_psi_bijective_on_samples(qnk):
    P = params_from(*qnk)
    zs = sample_z(P, 50, seed=1)
    assert len(set(zs)) == 50
    for z in zs:
        assert psi_check(P, z)["bijective"]
        assert splitting_fields_equal(P, z)["equal"]


@pytest.mark.parametrize("qnk", SETS)
def test_harvest_checks(qnk):
    P = params_from(*qnk)
    us, _ = sample_u(P, 40, seed=9)
    pairs = 0
    for u in us:
        res = check_harvest(P, harvest(P, u))
        pairs += res.pop("pairs")
        assert all(res.values()), res
    assert pairs >= 40


def test_sampling_is_deterministic():
    P = params_from(2, 3, 1)
    assert sample_u(P, 60, seed=3) == sample_u(P, 60, seed=3)
    assert sample_z(P, 50, seed=3) == sample_z(P, 50, seed=3)
    assert sample_u(P, 60, seed=3) != sample_u(P, 60, seed=4)
