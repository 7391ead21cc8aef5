"""The shift map between root spaces of consecutive f_i, and the f/g comparison.

Everything is checked after specializing u (or z) to a value of a finite
field, with the roots harvested in an extension where the relevant
polynomials split.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded, PoleHit, PrecondViolated, SplittingTooSmall
from .ff import Field, FieldElement, extension, make_field, rank_mod_p
from .linpoly import (
    DEFAULT_EXT_CAP,
    LinearizedPoly,
    RootSpace,
    adjoint,
    fq_basis_in,
    frob_q,
    lin_eval,
    root_space,
    splitting_degree,
    trace,
)
from .rng import SplitMix64
from .tower import TowerParams, f_i_from_u, f_poly, g_poly

DEFAULT_Z_SAMPLES = 50


@dataclass(frozen=True)
class ShiftWitness:
    params: TowerParams
    field: Field
    u: FieldElement
    s: FieldElement
    s_next: FieldElement


def _denoms(params: TowerParams, u: FieldElement) -> dict:
    q, n, k, a, b = params.q, params.n, params.k, params.a, params.b
    tk = trace(u, k, q)
    tm = trace(u, n - k, q)
    return {
        "Tr_k(u)-b": tk - b,
        "Tr_{n-k}(u)-a": tm - a,
        "Tr_{n-k}(u)^(q^k)-a": frob_q(tm, q, k) - a,
    }


def admissible_u(params: TowerParams, u: FieldElement) -> bool:
    """True when every denominator used by f_i, f_{i+1} and the shift is nonzero."""
    return all(not d.is_zero() for d in _denoms(params, u).values())


def prep_identities(params: TowerParams, u: FieldElement, s: FieldElement, strict: bool = True) -> dict:
    """The two consequences of f_i(s) = 0 used by the shift argument.

    ``power``: (Tr_k(s)/(Tr_k(u)-b))^(q^(n-k)) = Tr_{n-k}(s)/(Tr_{n-k}(u)-a).
    ``frobenius``: Tr_{n-k}(s)^(q^k) = c*Tr_{n-k}(s) - Tr_k(s), with c the
    coefficient of f_i.  With ``strict`` a non-root s is rejected; otherwise
    the identities are evaluated anyway (for negative controls).
    """
    q, n, k, a, b = params.q, params.n, params.k, params.a, params.b
    d = _denoms(params, u)
    if d["Tr_k(u)-b"].is_zero() or d["Tr_{n-k}(u)-a"].is_zero():
        raise PoleHit("denominator vanishes")
    if strict and not lin_eval(f_i_from_u(params, u, "same"), s).is_zero():
        raise PrecondViolated("s is not a root of f_i")
    tks, tms = trace(s, k, q), trace(s, n - k, q)
    c = (trace(u, n, q) - (a + b)) / d["Tr_{n-k}(u)-a"]
    lhs1 = frob_q(tks / d["Tr_k(u)-b"], q, n - k)
    rhs1 = tms / d["Tr_{n-k}(u)-a"]
    return {
        "power": lhs1 == rhs1,
        "frobenius": frob_q(tms, q, k) == tms * c - tks,
    }


def _shift_raw(params: TowerParams, u: FieldElement, s: FieldElement) -> FieldElement:
    den = trace(u, params.k, params.q) - params.b
    if den.is_zero():
        raise PoleHit("Tr_k(u) = b")
    w = trace(s, params.k, params.q) / den
    return frob_q(w, params.q) - w


def shift(params: TowerParams, u: FieldElement, s: FieldElement) -> FieldElement:
    """w^q - w with w = Tr_k(s)/(Tr_k(u) - b); s must be a root of f_i."""
    if trace(u, params.k, params.q) == params.b:
        raise PoleHit("Tr_k(u) = b")
    if not lin_eval(f_i_from_u(params, u, "same"), s).is_zero():
        raise PrecondViolated("s is not a root of f_i")
    return _shift_raw(params, u, s)


@dataclass
class PhiResult:
    matrix: np.ndarray | None  # F_p matrix: columns are images of V's F_p-basis
    rank: int
    dim_in: int
    dim_out: int
    linear: bool
    bijective: bool
    V_next: RootSpace | None = field(default=None, repr=False)


def phi_matrix(params: TowerParams, u: FieldElement, V: RootSpace) -> PhiResult:
    """Matrix of the shift on V = roots of f_i, in F_p-coordinates of V and V_{i+1}.

    ``u`` must live in the field of V.
    """
    E = V.field
    n1 = params.n - 1
    V_next = root_space(f_i_from_u(params, u, "next"), E)
    if V.dim < n1 or V_next.dim < n1:
        raise SplittingTooSmall(f"{E.id} holds dims {V.dim}, {V_next.dim}; need {n1}")
    images = [_shift_raw(params, u, b) for b in V.fp_basis]
    cols = [V_next.coordinates(x) for x in images]
    omegas = fq_basis_in(E, params.q)
    linear = all(
        _shift_raw(params, u, w * b) == w * _shift_raw(params, u, b) for w in omegas for b in V.basis
    )
    if any(c is None for c in cols):
        return PhiResult(None, 0, V.dim, V_next.dim, linear, False, V_next)
    mat = np.stack(cols, axis=1) % E.p
    r = rank_mod_p(mat, E.p)
    return PhiResult(mat, r, V.dim, V_next.dim, linear, r == len(V.fp_basis) == len(V_next.fp_basis), V_next)


def _split_field(h: LinearizedPoly, cap: int) -> Field:
    s = splitting_degree(h, cap)
    return extension(h.host, s)[0]


def psi_check(params: TowerParams, z: FieldElement, field: Field | None = None, cap: int = DEFAULT_EXT_CAP) -> dict:
    """Tr_k sends roots of g into roots of (z*f)^ad, injectively."""
    g = g_poly(params, z)
    adj = adjoint(f_poly(params, z).scale(z))
    if field is None:
        sg = splitting_degree(g, cap)
        sa = splitting_degree(adj, cap)
        field = extension(z.field, sg * sa // math.gcd(sg, sa))[0]
    n1 = params.n - 1
    Vg = root_space(g, field)
    Va = root_space(adj, field)
    if Vg.dim < n1 or Va.dim < n1:
        raise SplittingTooSmall(f"{field.id} holds dims {Vg.dim}, {Va.dim}; need {n1}")
    imgs = [trace(t, params.k, params.q) for t in Vg.fp_basis]
    maps_into = all(lin_eval(Va.poly, x).is_zero() for x in imgs)
    mat = np.stack([field._to_vec(x.value) for x in imgs], axis=1)
    injective = rank_mod_p(mat, field.p) == len(imgs)
    return {
        "maps_into": maps_into,
        "injective": injective,
        "bijective": maps_into and injective and Vg.dim == Va.dim,
        "dim": Vg.dim,
        "field": field.id,
    }


def splitting_fields_equal(params: TowerParams, z: FieldElement, cap: int = DEFAULT_EXT_CAP) -> dict:
    """Splitting degrees of f and g agree, and each splits in the other's splitting field."""
    f = f_poly(params, z)
    g = g_poly(params, z)
    sf = splitting_degree(f, cap)
    sg = splitting_degree(g, cap)
    Ef = extension(z.field, sf)[0]
    Eg = extension(z.field, sg)[0]
    n1 = params.n - 1
    g_in_f = root_space(g, Ef).dim == n1
    f_in_g = root_space(f, Eg).dim == n1
    return {
        "deg_f": sf,
        "deg_g": sg,
        "equal": sf == sg and g_in_f and f_in_g,
        "g_in_Ef": g_in_f,
        "f_in_Eg": f_in_g,
    }


# ---------------------------------------------------------------------------
# Sampling.


def _min_degree(base: int, need: int) -> int:
    d = 1
    while base ** d - 1 < need:
        d += 1
    return d


def sample_z(params: TowerParams, count: int = DEFAULT_Z_SAMPLES, seed: int = 0) -> list[FieldElement]:
    """``count`` distinct nonzero z in the smallest F_(ell^d) having that many."""
    d = _min_degree(params.ell, count)
    K = make_field(params.p, params.e * params.n * d, cap=None)
    rng = SplitMix64(seed).fork(0x2)
    out, seen = [], set()
    while len(out) < count:
        z = K.random_element(rng, nonzero=True)
        if z not in seen:
            seen.add(z)
            out.append(z)
    return out


@dataclass
class Harvest:
    """Roots of f_i and f_{i+1} for one sampled u, inside a field where both split."""

    u: FieldElement  # in ``field``
    u_host: FieldElement  # the sampled value before extension
    field: Field
    V: RootSpace
    V_next: RootSpace
    degree: int  # splitting degree over the u-host


def sample_u(params: TowerParams, trials: int, seed: int = 0) -> tuple[list[FieldElement], int]:
    """Distinct admissible u, enough to give ``trials`` (u, s) pairs, and the pole count.

    u is drawn from the smallest F_(ell^d) with at least four candidates per
    needed u.
    """
    need = -(-trials // params.branching)
    d = _min_degree(params.ell, 4 * need)
    K = make_field(params.p, params.e * params.n * d, cap=None)
    rng = SplitMix64(seed).fork(0x1)
    out, seen, poles = [], set(), 0
    while len(out) < need:
        u = K.random_element(rng)
        if u in seen:
            continue
        seen.add(u)
        if admissible_u(params, u):
            out.append(u)
        else:
            poles += 1
    return out, poles


def harvest(params: TowerParams, u: FieldElement, cap: int = DEFAULT_EXT_CAP) -> Harvest:
    """Grow the host of u until f_i splits, then take both root spaces there."""
    fi = f_i_from_u(params, u, "same")
    s = splitting_degree(fi, cap)
    E, emb = extension(u.field, s)
    uE = emb(u)
    V = root_space(f_i_from_u(params, uE, "same"), E)
    V_next = root_space(f_i_from_u(params, uE, "next"), E)
    return Harvest(uE, u, E, V, V_next, s)


def negative_control(V: RootSpace) -> FieldElement:
    """The smallest nonzero element of the field outside V."""
    E = V.field
    idx = 1
    while True:
        x = E.from_index(idx)
        if not V.contains(x):
            return x
        idx += 1


def check_harvest(params: TowerParams, h: Harvest) -> dict:
    """Every shift-related check on one harvested u, as named booleans."""
    n1 = params.n - 1
    fnext = f_i_from_u(params, h.u, "next")
    roots = h.V.elements()
    prep_ok = True
    shift_ok = True
    for s in roots:
        pv = prep_identities(params, h.u, s)
        prep_ok &= pv["power"] and pv["frobenius"]
        shift_ok &= lin_eval(fnext, _shift_raw(params, h.u, s)).is_zero()
    try:
        phi = phi_matrix(params, h.u, h.V)
        linear, bijective = phi.linear, phi.bijective
    except SplittingTooSmall:
        linear = bijective = False
    bad = roots[0] + negative_control(h.V) if roots else None
    neg = bad is not None and not all(prep_identities(params, h.u, bad, strict=False).values())
    return {
        "pairs": len(roots),
        "prep_identities": prep_ok,
        "shift_root": shift_ok,
        "dims": h.V.dim == n1 and h.V_next.dim == n1,
        "phi_linear": linear,
        "phi_bijective": bijective,
        "negative_control": neg,
    }
