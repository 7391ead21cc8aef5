"""Tower parameters and the defining relations, specialized to field values.

Notation: ``q`` is the constant-field base, ``ell = q**n`` the field where the
towers live, and ``(a, b)`` solve ``a*k - b*(n - k) = 1``.  Element-level
relations are written with ``trace(x, i, q)`` for x + x^q + ... + x^(q^(i-1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    BadRange,
    DegenerateZ,
    GcdNotOne,
    NotOnCurve,
    PoleHit,
    ZeroArgument,
)
from .ff import Field, FieldElement, make_field, nullspace_mod_p, prime_power, solve_mod_p
from .linpoly import LinearizedPoly, frob_q, lin_matrix, trace
from .poly import Poly


@dataclass(frozen=True)
class TowerParams:
    p: int
    e: int
    q: int
    n: int
    k: int
    a: int
    b: int
    dual_of: tuple | None = None  # (q, n, k) this was derived from by dual_params

    @property
    def ell(self) -> int:
        return self.q ** self.n

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.q, self.n, self.k)

    @property
    def branching(self) -> int:
        """q^(n-1): the number of children of every split node."""
        return self.q ** (self.n - 1)

    def field(self) -> Field:
        """F_ell."""
        return make_field(self.p, self.e * self.n)


def params_from(q: int, n: int, k: int, a_zero_mod_p: bool = False) -> TowerParams:
    """Validated parameters with the smallest non-negative a (and the b it forces).

    With ``a_zero_mod_p`` the smallest a divisible by p is taken instead; that
    needs gcd(n - k, p) = 1.
    """
    p, e = prime_power(q)
    if n < 2 or not 1 <= k < n:
        raise BadRange(f"need n >= 2 and 1 <= k < n, got n={n}, k={k}")
    if math.gcd(k, n - k) != 1:
        raise GcdNotOne("gcd(k, n-k) must be 1")
    m = n - k
    if a_zero_mod_p and m % p == 0:
        raise BadRange(f"a = 0 mod {p} needs gcd(n-k, p) = 1")
    a = 0
    while True:
        if a * k >= 1 and (a * k - 1) % m == 0 and (not a_zero_mod_p or a % p == 0):
            return TowerParams(p, e, q, n, k, a, (a * k - 1) // m)
        a += 1


def dual_params(params: TowerParams) -> TowerParams:
    """Parameters of the dual tower: k <-> n-k, re-normalized, with provenance."""
    d = params_from(params.q, params.n, params.n - params.k)
    return TowerParams(d.p, d.e, d.q, d.n, d.k, d.a, d.b, dual_of=params.key)


# ---------------------------------------------------------------------------
# The defining equation of F.


def fiber_linear(params: TowerParams, x: FieldElement) -> LinearizedPoly:
    """Left side of the defining equation as a q-additive polynomial in y.

    The y^(q^j) coefficient is x^(-q^(k+j)) for j < n-k and x^(-q^(j-n+k)) after.
    """
    if x.is_zero():
        raise ZeroArgument("x must be nonzero")
    q, n, k = params.q, params.n, params.k
    xi = x.inverse()
    cs = []
    for j in range(n):
        shift = k + j if j < n - k else j - (n - k)
        cs.append(frob_q(xi, q, shift))
    return LinearizedPoly.of(q, x.field, cs)


def fiber_poly_F(params: TowerParams, x: FieldElement) -> Poly:
    """Defining equation at x with denominators cleared, as an ordinary polynomial in y.

    Multiplying through by x^(q^(n-1)) gives degree q^(n-1) in y.
    """
    if x.is_zero():
        raise ZeroArgument("x must be nonzero")
    q, n, k = params.q, params.n, params.k
    F = x.field
    top = q ** (n - 1)
    coeffs = [F.zero] * (top + 1)
    for j in range(n):
        d = q ** (k + j) if j < n - k else q ** (j - (n - k))
        coeffs[q ** j] = x ** (top - d)
    coeffs[0] = -(x ** top)
    return Poly(F, tuple(coeffs))


def on_curve(params: TowerParams, x: FieldElement, y: FieldElement) -> bool:
    return not x.is_zero() and fiber_linear(params, x)(y) == x.field.one


@dataclass(frozen=True)
class RSU:
    R: FieldElement
    S: FieldElement
    u: FieldElement


def compute_RSu(params: TowerParams, x: FieldElement, y: FieldElement) -> RSU:
    """R = y/x^(q^k), S = y^(q^(n-k))/x and u built from the double sum."""
    if x.is_zero():
        raise ZeroArgument("x must be nonzero")
    if not on_curve(params, x, y):
        raise NotOnCurve(f"({x}, {y}) does not satisfy the defining equation")
    q, n, k, a, b = params.q, params.n, params.k, params.a, params.b
    R = y / frob_q(x, q, k)
    S = frob_q(y, q, n - k) / x
    F = x.field
    u = F.zero
    for alpha in range(a):
        u = u + frob_q(R, q, alpha * k)
    inner = F.zero
    for beta in range(b):
        inner = inner + frob_q(S, q, beta * (n - k))
    u = u + frob_q(inner, q, 1)
    return RSU(R, S, u)


def rsu_checks(params: TowerParams, x: FieldElement, y: FieldElement, rsu: RSU | None = None) -> dict:
    """Every relation between x, y, R, S and u, as named booleans.

    Relations that divide by a vanishing quantity are reported as None.
    """
    rsu = compute_RSu(params, x, y) if rsu is None else rsu
    q, n, k, a, b = params.q, params.n, params.k, params.a, params.b
    R, S, u = rsu.R, rsu.S, rsu.u
    one = x.field.one
    out = {
        "trace_sum": trace(R, n - k, q) + trace(S, k, q) == one,
        "R_from_u": R == trace(u, k, q) - b,
        "S_from_u": S == -trace(u, n - k, q) + a,
    }
    N = q ** n - 1
    out["y_power"] = None if R.is_zero() else y ** N == frob_q(S, q, k) / R
    rr = frob_q(R, q, n - k)
    out["x_power"] = None if rr.is_zero() else x ** N == S / rr
    return out


# ---------------------------------------------------------------------------
# The u-fiber and the polynomials f, g.


def u_poly_for_z(params: TowerParams, z: FieldElement) -> tuple[LinearizedPoly, FieldElement]:
    """(L, c) with L(T) + c = Tr_{n-k}(T) - z*Tr_k(T)^(q^(n-k)) - a + z*b."""
    if z.is_zero():
        raise DegenerateZ("z must be nonzero")
    n, k = params.n, params.k
    F = z.field
    cs = [F.one] * (n - k) + [-z] * k
    return LinearizedPoly.of(params.q, F, cs), z * params.b - params.a


def f_poly(params: TowerParams, z: FieldElement) -> LinearizedPoly:
    """-z^(-1)*Tr_{n-k}(T) + Tr_k(T)^(q^(n-k))."""
    if z.is_zero():
        raise DegenerateZ("z must be nonzero")
    n, k = params.n, params.k
    F = z.field
    return LinearizedPoly.of(params.q, F, [-z.inverse()] * (n - k) + [F.one] * k)


def g_poly(params: TowerParams, z: FieldElement) -> LinearizedPoly:
    """Tr_{n-k}(T)^(q^k) - z*Tr_k(T)."""
    if z.is_zero():
        raise DegenerateZ("z must be nonzero")
    n, k = params.n, params.k
    F = z.field
    return LinearizedPoly.of(params.q, F, [-z] * k + [F.one] * (n - k))


def z_step(params: TowerParams, u: FieldElement, direction: str) -> FieldElement:
    """The z attached to u: ``left`` gives the same index, ``right`` the next one."""
    q, n, k, a, b = params.q, params.n, params.k, params.a, params.b
    tk = trace(u, k, q)
    tm = trace(u, n - k, q)
    if direction == "left":
        num, den = tm - a, frob_q(tk, q, n - k) - b
    elif direction == "right":
        num, den = frob_q(tm, q, k) - a, tk - b
    else:
        raise ValueError(f"direction must be left or right, got {direction!r}")
    if den.is_zero():
        raise PoleHit(f"{direction} denominator vanishes at u = {u}")
    return num / den


def dual_z_step(params: TowerParams, u: FieldElement, direction: str) -> FieldElement:
    """z-step of the dual recursion: k <-> n-k and a <-> b swapped verbatim."""
    q, n, k, a, b = params.q, params.n, params.k, params.a, params.b
    tk = trace(u, k, q)
    tm = trace(u, n - k, q)
    if direction == "left":
        num, den = tk - b, frob_q(tm, q, k) - a
    elif direction == "right":
        num, den = frob_q(tk, q, n - k) - b, tm - a
    else:
        raise ValueError(f"direction must be left or right, got {direction!r}")
    if den.is_zero():
        raise PoleHit(f"dual {direction} denominator vanishes at u = {u}")
    return num / den


def f_i_from_u(params: TowerParams, u: FieldElement, which: str) -> LinearizedPoly:
    """Tr_n(T) - c*Tr_{n-k}(T) with c = (Tr_n(u) - (a+b)) / D.

    D is Tr_{n-k}(u) - a for ``same`` and Tr_{n-k}(u)^(q^k) - a for ``next``.
    The result is monic of q-degree n-1.
    """
    q, n, k, a, b = params.q, params.n, params.k, params.a, params.b
    tm = trace(u, n - k, q)
    if which == "same":
        den = tm - a
    elif which == "next":
        den = frob_q(tm, q, k) - a
    else:
        raise ValueError(f"which must be same or next, got {which!r}")
    if den.is_zero():
        raise PoleHit(f"denominator vanishes at u = {u}")
    c = (trace(u, n, q) - (a + b)) / den
    F = u.field
    return LinearizedPoly.of(q, F, [F.one - c] * (n - k) + [F.one] * k)


# ---------------------------------------------------------------------------
# Affine root extraction.


def affine_roots(L: LinearizedPoly, c: FieldElement) -> tuple[FieldElement | None, list[FieldElement]]:
    """Solutions of L(T) + c = 0 in the host, as (particular solution, F_p-kernel basis).

    The particular solution is None when there are no roots.
    """
    F = L.host
    mat = lin_matrix(L)
    ker = [F.from_vector(v) for v in nullspace_mod_p(mat, F.p)]
    sol = solve_mod_p(mat, F._to_vec((-c).value), F.p)
    if sol is None:
        return None, ker
    return F.from_vector(sol), ker


def affine_root_list(L: LinearizedPoly, c: FieldElement) -> list[FieldElement]:
    """Every root of L(T) + c in the host, sorted by element order."""
    base, ker = affine_roots(L, c)
    if base is None:
        return []
    F = L.host
    p = F.p
    pts = [base.value]
    for v in ker:
        mult = [F._mul(F._const(t), v.value) for t in range(p)]
        pts = [F._add(x, m) for m in mult for x in pts]
    return sorted(FieldElement(F, x) for x in pts)


def fiber_roots(params: TowerParams, x: FieldElement) -> list[FieldElement]:
    """Roots y in the field of x of the defining equation, by linear algebra."""
    return affine_root_list(fiber_linear(params, x), -x.field.one)


def u_roots(params: TowerParams, z: FieldElement) -> list[FieldElement]:
    """Roots in the field of z of the u-fiber over z, by linear algebra."""
    L, c = u_poly_for_z(params, z)
    return affine_root_list(L, c)


def distinguished_z(F: Field) -> FieldElement:
    """The split value z = -1, taken from the field (it is 1 in characteristic 2)."""
    return -F.one
