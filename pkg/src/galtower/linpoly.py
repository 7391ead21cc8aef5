"""q-additive (linearized) polynomials sum(c_j * T^(q^j)) over a finite field.

Root spaces are computed by linear algebra: a -> h(a) is F_p-linear on any
field E containing the coefficients, so its kernel is found by elimination on
an m x m matrix over F_p and then regrouped into an F_q-basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BaseMismatch,
    CapExceeded,
    FieldMismatch,
    HostTooSmall,
    NotSeparable,
    NotSeparableOrZeroLead,
    SizeCapExceeded,
)
from .ff import (
    DEFAULT_SIZE_CAP,
    Field,
    FieldElement,
    extension,
    find_embedding,
    make_field,
    nullspace_mod_p,
    prime_power,
    rank_mod_p,
    solve_mod_p,
)
from .rng import SplitMix64

DEFAULT_EXT_CAP = 64


@dataclass(frozen=True, eq=False)
class LinearizedPoly:
    q: int
    host: Field
    coeffs: tuple  # FieldElements in host, trailing zeros trimmed

    @classmethod
    def of(cls, q: int, host: Field, coeffs) -> "LinearizedPoly":
        p, e = prime_power(q)
        if p != host.p or host.m % e:
            raise HostTooSmall(f"{host.id} does not contain F_{q}")
        cs = [host(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        return cls(q, host, tuple(cs))

    @property
    def e(self) -> int:
        return prime_power(self.q)[1]

    @property
    def t(self) -> int:
        """q-degree exponent; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def separable(self) -> bool:
        return bool(self.coeffs) and not self.coeffs[0].is_zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def values(self) -> list[int]:
        return [c.value for c in self.coeffs]

    def __eq__(self, other):
        if not isinstance(other, LinearizedPoly):
            return NotImplemented
        return self.q == other.q and self.host == other.host and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.q, self.host, self.coeffs))

    def __call__(self, a: FieldElement) -> FieldElement:
        return lin_eval(self, a)

    def _check(self, other: "LinearizedPoly"):
        if self.q != other.q:
            raise BaseMismatch(f"q = {self.q} vs q = {other.q}")
        if self.host != other.host:
            raise FieldMismatch(f"{self.host.id} vs {other.host.id}")

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.host.zero
        cs = [
            (self.coeffs[i] if i < len(self.coeffs) else z)
            + (other.coeffs[i] if i < len(other.coeffs) else z)
            for i in range(n)
        ]
        return LinearizedPoly.of(self.q, self.host, cs)

    def __neg__(self):
        return LinearizedPoly(self.q, self.host, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LinearizedPoly":
        c = self.host(c)
        return LinearizedPoly.of(self.q, self.host, [c * x for x in self.coeffs])

    def qpower(self, j: int) -> "LinearizedPoly":
        """The polynomial h(T)^(q^j)."""
        e = self.e
        cs = [self.host.zero] * j + [c.frobenius(e * j) for c in self.coeffs]
        return LinearizedPoly.of(self.q, self.host, cs)

    def embed(self, emb) -> "LinearizedPoly":
        if emb.source != self.host:
            raise FieldMismatch(f"embedding source {emb.source.id} is not {self.host.id}")
        return LinearizedPoly(self.q, emb.target, tuple(emb(c) for c in self.coeffs))

    def over(self, E: Field) -> "LinearizedPoly":
        """The same polynomial with coefficients pushed into an extension E."""
        if E == self.host:
            return self
        return self.embed(find_embedding(self.host, E))

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            terms.append(f"({c})T^{self.q}^{j}" if j else f"({c})T")
        return "LinearizedPoly[q=%d, %s](%s)" % (
            self.q,
            self.host.id,
            " + ".join(terms) if terms else "0",
        )


def monomial(q: int, host: Field, j: int, c=1) -> LinearizedPoly:
    """c * T^(q^j)."""
    return LinearizedPoly.of(q, host, [0] * j + [c])


def trace_poly(i: int, q: int, host: Field) -> LinearizedPoly:
    """Tr_i(T) = T + T^q + ... + T^(q^(i-1))."""
    if i < 1:
        raise ValueError("trace length must be positive")
    return LinearizedPoly.of(q, host, [1] * i)


def frob_q(a: FieldElement, q: int, times: int = 1) -> FieldElement:
    """a^(q^times)."""
    return a.frobenius(prime_power(q)[1] * times)


def trace(a: FieldElement, i: int, q: int) -> FieldElement:
    """Tr_i(a), evaluated directly."""
    e = prime_power(q)[1]
    F = a.field
    acc = 0
    x = a.value
    for _ in range(i):
        acc = F._add(acc, x)
        x = F._frob_n(x, e)
    return FieldElement(F, acc)


def lin_eval(h: LinearizedPoly, a: FieldElement) -> FieldElement:
    if a.field != h.host:
        raise FieldMismatch(f"{a.field.id} is not the host {h.host.id}; embed first")
    F = h.host
    e = h.e
    acc = 0
    x = a.value
    last = len(h.coeffs) - 1
    for j, c in enumerate(h.coeffs):
        if c.value:
            acc = F._add(acc, F._mul(c.value, x))
        if j < last:
            x = F._frob_n(x, e)
    return FieldElement(F, acc)


def lin_compose(h1: LinearizedPoly, h2: LinearizedPoly) -> LinearizedPoly:
    """h1(h2(T))."""
    h1._check(h2)
    if h1.is_zero() or h2.is_zero():
        return LinearizedPoly(h1.q, h1.host, ())
    F = h1.host
    e = h1.e
    out = [0] * (len(h1.coeffs) + len(h2.coeffs) - 1)
    for i, c in enumerate(h1.coeffs):
        if c.is_zero():
            continue
        for j, d in enumerate(h2.coeffs):
            if d.value:
                term = F._mul(c.value, F._frob_n(d.value, e * i))
                out[i + j] = F._add(out[i + j], term)
    return LinearizedPoly.of(h1.q, F, [FieldElement(F, v) for v in out])


def adjoint(h: LinearizedPoly) -> LinearizedPoly:
    """sum c_i^(q^(t-i)) T^(q^(t-i))."""
    if not h.separable:
        raise NotSeparableOrZeroLead("adjoint needs nonzero c_0 and c_t")
    t = h.t
    e = h.e
    cs = [None] * (t + 1)
    for i, c in enumerate(h.coeffs):
        cs[t - i] = c.frobenius(e * (t - i))
    return LinearizedPoly.of(h.q, h.host, cs)


# ---------------------------------------------------------------------------
# Root spaces.


def fq_basis_in(E: Field, q: int) -> list[FieldElement]:
    """An F_p-basis of the copy of F_q inside E."""
    p, e = prime_power(q)
    Fq = make_field(p, e)
    emb = find_embedding(Fq, E)
    return [emb(Fq.one)] + [emb(Fq.gen ** i) for i in range(1, e)]


def fq_elements_in(E: Field, q: int) -> list[FieldElement]:
    p, e = prime_power(q)
    Fq = make_field(p, e)
    emb = find_embedding(Fq, E)
    return [emb(x) for x in Fq.elements()]


def lin_matrix(h: LinearizedPoly) -> np.ndarray:
    """Matrix over F_p of a -> h(a) on the host, acting on coordinate columns."""
    F = h.host
    m = F.m
    acc = np.zeros((m, m), dtype=np.int64)
    for j, c in enumerate(h.coeffs):
        if c.is_zero():
            continue
        acc = (acc + F.multiplication_matrix(c) @ F.frobenius_power_matrix(h.e * j)) % F.p
    return acc


@dataclass(frozen=True, eq=False)
class RootSpace:
    poly: LinearizedPoly  # hosted in ``field``
    field: Field
    basis: tuple  # F_q-basis
    dim: int
    fp_basis: tuple  # F_p-basis of the same space

    @property
    def q(self) -> int:
        return self.poly.q

    def elements(self, cap: int | None = DEFAULT_SIZE_CAP) -> list[FieldElement]:
        """Every root, as F_p-combinations of ``fp_basis`` (q**dim of them)."""
        p = self.field.p
        n = len(self.fp_basis)
        if cap is not None and p ** n > cap:
            raise SizeCapExceeded(f"{p}^{n} roots exceed the cap {cap}")
        F = self.field
        out = [0]
        for b in self.fp_basis:
            mult = [F._mul(F._const(c), b.value) for c in range(p)]
            out = [F._add(x, mc) for mc in mult for x in out]
        return [FieldElement(F, v) for v in sorted(out)]

    def contains(self, x: FieldElement) -> bool:
        return lin_eval(self.poly, x).is_zero()

    def coordinates(self, x: FieldElement) -> np.ndarray | None:
        """F_p-coordinates of x in ``fp_basis``, or None when x is not in the span."""
        if not self.fp_basis:
            return np.zeros(0, dtype=np.int64) if x.is_zero() else None
        F = self.field
        mat = np.stack([F._to_vec(b.value) for b in self.fp_basis], axis=1)
        return solve_mod_p(mat, F._to_vec(x.value), F.p)


def _fq_basis_from_fp(E: Field, q: int, fp_basis: list[FieldElement]) -> list[FieldElement]:
    omegas = fq_basis_in(E, q)
    chosen = []
    span = []
    for v in fp_basis:
        if span:
            cur = np.stack([E._to_vec(s.value) for s in span], axis=0)
            test = np.concatenate([cur, E._to_vec(v.value)[None, :]], axis=0)
            if rank_mod_p(test, E.p) == len(span):
                continue
        chosen.append(v)
        span.extend(w * v for w in omegas)
    return chosen


def root_space(h: LinearizedPoly, E: Field | None = None) -> RootSpace:
    """Roots of a separable h inside E (default: the host)."""
    if not h.separable:
        raise NotSeparable("root space needs c_0 != 0")
    E = h.host if E is None else E
    hE = h.over(E)
    ker = nullspace_mod_p(lin_matrix(hE), E.p)
    fp = [E.from_vector(v) for v in ker]
    e = h.e
    if len(fp) % e:  # pragma: no cover - kernel of an F_q-linear map
        raise AssertionError("kernel dimension is not a multiple of [F_q:F_p]")
    basis = _fq_basis_from_fp(E, h.q, fp)
    return RootSpace(hE, E, tuple(basis), len(fp) // e, tuple(fp))


def roots_by_sweep(h: LinearizedPoly, E: Field | None = None, cap=DEFAULT_SIZE_CAP):
    """Every root of h in E by direct evaluation; an oracle for ``root_space``."""
    E = h.host if E is None else E
    hE = h.over(E)
    return [x for x in E.elements(cap) if lin_eval(hE, x).is_zero()]


def splitting_degree(h: LinearizedPoly, cap: int = DEFAULT_EXT_CAP, method: str = "residue") -> int:
    """Smallest s such that all q^t roots of h lie in the degree-s extension of the host.

    ``residue`` tracks T^(|host|^s) modulo h, which stays a linearized
    polynomial of q-degree < t; h splits in F_{|host|^s} exactly when that
    residue is T.  ``root_space`` builds each extension and measures the
    kernel dimension instead.
    """
    if not h.separable:
        raise NotSeparable("splitting degree needs c_0 != 0")
    t = h.t
    if t == 0:
        return 1
    if method == "root_space":
        for s in range(1, cap + 1):
            E, _ = extension(h.host, s)
            if root_space(h, E).dim == t:
                return s
        raise CapExceeded(f"no splitting within degree {cap}")
    if method != "residue":
        raise ValueError(f"unknown method {method!r}")
    F = h.host
    e = h.e
    c = h.values()
    inv_top = F._inv(c[t])
    red = [F._neg(F._mul(ci, inv_top)) for ci in c[:t]]
    ident = [1] + [0] * (t - 1)
    r = list(ident)
    steps = F.m // e
    for s in range(1, cap + 1):
        for _ in range(steps):
            top = F._frob_n(r[-1], e)
            new = [0] + [F._frob_n(x, e) for x in r[:-1]]
            if top:
                new = [F._add(x, F._mul(top, ri)) for x, ri in zip(new, red)]
            r = new
        if r == ident:
            return s
    raise CapExceeded(f"no splitting within degree {cap}")


# ---------------------------------------------------------------------------
# Trace identities.


def bezout_pair(i: int, j: int) -> tuple[int, int, int]:
    """(r, a, b) with r = gcd(i, j), a*i - b*j = r, a minimal non-negative, b >= 0."""
    r = math.gcd(i, j)
    a = 0
    while True:
        num = a * i - r
        if num >= 0 and num % j == 0:
            return r, a, num // j
        a += 1


@dataclass
class Verdict:
    ok: bool
    checks: dict
    witness: dict | None = None


def euclid_identity_check(i: int, j: int, q: int, trials: int = 4, seed: int = 0) -> Verdict:
    """Tr_{ai}(x) - Tr_{bj}(x)^(q^r) = Tr_r(x) and its expansion in Tr_i, Tr_j.

    Checked as coefficient lists over F_q, then numerically at sampled points
    of F_{q^lcm(i, j)}.
    """
    p, e = prime_power(q)
    r, a, b = bezout_pair(i, j)
    Fq = make_field(p, e)
    tr_r = trace_poly(r, q, Fq)
    lhs = trace_poly(a * i, q, Fq)
    if b:
        lhs = lhs - trace_poly(b * j, q, Fq).qpower(r)
    formal = lhs == tr_r

    # sum_alpha Tr_i^(q^(alpha i)) - (sum_beta Tr_j^(q^(beta j)))^(q^r)
    tri = trace_poly(i, q, Fq)
    trj = trace_poly(j, q, Fq)
    zero = LinearizedPoly(q, Fq, ())
    left = zero
    for alpha in range(a):
        left = left + tri.qpower(alpha * i)
    right = zero
    for beta in range(b):
        right = right + trj.qpower(beta * j)
    expanded_poly = left - right.qpower(r)
    expanded = expanded_poly == tr_r

    E = make_field(p, e * (i * j // r), cap=None)
    rng = SplitMix64(seed)
    numeric = True
    witness = None
    for _ in range(trials):
        x = E.random_element(rng)
        ti, tj = trace(x, i, q), trace(x, j, q)
        val = E.zero
        for alpha in range(a):
            val = val + frob_q(ti, q, alpha * i)
        inner = E.zero
        for beta in range(b):
            inner = inner + frob_q(tj, q, beta * j)
        val = val - frob_q(inner, q, r)
        if val != trace(x, r, q):
            numeric = False
            witness = {"x": repr(x)}
            break
    checks = {"formal": formal, "expanded": expanded, "numeric": numeric}
    return Verdict(all(checks.values()), checks | {"r": r, "a": a, "b": b}, witness)
