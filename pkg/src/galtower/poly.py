"""Dense univariate polynomials over a ``Field``.

The raw helpers work on lists of packed field values, constant term first.
``Poly`` is the public wrapper used for fiber polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rng import SplitMix64

_SWEEP_MAX = 256


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(F._add(x, y))
    return _trim(out)


def psub(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(F._sub(x, y))
    return _trim(out)


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F._add(out[i + j], F._mul(x, y))
    return _trim(out)


def pdivmod(F, a, b):
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _trim(list(a))
    inv = F._inv(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = F._mul(a[-1], inv)
        off = len(a) - len(b)
        q[off] = c
        for i, y in enumerate(b):
            a[off + i] = F._sub(a[off + i], F._mul(c, y))
        a.pop()
        _trim(a)
    return _trim(q), a


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def monic(F, a):
    a = _trim(list(a))
    if not a:
        return a
    inv = F._inv(a[-1])
    return [F._mul(c, inv) for c in a]


def pgcd(F, a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, pmod(F, a, b)
    return monic(F, a)


def ppowmod(F, base, n, mod):
    result = [1]
    base = pmod(F, base, mod)
    while n:
        if n & 1:
            result = pmod(F, pmul(F, result, base), mod)
        n >>= 1
        if n:
            base = pmod(F, pmul(F, base, base), mod)
    return result


def peval(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F._add(F._mul(acc, x), c)
    return acc


def _split(F, g, rng):
    """Roots of a monic g that is a product of distinct linear factors."""
    if len(g) <= 1:
        return []
    if len(g) == 2:
        return [F._neg(g[0])]
    while True:
        delta = F._from_index(rng.big_below(F.order))
        if F.p == 2:
            cur = [0, delta]
            acc = list(cur)
            for _ in range(F.m - 1):
                cur = pmod(F, pmul(F, cur, cur), g)
                acc = padd(F, acc, cur)
            h = acc
        else:
            h = psub(F, ppowmod(F, [delta, 1], (F.order - 1) // 2, g), [1])
        d = pgcd(F, g, h)
        if 1 < len(d) < len(g):
            other = pdivmod(F, g, d)[0]
            return _split(F, d, rng) + _split(F, monic(F, other), rng)


def roots(F, f) -> list[int]:
    """Distinct roots of f in F, sorted by element order (raw values)."""
    f = _trim(list(f))
    if len(f) <= 1:
        return []
    if F.order <= _SWEEP_MAX:
        return [x for x in F._iter_values() if peval(F, f, x) == 0]
    f = monic(F, f)
    xq = ppowmod(F, [0, 1], F.order, f)
    g = pgcd(F, f, psub(F, xq, [0, 1]))
    return sorted(_split(F, g, SplitMix64(0xC0FFEE)))


@dataclass(frozen=True)
class Poly:
    """An ordinary polynomial sum(coeffs[i] * y**i) over ``field``."""

    field: object
    coeffs: tuple

    @classmethod
    def from_values(cls, F, values) -> "Poly":
        from .ff import FieldElement

        vals = _trim(list(values))
        return cls(F, tuple(FieldElement(F, v) for v in vals))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _values(self):
        return [c.value for c in self.coeffs]

    def __call__(self, x):
        from .ff import FieldElement

        x = self.field(x)
        return FieldElement(self.field, peval(self.field, self._values(), x.value))

    def roots_by_sweep(self, cap=None):
        """All roots in the coefficient field, by evaluating at every element."""
        F = self.field
        vals = self._values()
        kwargs = {} if cap is None else {"cap": cap}
        return [x for x in F.elements(**kwargs) if peval(F, vals, x.value) == 0]

    def roots(self):
        from .ff import FieldElement

        return [FieldElement(self.field, v) for v in roots(self.field, self._values())]

    def __repr__(self):
        terms = [f"({c})*y^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"
