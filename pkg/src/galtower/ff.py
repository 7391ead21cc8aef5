"""Finite fields F_{p^m} in the power basis of a canonical modulus.

A field is F_p[x]/(f) where f is the smallest monic irreducible polynomial of
degree m, ordering candidate polynomials by the integer sum(c_i * p**i) of
their lower coefficients.  Elements are ordered the same way, so the element
with coordinates (c_0, ..., c_{m-1}) sits at index sum(c_i * p**i) of
``enumerate_field``.

Internally an element is a plain ``int``:

* p = 2: bit i holds c_i.
* odd p, m >= 2: c_i is packed into a W-bit digit at bit offset i*W.  W is wide
  enough that products of packed integers never carry between digits, so
  multiplication is one big-int product followed by a reduction.
* odd p, m = 1: the residue itself.

All three packings are monotone in the element order, so comparing raw values
compares elements.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    IncompatibleFields,
    NotPrime,
    SizeCapExceeded,
)

DEFAULT_SIZE_CAP = 1 << 24
_TABLE_MAX = 1 << 12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise NotPrime."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    e = 0
    r = q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, e


# ---------------------------------------------------------------------------
# Linear algebra over F_p on numpy int64 arrays.


def rref_mod_p(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over F_p and its pivot columns."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref_mod_p(a, p)[1])


def nullspace_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : a @ v = 0} over F_p."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    r, pivots = rref_mod_p(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fcol in enumerate(free):
        basis[i, fcol] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-r[row, fcol]) % p
    return basis


def solve_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a @ x = b over F_p, or None."""
    a = np.asarray(a, dtype=np.int64)
    aug = np.concatenate([a, np.asarray(b, dtype=np.int64).reshape(-1, 1)], axis=1)
    r, pivots = rref_mod_p(aug, p)
    cols = a.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, cols]
    return x


def matpow_mod_p(a: np.ndarray, n: int, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while n:
        if n & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        n >>= 1
    return result


# ---------------------------------------------------------------------------
# Fields.


class Field:
    """The field F_p[x]/(modulus); ``modulus`` lists c_0..c_m with c_m = 1.

    Instances returned by ``make_field`` are canonical and cached.  The
    constructor itself does not check irreducibility; it is also used for
    quotient rings while searching for a modulus.
    """

    def __init__(self, p: int, modulus):
        self.p = p
        self.modulus = tuple(int(c) % p for c in modulus)
        self.m = len(self.modulus) - 1
        self.order = p ** self.m
        self._log = None
        self._exp = None

    # -- identity ---------------------------------------------------------
    @property
    def id(self) -> str:
        return f"GF({self.p}^{self.m})"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return self.m

    def __repr__(self):
        return f"Field(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    # -- raw packing (overridden) -------------------------------------------
    def _coeffs(self, a: int) -> list[int]:
        raise NotImplementedError

    def _from_coeffs(self, cs) -> int:
        raise NotImplementedError

    def _to_vec(self, a: int) -> np.ndarray:
        return np.array(self._coeffs(a), dtype=np.int64)

    def _from_vec(self, v) -> int:
        return self._from_coeffs([int(c) % self.p for c in v])

    def _index(self, a: int) -> int:
        idx = 0
        for c in reversed(self._coeffs(a)):
            idx = idx * self.p + c
        return idx

    def _from_index(self, idx: int) -> int:
        cs = []
        for _ in range(self.m):
            idx, c = divmod(idx, self.p)
            cs.append(c)
        return self._from_coeffs(cs)

    def _const(self, c: int) -> int:
        return c % self.p

    def _basis(self, i: int) -> int:
        cs = [0] * self.m
        cs[i] = 1
        return self._from_coeffs(cs)

    # -- raw arithmetic ---------------------------------------------------
    def _pow(self, a: int, n: int) -> int:
        if n < 0:
            return self._pow(self._inv(a), -n)
        if self._log is not None:
            if a == 0:
                return 1 if n == 0 else 0
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        result = 1
        base = a
        while n:
            if n & 1:
                result = self._mul(result, base)
            n >>= 1
            if n:
                base = self._mul(base, base)
        return result

    def _inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return self._pow(a, self.order - 2)

    def _frob(self, a: int) -> int:
        return self._pow(a, self.p)

    def _frob_n(self, a: int, n: int) -> int:
        for _ in range(n % self.m if self.m else 0):
            a = self._frob(a)
        return a

    def _build_tables(self):
        if self.order > _TABLE_MAX or self.order <= 2:
            return
        n = self.order - 1
        factors = prime_factors(n)
        for g in range(1, self.order):
            g = self._from_index(g)
            if all(self._pow(g, n // r) != 1 for r in factors):
                break
        exp = [1] * n
        log = {1: 0}
        x = 1
        for i in range(1, n):
            x = self._mul(x, g)
            exp[i] = x
            log[x] = i
        self._exp = exp
        self._log = log
        self._primitive = g
        self._mul = self._mul_table

    def _mul_table(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    # -- public element API -----------------------------------------------
    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x!r} does not live in {self.id}")
            return x
        if isinstance(x, (int, np.integer)):
            return FieldElement(self, self._const(int(x)))
        cs = [int(c) % self.p for c in x]
        if len(cs) > self.m:
            raise ValueError("too many coordinates")
        cs += [0] * (self.m - len(cs))
        return FieldElement(self, self._from_coeffs(cs))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x; for a prime field (modulus T) this is 0."""
        if self.m == 1:
            return FieldElement(self, self._const(-self.modulus[0]))
        return FieldElement(self, self._basis(1))

    def from_index(self, idx: int) -> "FieldElement":
        if not 0 <= idx < self.order:
            raise IndexError(idx)
        return FieldElement(self, self._from_index(idx))

    def elements(self, cap: int | None = DEFAULT_SIZE_CAP):
        if cap is not None and self.order > cap:
            raise SizeCapExceeded(f"{self.id} has {self.order} elements, cap {cap}")
        for v in self._iter_values():
            yield FieldElement(self, v)

    def _iter_values(self):
        for i in range(self.order):
            yield self._from_index(i)

    def random_element(self, rng, nonzero: bool = False) -> "FieldElement":
        if nonzero:
            return FieldElement(self, self._from_index(1 + rng.big_below(self.order - 1)))
        return FieldElement(self, self._from_index(rng.big_below(self.order)))

    def to_vector(self, a: "FieldElement") -> np.ndarray:
        return self._to_vec(self(a).value)

    def from_vector(self, v) -> "FieldElement":
        return FieldElement(self, self._from_vec(np.asarray(v, dtype=np.int64) % self.p))

    @functools.cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Matrix of a -> a^p on coordinate vectors (columns are images of x^i)."""
        cols = [self._to_vec(self._frob(self._basis(i))) for i in range(self.m)]
        return np.stack(cols, axis=1).astype(np.int64)

    def frobenius_power_matrix(self, n: int) -> np.ndarray:
        return _frob_power_cached(self, n % self.m)

    def multiplication_matrix(self, c: "FieldElement | int") -> np.ndarray:
        c = self(c).value
        cols = []
        x = c
        g = self._basis(1) if self.m > 1 else 0
        for i in range(self.m):
            cols.append(self._to_vec(x))
            if i + 1 < self.m:
                x = self._mul(x, g)
        return np.stack(cols, axis=1).astype(np.int64)

    def primitive_element(self) -> "FieldElement":
        """Smallest generator of the multiplicative group."""
        n = self.order - 1
        factors = prime_factors(n)
        for i in range(1, self.order):
            g = self._from_index(i)
            if all(self._pow(g, n // r) != 1 for r in factors):
                return FieldElement(self, g)
        raise AssertionError("no primitive element")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def _frob_power_cached(F: Field, n: int) -> np.ndarray:
    return matpow_mod_p(F.frobenius_matrix, n, F.p)


class _BinaryField(Field):
    def __init__(self, p, modulus):
        super().__init__(p, modulus)
        self._f = sum(c << i for i, c in enumerate(self.modulus))
        self._nbytes = (self.m + 7) // 8

    def _coeffs(self, a):
        return [(a >> i) & 1 for i in range(self.m)]

    def _from_coeffs(self, cs):
        v = 0
        for i, c in enumerate(cs):
            if c & 1:
                v |= 1 << i
        return v

    def _to_vec(self, a):
        bits = np.unpackbits(
            np.frombuffer(a.to_bytes(self._nbytes, "little"), dtype=np.uint8),
            bitorder="little",
        )
        return bits[: self.m].astype(np.int64)

    def _from_vec(self, v):
        v = np.asarray(v, dtype=np.int64) & 1
        return int.from_bytes(
            np.packbits(v.astype(np.uint8), bitorder="little").tobytes(), "little"
        )

    def _index(self, a):
        return a

    def _from_index(self, idx):
        return idx

    def _iter_values(self):
        return iter(range(self.order))

    def _const(self, c):
        return c & 1

    def _basis(self, i):
        return self._reduce(1 << i)

    def _add(self, a, b):
        return a ^ b

    _sub = _add

    def _neg(self, a):
        return a

    def _reduce(self, r):
        m, f = self.m, self._f
        while r >> m:
            r ^= f << (r.bit_length() - 1 - m)
        return r

    def _mul(self, a, b):
        if a.bit_length() < b.bit_length():
            a, b = b, a
        r = 0
        while b:
            low = b & -b
            r ^= a * low
            b ^= low
        return self._reduce(r)

    def _frob(self, a):
        return self._mul(a, a)


class _PrimeField(Field):
    """F_p for odd p; elements are residues."""

    def __init__(self, p, modulus):
        super().__init__(p, modulus)

    def _coeffs(self, a):
        return [a]

    def _from_coeffs(self, cs):
        return cs[0] % self.p

    def _index(self, a):
        return a

    def _from_index(self, idx):
        return idx

    def _iter_values(self):
        return iter(range(self.p))

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def _pow(self, a, n):
        if n < 0:
            return pow(self._inv(a), -n, self.p)
        return pow(a, n, self.p)

    def _frob(self, a):
        return a


class _PackedField(Field):
    """Odd characteristic, m >= 2: W-bit digits, Kronecker multiplication."""

    def __init__(self, p, modulus):
        super().__init__(p, modulus)
        m = self.m
        for w, dt in ((16, "<u2"), (32, "<u4"), (64, "<u8")):
            if m * (p - 1) ** 2 < (1 << (w - 2)) and m * p * p < (1 << 62):
                break
        else:
            raise NotImplementedError(f"characteristic {p} too large for degree {m}")
        self.W = w
        self._dt = np.dtype(dt)
        self._digit_mask = (1 << w) - 1
        ones = sum(1 << (i * w) for i in range(m))
        self._P_ALL = p * ones
        self._K = ((1 << (w - 1)) - p) * ones
        self._HIGH = (1 << (w - 1)) * ones
        self._elem_bytes = m * w // 8
        self._prod_bytes = (2 * m - 1) * w // 8
        # rows: coordinates of x^(m+j) mod f for j = 0..m-2
        red = np.zeros((max(m - 1, 0), m), dtype=np.int64)
        cur = [(-c) % p for c in self.modulus[:m]]
        for j in range(m - 1):
            red[j] = cur
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * fc) % p for c, fc in zip(cur, self.modulus[:m])]
        self._R = red

    def _coeffs(self, a):
        return self._to_vec(a).tolist()

    def _from_coeffs(self, cs):
        v = 0
        for i, c in enumerate(cs):
            v |= (c % self.p) << (i * self.W)
        return v

    def _to_vec(self, a):
        return np.frombuffer(a.to_bytes(self._elem_bytes, "little"), dtype=self._dt).astype(np.int64)

    def _from_vec(self, v):
        v = np.asarray(v, dtype=np.int64) % self.p
        return int.from_bytes(v.astype(self._dt).tobytes(), "little")

    def _iter_values(self):
        w, p, m = self.W, self.p, self.m
        for digits in itertools.product(range(p), repeat=m):
            v = 0
            for c in digits:
                v = (v << w) | c
            yield v

    def _fix(self, s):
        mask = ((s + self._K) & self._HIGH) >> (self.W - 1)
        return s - mask * self.p

    def _add(self, a, b):
        return self._fix(a + b)

    def _sub(self, a, b):
        return self._fix(a + self._P_ALL - b)

    def _neg(self, a):
        return self._fix(self._P_ALL - a)

    def _mul(self, a, b):
        prod = a * b
        if prod == 0:
            return 0
        d = np.frombuffer(prod.to_bytes(self._prod_bytes, "little"), dtype=self._dt)
        d = d.astype(np.int64) % self.p
        m = self.m
        r = (d[:m] + d[m:] @ self._R) % self.p
        return int.from_bytes(r.astype(self._dt).tobytes(), "little")


def _ring(p: int, modulus, irreducible: bool = False) -> Field:
    if p == 2:
        F = _BinaryField(p, modulus)
    elif len(modulus) == 2:
        F = _PrimeField(p, modulus)
    else:
        F = _PackedField(p, modulus)
    if irreducible and not isinstance(F, _PrimeField):
        F._build_tables()
    return F


# ---------------------------------------------------------------------------
# Canonical modulus search.


def _fp_poly_gcd(p: int, a: list[int], b: list[int]) -> list[int]:
    def trim(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            if a[-1] == 0:
                a.pop()
                continue
            c = a[-1] * inv % p
            off = len(a) - len(b)
            for i, bc in enumerate(b):
                a[off + i] = (a[off + i] - c * bc) % p
            a.pop()
        a = trim(a)
        a, b = b, a
    return a


def _is_irreducible(p: int, modulus: tuple[int, ...]) -> bool:
    m = len(modulus) - 1
    if m == 1:
        return True
    if modulus[0] == 0:
        return False
    if p <= 64:
        for t in range(p):
            acc = 0
            for c in reversed(modulus):
                acc = (acc * t + c) % p
            if acc == 0:
                return False
    ring = _ring(p, modulus)
    x = ring._basis(1)
    wanted = {m // r for r in prime_factors(m)}
    kept = {}
    cur = x
    for i in range(1, m + 1):
        cur = ring._frob(cur)
        if i in wanted:
            kept[i] = cur
    if cur != x:
        return False
    for i, xi in kept.items():
        diff = ring._coeffs(ring._sub(xi, x))
        if len(_fp_poly_gcd(p, list(modulus), diff)) > 1:
            return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    for idx in range(p ** m):
        lower = []
        r = idx
        for _ in range(m):
            r, c = divmod(r, p)
            lower.append(c)
        modulus = tuple(lower) + (1,)
        if _is_irreducible(p, modulus):
            return modulus
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def _canonical_field(p: int, m: int) -> Field:
    return _ring(p, _smallest_irreducible(p, m), irreducible=True)


def make_field(p: int, m: int, cap: int | None = DEFAULT_SIZE_CAP) -> Field:
    """Canonical F_{p^m}.  Pass ``cap=None`` for fields that are never enumerated."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("degree must be positive")
    if cap is not None and p ** m > cap:
        raise SizeCapExceeded(f"p^m = {p}^{m} exceeds the cap {cap}")
    return _canonical_field(p, m)


# ---------------------------------------------------------------------------
# Elements.


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field.id} vs {other.field.id}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field._const(int(other))
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field._add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field._sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field._sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field._mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field._mul(self.value, self.field._inv(b)))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field._mul(b, self.field._inv(self.value)))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field._pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field._inv(self.value))

    def frobenius(self, e: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field._frob_n(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field._const(int(other))
        return NotImplemented

    def __lt__(self, other: "FieldElement"):
        return self.value < other.value

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.value))

    def __bool__(self):
        return self.value != 0

    def is_zero(self) -> bool:
        return self.value == 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._coeffs(self.value))

    @property
    def index(self) -> int:
        """Position of this element in ``enumerate_field``."""
        return self.field._index(self.value)

    def multiplicative_order(self) -> int:
        if self.value == 0:
            raise DivisionByZero("zero has no multiplicative order")
        n = self.field.order - 1
        for r in prime_factors(n):
            while n % r == 0 and self.field._pow(self.value, n // r) == 1:
                n //= r
        return n

    def __repr__(self):
        return f"{self.field.id}{list(self.coeffs)}"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


def field_arithmetic(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field.id} vs {b.field.id}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def frobenius(a: FieldElement, e: int) -> FieldElement:
    """a^(p^e)."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return a.frobenius(e)


def enumerate_field(F: Field, cap: int | None = DEFAULT_SIZE_CAP) -> list[FieldElement]:
    return list(F.elements(cap))


# ---------------------------------------------------------------------------
# Embeddings.


@dataclass(frozen=True, eq=False)
class Embedding:
    source: Field
    target: Field
    generator_image: FieldElement
    matrix: np.ndarray = dc_field(repr=False)

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.field != self.source:
            raise FieldMismatch(f"{a.field.id} is not the source {self.source.id}")
        if self.source is self.target:
            return a
        v = (self.matrix @ self.source._to_vec(a.value)) % self.target.p
        return FieldElement(self.target, self.target._from_vec(v))

    def is_identity(self) -> bool:
        return self.source == self.target


def _embedding_matrix(src: Field, tgt: Field, beta: int) -> np.ndarray:
    cols = []
    x = 1
    for _ in range(src.m):
        cols.append(tgt._to_vec(x))
        x = tgt._mul(x, beta)
    return np.stack(cols, axis=1).astype(np.int64)


def subfield_basis(F: Field, d: int) -> list[FieldElement]:
    """An F_p-basis of the unique subfield of F with p^d elements."""
    if F.m % d:
        raise IncompatibleFields(f"{F.id} has no subfield of degree {d}")
    a = (F.frobenius_power_matrix(d) - np.eye(F.m, dtype=np.int64)) % F.p
    return [F.from_vector(v) for v in nullspace_mod_p(a, F.p)]


def minimal_polynomial(a: FieldElement) -> tuple[int, ...]:
    """Minimal polynomial of ``a`` over F_p, constant term first, monic."""
    F = a.field
    p = F.p
    vecs = [F._to_vec(1)]
    x = 1
    while True:
        x = F._mul(x, a.value)
        vecs.append(F._to_vec(x))
        mat = np.stack(vecs, axis=1)
        ns = nullspace_mod_p(mat, p)
        if len(ns):
            v = ns[0]
            inv = pow(int(v[-1]), p - 2, p)
            return tuple(int(c) * inv % p for c in v)


@functools.lru_cache(maxsize=None)
def find_embedding(src: Field, tgt: Field) -> Embedding:
    """The embedding sending the generator of ``src`` to the smallest root of its modulus."""
    from .poly import roots as poly_roots
    from .rng import SplitMix64

    if src == tgt:
        return Embedding(src, tgt, src.gen, np.eye(src.m, dtype=np.int64))
    if src.p != tgt.p or tgt.m % src.m:
        raise IncompatibleFields(f"cannot embed {src.id} into {tgt.id}")
    d = src.m
    if d == 1:
        beta = tgt._const(-src.modulus[0])
        return Embedding(src, tgt, FieldElement(tgt, beta), _embedding_matrix(src, tgt, beta))

    # Model the degree-d subfield of tgt as F_p[x]/(g) for a generator w,
    # solve for a root of src.modulus there, then map back.
    basis = subfield_basis(tgt, d)
    rng = SplitMix64(0x5EED)
    candidates = iter(basis)
    while True:
        w = next(candidates, None)
        if w is None:
            w = tgt.zero
            for b in basis:
                w = w + b * rng.below(tgt.p)
        g = minimal_polynomial(w)
        if len(g) - 1 == d:
            break
    model = _ring(tgt.p, g, irreducible=True)
    found = poly_roots(model, [model._const(c) for c in src.modulus])
    if not found:  # pragma: no cover
        raise AssertionError("modulus has no root in the subfield")
    rho = model._coeffs(found[0])
    powers = []
    x = 1
    for _ in range(d):
        powers.append(x)
        x = tgt._mul(x, w.value)
    beta = 0
    for c, wp in zip(rho, powers):
        if c:
            beta = tgt._add(beta, tgt._mul(tgt._const(c), wp))
    conj = [beta]
    for _ in range(d - 1):
        conj.append(tgt._frob(conj[-1]))
    beta = min(conj)
    return Embedding(src, tgt, FieldElement(tgt, beta), _embedding_matrix(src, tgt, beta))


def extension(F: Field, s: int) -> tuple[Field, Embedding]:
    """The canonical degree-s extension of F together with the embedding of F."""
    E = make_field(F.p, F.m * s, cap=None)
    return E, find_embedding(F, E)
