"""Complete splitting of the distinguished place, checked by exhaustive enumeration."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import BadLevel, BudgetExceeded, PoleHit
from .tower import (
    TowerParams,
    distinguished_z,
    fiber_poly_F,
    fiber_roots,
    u_roots,
    z_step,
)

DEFAULT_DEPTH = 3
DEFAULT_BUDGET = 10 ** 7


@dataclass(frozen=True)
class LevelRow:
    level: int
    nodes: int
    expected: int
    ok: bool
    key: int | None = None  # index of x for per-x rows


@dataclass
class SplittingReport:
    params: TowerParams
    mode: str  # "towerF" or "towerH"
    levels: int
    per_level: list[LevelRow]
    failures: list[dict] = field(default_factory=list)
    solutions: list = field(default_factory=list, repr=False)  # (x, y) pairs, towerF only

    @property
    def ok(self) -> bool:
        return not self.failures and all(r.ok for r in self.per_level)

    @property
    def expected_children(self) -> int:
        return self.params.branching


def verify_splitting_F(params: TowerParams) -> SplittingReport:
    """For every x in F_ell^*, the cleared fiber has q^(n-1) distinct roots, all nonzero."""
    F = params.field()
    want = params.branching
    rows, failures, sols = [], [], []
    for x in F.elements():
        if x.is_zero():
            continue
        ys = fiber_poly_F(params, x).roots_by_sweep()
        distinct = len(set(ys)) == len(ys)
        nonzero = all(not y.is_zero() for y in ys)
        ok = distinct and nonzero and len(ys) == want
        rows.append(LevelRow(1, len(ys), want, ok, key=x.index))
        if not ok:
            failures.append({"x": x.index, "roots": [y.index for y in ys]})
        sols.extend((x, y) for y in ys)
    return SplittingReport(params, "towerF", 1, rows, failures, sols)


def _children(params: TowerParams, z):
    """(u roots over z, next z for each) or raises PoleHit."""
    us = u_roots(params, z)
    return us, [z_step(params, u, "right") for u in us]


def enumerate_chains_H(params: TowerParams, depth: int = DEFAULT_DEPTH) -> SplittingReport:
    """Breadth-first expansion of u-chains starting at z = -1.

    Every node's children depend only on its z, so each level is kept as a
    multiset of z-values and each distinct z is expanded once.
    """
    if depth < 1:
        raise BadLevel("depth must be at least 1")
    F = params.field()
    want = params.branching
    level = Counter({distinguished_z(F): 1})
    rows = [LevelRow(0, 1, 1, True)]
    failures = []
    cache = {}
    for d in range(1, depth + 1):
        nxt = Counter()
        ok = True
        for z in sorted(level):
            if z not in cache:
                try:
                    us, zs = _children(params, z)
                    bad = None
                    if len(us) != want:
                        bad = f"{len(us)} roots"
                    elif any(z_step(params, u, "left") != z for u in us):
                        bad = "left z-step disagrees with node"
                    elif any(w.is_zero() for w in zs):
                        bad = "next z is zero"
                except PoleHit as exc:
                    us, zs, bad = [], [], f"pole: {exc}"
                cache[z] = (zs, bad)
            zs, bad = cache[z]
            if bad:
                ok = False
                failures.append({"level": d, "z": z.index, "reason": bad})
                continue
            for w in zs:
                nxt[w] += level[z]
        nodes = sum(nxt.values())
        expected = want ** d
        rows.append(LevelRow(d, nodes, expected, ok and nodes == expected))
        level = nxt
    return SplittingReport(params, "towerH", depth, rows, failures)


@dataclass(frozen=True)
class Census:
    params: TowerParams
    level: int
    table: dict  # x index -> number of affine solutions above x
    total: int


def count_solutions(params: TowerParams, level: int = 1, budget: int = DEFAULT_BUDGET) -> Census:
    """Affine F_ell-points of the level-1 or level-2 model, keyed by the bottom x.

    Level 1 counts pairs (x, y); level 2 counts triples (x, y, w) with both
    consecutive pairs on the curve.  x = 0 never contributes.
    """
    if level not in (1, 2):
        raise BadLevel("level must be 1 or 2")
    ell = params.ell
    if ell ** level * params.branching > budget:
        raise BudgetExceeded(f"{ell}^{level} * {params.branching} exceeds budget {budget}")
    F = params.field()
    memo = {}

    def count_above(x):
        if x.is_zero():
            return []
        if x not in memo:
            memo[x] = fiber_roots(params, x)
        return memo[x]

    table = {}
    for x in F.elements():
        ys = count_above(x)
        if level == 1:
            table[x.index] = len(ys)
        else:
            table[x.index] = sum(len(count_above(y)) for y in ys)
    return Census(params, level, table, sum(table.values()))
