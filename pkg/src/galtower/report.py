"""Verification suites and their CSV / JSON / pretty renderings.

A suite run yields a flat list of ``Row`` objects.  Rows are produced in a
fixed order (parameters, then element order, then sample index), so output is
byte-stable for a fixed seed.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import (
    admissible_ks,
    best_k,
    de_ratio_bounds,
    de_ratio_caps,
    dv_bound,
    genus_bound_coeff,
    is_dv_optimal,
    lambda_bound,
    ram_profile,
)
from .errors import CapExceeded, PoleHit, SplittingTooSmall
from .ff import make_field, prime_power
from .linpoly import (
    DEFAULT_EXT_CAP,
    adjoint,
    euclid_identity_check,
    lin_compose,
    root_space,
    splitting_degree,
    trace_poly,
)
from .shifting import (
    DEFAULT_Z_SAMPLES,
    check_harvest,
    harvest,
    psi_check,
    sample_u,
    sample_z,
    splitting_fields_equal,
)
from .splitting import enumerate_chains_H, verify_splitting_F
from .tower import (
    TowerParams,
    distinguished_z,
    dual_z_step,
    f_i_from_u,
    f_poly,
    params_from,
    rsu_checks,
    u_poly_for_z,
    u_roots,
    z_step,
)

SUITES = ("splitting", "chains", "identities", "shifting", "all")

SPLIT_COLUMNS = ["q", "n", "k", "mode", "level", "nodes", "expected", "ok"]
SHIFT_COLUMNS = ["q", "n", "k", "z-index", "check", "pass"]
CHECK_COLUMNS = ["q", "n", "k", "suite", "check", "key", "pass"]
LAMBDA_COLUMNS = ["q", "n", "k", "a", "b", "lambda_num", "lambda_den", "dv_bound", "ratio", "best_k"]

IDENTITY_RANGE = 6


@dataclass
class Row:
    suite: str
    check: str
    key: str
    passed: bool
    detail: dict = field(default_factory=dict)


@dataclass
class RunConfig:
    command: str = "verify"
    q: int = 2
    n: int = 3
    k: int = 1
    suite: str = "all"
    depth: int = 3
    trials: int = 200
    seed: int = 0
    ext_cap: int = DEFAULT_EXT_CAP
    z_samples: int = DEFAULT_Z_SAMPLES
    fmt: str = "pretty"
    out: str | None = None


@dataclass
class Report:
    params: TowerParams
    config: RunConfig
    rows: list[Row]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.rows)


# ---------------------------------------------------------------------------
# Suites.


def splitting_rows(params: TowerParams) -> tuple[list[Row], list]:
    rep = verify_splitting_F(params)
    rows = [
        Row("splitting", "roots", f"x={r.key}", r.ok,
            {"mode": "towerF", "level": r.level, "nodes": r.nodes, "expected": r.expected})
        for r in rep.per_level
    ]
    return rows, rep.solutions


def chain_rows(params: TowerParams, depth: int) -> list[Row]:
    rep = enumerate_chains_H(params, depth)
    return [
        Row("chains", "level", str(r.level), r.ok,
            {"mode": "towerH", "level": r.level, "nodes": r.nodes, "expected": r.expected})
        for r in rep.per_level
    ]


def identity_rows(params: TowerParams, cfg: RunConfig, solutions=None) -> list[Row]:
    q, n, k = params.q, params.n, params.k
    p, e = prime_power(q)
    Fq = make_field(p, e)
    rows = []

    for i in range(1, IDENTITY_RANGE + 1):
        for j in range(1, IDENTITY_RANGE + 1):
            v = euclid_identity_check(i, j, q, trials=2, seed=cfg.seed)
            rows.append(Row("identities", "euclid", f"{i},{j}", v.ok, v.checks))
            ti, tj = trace_poly(i, q, Fq), trace_poly(j, q, Fq)
            rows.append(Row("identities", "commute", f"{i},{j}", lin_compose(ti, tj) == lin_compose(tj, ti)))
            if j < i:
                split = trace_poly(i - j, q, Fq) + tj.qpower(i - j)
                rows.append(Row("identities", "trace_split", f"{i},{j}", split == ti))

    # Relations among x, y, R, S, u over every solution pair.
    if solutions is None:
        solutions = verify_splitting_F(params).solutions
    tallies: dict[str, list[int]] = {}
    for x, y in solutions:
        for name, val in rsu_checks(params, x, y).items():
            t = tallies.setdefault(name, [0, 0, 0])
            t[0 if val is None else (1 if val else 2)] += 1
    for name in sorted(tallies):
        undefined, good, bad = tallies[name]
        rows.append(Row("identities", "rsu", name, bad == 0,
                        {"checked": good + bad, "undefined": undefined}))

    # u-fibers over every z in F_ell^*: empty or a coset of the roots of f.
    F = params.field()
    coset_ok = True
    additive_ok = True
    for z in F.elements():
        if z.is_zero():
            continue
        L, c = u_poly_for_z(params, z)
        f = f_poly(params, z)
        additive_ok &= L == f.scale(-z)
        us = u_roots(params, z)
        if us:
            V = set(root_space(f, F).elements())
            coset_ok &= {u - us[0] for u in us} == V
    rows.append(Row("identities", "u_fiber", "additive_part", additive_ok))
    rows.append(Row("identities", "u_fiber", "coset", coset_ok))

    # Along the split locus: both expressions of the z-recursion agree.
    z0 = distinguished_z(F)
    chain_ok = True
    for u in u_roots(params, z0):
        z1 = z_step(params, u, "right")
        chain_ok &= z_step(params, u, "left") == z0
        chain_ok &= all(z_step(params, v, "left") == z1 for v in u_roots(params, z1))
    rows.append(Row("identities", "z_recursion", "split_locus", chain_ok))

    # Generic u: closed forms of f_i against f(z), and the dual recursion.
    us, _ = sample_u(params, cfg.trials, cfg.seed)
    fi_ok = dual_ok = True
    for u in us:
        zl, zr = z_step(params, u, "left"), z_step(params, u, "right")
        fi_ok &= f_i_from_u(params, u, "same") == f_poly(params, zl)
        fi_ok &= f_i_from_u(params, u, "next") == f_poly(params, zr)
        dual_ok &= dual_z_step(params, u, "left") * zr == 1 and dual_z_step(params, u, "right") * zl == 1
    rows.append(Row("identities", "f_closed_form", "sampled_u", fi_ok, {"samples": len(us)}))
    rows.append(Row("identities", "dual_recursion", "sampled_u", dual_ok, {"samples": len(us)}))
    return rows


def shifting_rows(params: TowerParams, cfg: RunConfig) -> list[Row]:
    rows = []
    us, poles = sample_u(params, cfg.trials, cfg.seed)
    total = 0
    for idx, u in enumerate(us):
        try:
            h = harvest(params, u, cfg.ext_cap)
        except CapExceeded as exc:
            rows.append(Row("shifting", "u:harvest", str(idx), False, {"error": str(exc)}))
            continue
        res = check_harvest(params, h)
        total += res.pop("pairs")
        for name, ok in res.items():
            rows.append(Row("shifting", f"u:{name}", str(idx), bool(ok), {"degree": h.degree}))
    rows.append(Row("shifting", "u:pair_count", "total", total >= cfg.trials,
                    {"pairs": total, "skipped_poles": poles}))

    for idx, z in enumerate(sample_z(params, cfg.z_samples, cfg.seed)):
        try:
            eq = splitting_fields_equal(params, z, cfg.ext_cap)
            psi = psi_check(params, z, cap=cfg.ext_cap)
            adj = adjoint(f_poly(params, z).scale(z))
            adj_ok = splitting_degree(adj, cfg.ext_cap) == eq["deg_f"]
        except (CapExceeded, SplittingTooSmall, PoleHit) as exc:
            rows.append(Row("shifting", "z:error", str(idx), False, {"error": str(exc)}))
            continue
        rows.append(Row("shifting", "z:split_equal", str(idx), eq["equal"], {"degree": eq["deg_f"]}))
        rows.append(Row("shifting", "z:adjoint_degree", str(idx), adj_ok))
        rows.append(Row("shifting", "z:psi_bijective", str(idx), psi["bijective"]))
    return rows


def run_suite(params: TowerParams, cfg: RunConfig) -> Report:
    suite = cfg.suite
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    rows: list[Row] = []
    solutions = None
    if suite in ("splitting", "all"):
        r, solutions = splitting_rows(params)
        rows += r
    if suite in ("chains", "all"):
        rows += chain_rows(params, cfg.depth)
    if suite in ("identities", "all"):
        rows += identity_rows(params, cfg, solutions)
    if suite in ("shifting", "all"):
        rows += shifting_rows(params, cfg)
    return Report(params, cfg, rows)


# ---------------------------------------------------------------------------
# Rendering.


def _csv(header: list[str], records: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(records)
    return buf.getvalue()


def _flag(b: bool) -> str:
    return "true" if b else "false"


def report_csv(rep: Report) -> str:
    q, n, k = rep.params.key
    suite = rep.config.suite
    if suite in ("splitting", "chains"):
        recs = [
            [q, n, k, r.detail["mode"], r.detail["level"], r.detail["nodes"], r.detail["expected"], _flag(r.passed)]
            for r in rep.rows
        ]
        return _csv(SPLIT_COLUMNS, recs)
    if suite == "shifting":
        return _csv(SHIFT_COLUMNS, [[q, n, k, r.key, r.check, _flag(r.passed)] for r in rep.rows])
    return _csv(CHECK_COLUMNS, [[q, n, k, r.suite, r.check, r.key, _flag(r.passed)] for r in rep.rows])


def _params_dict(params: TowerParams) -> dict:
    return {"p": params.p, "q": params.q, "n": params.n, "k": params.k, "a": params.a, "b": params.b, "ell": params.ell}


def report_json(rep: Report) -> str:
    c = rep.config
    doc = {
        "params": _params_dict(rep.params),
        "config": {"suite": c.suite, "depth": c.depth, "trials": c.trials, "seed": c.seed,
                   "ext_cap": c.ext_cap, "z_samples": c.z_samples},
        "ok": rep.ok,
        "rows": [
            {"suite": r.suite, "check": r.check, "key": r.key, "pass": r.passed, "detail": r.detail}
            for r in rep.rows
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def report_pretty(rep: Report) -> str:
    p = rep.params
    lines = [f"verify q={p.q} n={p.n} k={p.k} (a={p.a}, b={p.b}) suite={rep.config.suite} seed={rep.config.seed}"]
    groups: dict[tuple[str, str], list[Row]] = {}
    for r in rep.rows:
        groups.setdefault((r.suite, r.check), []).append(r)
    for (suite, check), rs in groups.items():
        good = sum(r.passed for r in rs)
        status = "PASS" if good == len(rs) else "FAIL"
        lines.append(f"  {status}  {suite:<10} {check:<22} {good}/{len(rs)}")
        for r in rs:
            if not r.passed:
                lines.append(f"        failed key={r.key} {json.dumps(r.detail, sort_keys=True)}")
    lines.append(f"result: {'PASS' if rep.ok else 'FAIL'} ({sum(r.passed for r in rep.rows)}/{len(rep.rows)} checks)")
    return "\n".join(lines) + "\n"


def render(rep: Report, fmt: str) -> str:
    if fmt == "csv":
        return report_csv(rep)
    if fmt == "json":
        return report_json(rep)
    return report_pretty(rep)


def frac(x: Fraction) -> str:
    """Exact value followed by a 6-digit decimal."""
    return f"{x} ({float(x):.6f})"


def params_sheet(params: TowerParams, levels=range(2, 6)) -> dict:
    lam = lambda_bound(params)
    g = genus_bound_coeff(params)
    sheet = {
        "params": _params_dict(params),
        "lambda_bound": str(lam),
        "lambda_decimal": f"{float(lam):.6f}",
        "genus_bound_coeff": str(g),
        "genus_decimal": f"{float(g):.6f}",
        "dv_bound": f"{dv_bound(params):.6f}",
        "dv_optimal": is_dv_optimal(params),
        "de_ratio_caps": [str(c) for c in de_ratio_caps(params)],
        "ramification": [],
    }
    for i in levels:
        r = ram_profile(params, i)
        sheet["ramification"].append({
            "level": i,
            "P0": {"tame": r.tame0, "wild_exponent": r.wild0_exponent, "wild": str(r.wild0), "epsilon": r.epsilon0},
            "Pinf": {"tame": r.tame_inf, "wild_exponent": r.wild_inf_exponent, "wild": str(r.wild_inf),
                     "epsilon": r.epsilon_inf},
            "valid": r.valid,
        })
    return sheet


def params_pretty(params: TowerParams) -> str:
    lam = lambda_bound(params)
    lines = [
        f"q={params.q} n={params.n} k={params.k}  ell={params.ell}  p={params.p}",
        f"a={params.a} b={params.b}   ({params.a}*{params.k} - {params.b}*{params.n - params.k} = 1)",
        f"lambda >= {frac(lam)}" + ("  [DV-optimal]" if is_dv_optimal(params) else ""),
        f"sqrt(ell) - 1 = {dv_bound(params):.6f}   ratio {float(lam) / dv_bound(params):.6f}",
        f"genus bound coefficient = {frac(genus_bound_coeff(params))}",
        "ramification lower bounds (times p^eps, eps unknown >= 0):",
    ]
    for i in range(2, 6):
        r = ram_profile(params, i)
        warn = "" if r.valid else "  [warning: negative wild exponent]"
        lines.append(
            f"  i={i}: P0 {r.tame0} * {params.q}^{r.wild0_exponent} * {params.p}^eps1"
            f"   Pinf {r.tame_inf} * {params.q}^{r.wild_inf_exponent} * {params.p}^eps2{warn}"
        )
    return "\n".join(lines) + "\n"


def params_csv(params: TowerParams) -> str:
    header = ["q", "n", "k", "a", "b", "lambda_num", "lambda_den", "genus_num", "genus_den", "dv_optimal"]
    lam, g = lambda_bound(params), genus_bound_coeff(params)
    rec = [params.q, params.n, params.k, params.a, params.b, lam.numerator, lam.denominator,
           g.numerator, g.denominator, _flag(is_dv_optimal(params))]
    return _csv(header, [rec])


# ---------------------------------------------------------------------------
# Lambda table.


def prime_powers_upto(limit: int) -> list[int]:
    """Prime powers q with q^2 <= limit."""
    out = []
    for q in range(2, math.isqrt(limit) + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def lambda_table(l_max: int, all_k: bool = False) -> list[dict]:
    """Rows for every ell = q^n <= l_max with n >= 2, sorted by ell then q."""
    rows = []
    for q in prime_powers_upto(l_max):
        n = 2
        while q ** n <= l_max:
            kb, _ = best_k(q, n)
            ks = admissible_ks(n) if all_k else [kb]
            for k in ks:
                P = params_from(q, n, k)
                lam = lambda_bound(P)
                dv = dv_bound(P)
                rows.append({
                    "ell": P.ell, "q": q, "n": n, "k": k, "a": P.a, "b": P.b,
                    "lambda": lam, "dv_bound": dv, "ratio": float(lam) / dv, "best_k": k == kb,
                })
            n += 1
    rows.sort(key=lambda r: (r["ell"], r["q"], r["k"]))
    return rows


def lambda_table_csv(rows: list[dict]) -> str:
    recs = [
        [r["q"], r["n"], r["k"], r["a"], r["b"], r["lambda"].numerator, r["lambda"].denominator,
         f"{r['dv_bound']:.6f}", f"{r['ratio']:.6f}", _flag(r["best_k"])]
        for r in rows
    ]
    return _csv(LAMBDA_COLUMNS, recs)


def lambda_table_json(rows: list[dict]) -> str:
    out = [
        {**r, "lambda": str(r["lambda"]), "dv_bound": round(r["dv_bound"], 6), "ratio": round(r["ratio"], 6)}
        for r in rows
    ]
    return json.dumps(out, sort_keys=True, indent=2) + "\n"


def lambda_table_pretty(rows: list[dict]) -> str:
    lines = [f"{'ell':>6} {'q':>5} {'n':>3} {'k':>3}  {'lambda':<22} {'sqrt(ell)-1':>12} {'ratio':>9}  best"]
    for r in rows:
        lines.append(
            f"{r['ell']:>6} {r['q']:>5} {r['n']:>3} {r['k']:>3}  {frac(r['lambda']):<22} "
            f"{r['dv_bound']:>12.6f} {r['ratio']:>9.6f}  {'*' if r['best_k'] else ''}"
        )
    return "\n".join(lines) + "\n"


def de_ratio_sweep(params: TowerParams, e_max: int = 1000) -> bool:
    """Both d/e ratios stay strictly below their caps for 1 <= e_sub <= e_max."""
    c0, ci = de_ratio_caps(params)
    return all(r0 < c0 and ri < ci for r0, ri in (de_ratio_bounds(params, e) for e in range(1, e_max + 1)))
