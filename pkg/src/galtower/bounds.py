"""Exact-rational formulas: limit lower bound, genus coefficient, ramification data."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadLevel, NoAdmissibleK
from .tower import TowerParams, params_from


def lambda_bound(params: TowerParams) -> Fraction:
    """2 / (1/(q^k - 1) + 1/(q^(n-k) - 1))."""
    q, n, k = params.q, params.n, params.k
    return 2 / (Fraction(1, q ** k - 1) + Fraction(1, q ** (n - k) - 1))


def genus_bound_coeff(params: TowerParams) -> Fraction:
    """(1/2) * (1/(q^k - 1) + 1/(q^(n-k) - 1)), the reciprocal of ``lambda_bound``."""
    q, n, k = params.q, params.n, params.k
    return Fraction(1, 2) * (Fraction(1, q ** k - 1) + Fraction(1, q ** (n - k) - 1))


def dv_bound(params: TowerParams) -> float:
    """sqrt(ell) - 1."""
    return math.sqrt(params.ell) - 1


def is_dv_optimal(params: TowerParams) -> bool:
    """lambda_bound equals sqrt(ell) - 1 exactly, tested in integers."""
    lam = lambda_bound(params) + 1
    return lam * lam == params.ell


@dataclass(frozen=True)
class LambdaReport:
    params: TowerParams
    lambda_bound: Fraction
    dv_bound: float
    ratio: float
    best_k_flag: bool
    dv_optimal: bool


def lambda_report(params: TowerParams, best_k_flag: bool = False) -> LambdaReport:
    lam = lambda_bound(params)
    dv = dv_bound(params)
    return LambdaReport(params, lam, dv, float(lam) / dv, best_k_flag, is_dv_optimal(params))


def admissible_ks(n: int) -> list[int]:
    return [k for k in range(1, n) if math.gcd(k, n - k) == 1]


def best_k(q: int, n: int) -> tuple[int, LambdaReport]:
    """The admissible k with the largest bound; ties go to the smaller k."""
    best = None
    for k in admissible_ks(n):
        lam = lambda_bound(params_from(q, n, k))
        if best is None or lam > best[1]:
            best = (k, lam)
    if best is None:
        raise NoAdmissibleK(f"no admissible k for n={n}")
    k = best[0]
    return k, lambda_report(params_from(q, n, k), best_k_flag=True)


@dataclass(frozen=True)
class RamificationProfile:
    """Lower bounds for ramification indices at P_0 and P_inf on level i.

    The true index is tame * wild * p^eps with an unknown eps >= 0, so the
    epsilon fields are markers rather than numbers.
    """

    level: int
    tame0: int
    wild0_exponent: int
    tame_inf: int
    wild_inf_exponent: int
    q: int
    epsilon0: str = "unknown>=0"
    epsilon_inf: str = "unknown>=0"

    @property
    def wild0(self) -> Fraction:
        return Fraction(self.q) ** self.wild0_exponent

    @property
    def wild_inf(self) -> Fraction:
        return Fraction(self.q) ** self.wild_inf_exponent

    @property
    def valid(self) -> bool:
        """False when a wild exponent is negative (small level, large k)."""
        return self.wild0_exponent >= 0 and self.wild_inf_exponent >= 0

    def describe(self, p: int) -> dict:
        return {
            "P0": f"{self.tame0} * {self.wild0} * {p}^eps1",
            "Pinf": f"{self.tame_inf} * {self.wild_inf} * {p}^eps2",
        }


def ram_profile(params: TowerParams, i: int) -> RamificationProfile:
    if i <= 1:
        raise BadLevel("ramification profile needs level i > 1")
    q, n, k = params.q, params.n, params.k
    return RamificationProfile(
        level=i,
        tame0=q ** k - 1,
        wild0_exponent=(i - 1) * (n - k) - k,
        tame_inf=q ** (n - k) - 1,
        wild_inf_exponent=(i - 1) * (n - k),
        q=q,
    )


def de_ratio_caps(params: TowerParams) -> tuple[Fraction, Fraction]:
    """1 + 1/(q^k - 1) at P_0 and 1 + 1/(q^(n-k) - 1) at P_inf."""
    q, n, k = params.q, params.n, params.k
    return 1 + Fraction(1, q ** k - 1), 1 + Fraction(1, q ** (n - k) - 1)


def de_ratio_bounds(params: TowerParams, e_sub: int) -> tuple[Fraction, Fraction]:
    """d/e above P_0 and P_inf when the auxiliary index is ``e_sub``.

    d = Q * e_sub - 2 and e = (Q - 1) * e_sub with Q = q^k (resp. q^(n-k)).
    """
    if e_sub < 1:
        raise ValueError("e_sub must be positive")
    q, n, k = params.q, params.n, params.k

    def ratio(Q: int) -> Fraction:
        return Fraction(Q * e_sub - 2, (Q - 1) * e_sub)

    return ratio(q ** k), ratio(q ** (n - k))


def two_bounded_different(e: int) -> int:
    """Different exponent 2(e - 1) of a place with ramification index e."""
    if e < 1:
        raise ValueError("e must be positive")
    return 2 * (e - 1)
