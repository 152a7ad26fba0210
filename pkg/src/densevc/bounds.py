"""Closed-form hardness factors and guarantees for dense instances.

All factors are exact ``Fraction`` values with the arbitrarily small additive
slack dropped, i.e. they are the suprema the hardness statements approach.
Endpoints eps = 0 and eps = 1 are accepted and give the limiting values.
The prior-work ratio involves a real root and is returned as a certified
rational ``Bracket``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .approx import guarantee

ROOT_WIDTH = Fraction(1, 10**12)


def _eps(eps) -> Fraction:
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError(f"eps must lie in [0, 1], got {eps}")
    return eps


def _need_k(k: int, least: int) -> None:
    if k < least:
        raise ValueError(f"formula requires k >= {least}, got {k}")


def ugc_factor(k: int, eps) -> Fraction:
    """k / (2 + 2(k-1)(k-2) eps / (k + (k-2) eps)), UGC-hard for k >= 3."""
    _need_k(k, 3)
    eps = _eps(eps)
    return Fraction(k) / (2 + Fraction(2 * (k - 1) * (k - 2)) * eps / (k + (k - 2) * eps))


def conjecture_factor(k: int, eps) -> Fraction:
    _need_k(k, 3)
    eps = _eps(eps)
    return Fraction(k) / (2 + (k - 2) * eps)


def np_factor(k: int, eps) -> Fraction:
    _need_k(k, 4)
    eps = _eps(eps)
    t = 2 * (k + 1) + 1
    return (k * k * (1 - eps) + eps * 2 * (k + 1) * t) / (2 * (k + 1) * (1 - eps + eps * t))


# Decision thresholds (fractions of |V|) of the source gap problems on
# balanced instances: (cover at least, cover at most).
def ugc_thresholds(k: int) -> tuple:
    _need_k(k, 3)
    return Fraction(1, 2 * (k - 1)), Fraction(1, k * (k - 1))


def conjecture_thresholds(k: int) -> tuple:
    _need_k(k, 3)
    return Fraction(1, k), Fraction(2, k * k)


def np_thresholds(k: int) -> tuple:
    _need_k(k, 4)
    t = 2 * (k + 1) + 1
    return Fraction(k, 2 * (k + 1) * t), Fraction(1, k * t)


@dataclass(frozen=True)
class Bracket:
    """A closed rational interval known to contain an irrational value."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __contains__(self, q) -> bool:
        return self.lo <= q <= self.hi

    def certainly_above(self, q) -> bool:
        return self.lo > q


def _iroot(a: int, n: int) -> int:
    """floor(a ** (1/n)) for a >= 0."""
    if a < 2:
        return a
    x = 1 << -(-a.bit_length() // n)
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            return x
        x = y


def root_bracket(x: Fraction, n: int, width: Fraction = ROOT_WIDTH) -> Bracket:
    """Enclosure of x ** (1/n) for x in [0, 1], exact when the root is rational."""
    x = Fraction(x)
    p, q = _iroot(x.numerator, n), _iroot(x.denominator, n)
    if p ** n == x.numerator and q ** n == x.denominator:
        r = Fraction(p, q)
        return Bracket(r, r)
    lo, hi = x, Fraction(1)
    while hi - lo >= width:
        mid = (lo + hi) / 2
        if mid ** n <= x:
            lo = mid
        else:
            hi = mid
    return Bracket(lo, hi)


def cksv_guarantee(k: int, ell: int, eps) -> Bracket:
    """k / (k - (k-2) (1-eps)^(1/(k-ell))), the earlier ell-wise ratio."""
    _need_k(k, 3)
    if not 1 <= ell <= k - 1:
        raise ValueError(f"ell must lie in [1, {k - 1}], got {ell}")
    eps = _eps(eps)
    r = root_bracket(1 - eps, k - ell)
    # increasing in the root
    return Bracket(Fraction(k) / (k - (k - 2) * r.lo), Fraction(k) / (k - (k - 2) * r.hi))


@dataclass(frozen=True)
class BoundPoint:
    k: int
    eps: Fraction
    ugc: Fraction
    conjecture: Fraction
    np: Optional[Fraction]
    guarantee: Fraction
    cksv: dict = field(default_factory=dict)  # ell -> Bracket
    checks: dict = field(default_factory=dict)  # name -> bool

    @property
    def dominance_ok(self) -> bool:
        return all(self.checks.values())


def bound_point(k: int, eps, ells: Optional[Iterable[int]] = None) -> BoundPoint:
    eps = _eps(eps)
    ugc = ugc_factor(k, eps)
    conj = conjecture_factor(k, eps)
    npf = np_factor(k, eps) if k >= 4 else None
    alg = guarantee(k, eps)
    ells = range(1, k) if ells is None else [l for l in ells if 1 <= l <= k - 1]
    cksv = {l: cksv_guarantee(k, l, eps) for l in ells}

    checks = {
        "ugc_le_conjecture": ugc <= conj,
        "conjecture_eq_guarantee": conj == alg,
        "factors_ge_1": all(f >= 1 for f in (ugc, conj, alg) + ((npf,) if npf is not None else ())),
    }
    if npf is not None:
        checks["np_le_ugc"] = npf <= ugc
    for l, b in cksv.items():
        if l == k - 1:
            checks[f"cksv_{l}_matches"] = alg in b
        elif 0 < eps < 1:
            checks[f"cksv_{l}_worse"] = b.certainly_above(alg)
    return BoundPoint(k, eps, ugc, conj, npf, alg, cksv, checks)


def gap_table(k_range: Iterable[int], eps_grid: Iterable, ell_grid: Optional[Iterable[int]] = None) -> list:
    """One BoundPoint per (k, eps); cksv columns for every valid ell in ``ell_grid``."""
    eps_grid = [Fraction(e) for e in eps_grid]
    ell_grid = None if ell_grid is None else list(ell_grid)
    return [bound_point(k, e, ell_grid) for k in k_range for e in eps_grid]
