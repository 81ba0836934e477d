"""Exact and log-space progress distributions.

The potential-drop law: varying a parent with m zeros at radius r turns
Z ~ Hypergeometric(n, m, r) zero-positions into ones, so the drop of the
zero-potential s is max{2Z - r + s - m, 0}.  The exact big-rational
backend is authoritative for moderate n; the log-gamma backend covers n
up to 2^20 for point queries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, exp, inf, lgamma, log
from typing import Mapping, Union

EXACT = "exact"
LOG = "log"

Prob = Union[Fraction, float]


@dataclass(frozen=True)
class ProgressParams:
    """State of one variation step: dimension n, potential s, parent zero
    count m (s <= m <= n-s), flip radius r."""

    n: int
    s: int
    m: int
    r: int

    def __post_init__(self) -> None:
        if not 0 <= self.s <= self.n / 2:
            raise ValueError(f"potential must satisfy 0 <= s <= n/2, got s={self.s}")
        if not self.s <= self.m <= self.n - self.s:
            raise ValueError(f"parent zeros must satisfy s <= m <= n-s, got m={self.m}")
        if not 0 <= self.r <= self.n:
            raise ValueError(f"radius must satisfy 0 <= r <= n, got r={self.r}")


def hypergeom_support(n: int, m: int, r: int) -> range:
    return range(max(0, r - (n - m)), min(m, r) + 1)


def hypergeom_pmf(n: int, m: int, r: int, z: int) -> Fraction:
    """Exact P(Z = z) = C(m,z) C(n-m,r-z) / C(n,r); zero outside support."""
    if not (0 <= m <= n and 0 <= r <= n):
        raise ValueError(f"need 0 <= m, r <= n, got n={n}, m={m}, r={r}")
    if z not in hypergeom_support(n, m, r):
        return Fraction(0)
    return Fraction(comb(m, z) * comb(n - m, r - z), comb(n, r))


def log_comb(a: int, b: int) -> float:
    if b < 0 or b > a:
        return -inf
    return lgamma(a + 1) - lgamma(b + 1) - lgamma(a - b + 1)


def hypergeom_log_pmf(n: int, m: int, r: int, z: int) -> float:
    if not (0 <= m <= n and 0 <= r <= n):
        raise ValueError(f"need 0 <= m, r <= n, got n={n}, m={m}, r={r}")
    if z not in hypergeom_support(n, m, r):
        return -inf
    return log_comb(m, z) + log_comb(n - m, r - z) - log_comb(n, r)


@dataclass(frozen=True)
class Pmf:
    """Probability mass function on integers.

    Exact mode stores big rationals summing to exactly 1; log mode stores
    log-probabilities and normalises to 1e-12 relative.
    """

    entries: Mapping[int, Prob]
    mode: str = EXACT

    def prob(self, z: int) -> Prob:
        if self.mode == EXACT:
            return self.entries.get(z, Fraction(0))
        lp = self.entries.get(z)
        return 0.0 if lp is None else exp(lp)

    def support(self) -> list[int]:
        return sorted(self.entries)

    def total(self) -> Prob:
        if self.mode == EXACT:
            return sum(self.entries.values(), Fraction(0))
        return sum(exp(lp) for lp in self.entries.values())

    def check_normalised(self, rel_tol: float = 1e-12) -> None:
        total = self.total()
        if self.mode == EXACT:
            if total != 1:
                raise AssertionError(f"exact pmf sums to {total}, not 1")
        elif abs(float(total) - 1.0) > rel_tol:
            raise AssertionError(f"log-space pmf sums to {total}, off by > {rel_tol}")


def _delta0_value(s: int, m: int, r: int, z_hyper: int) -> int:
    return max(2 * z_hyper - r + s - m, 0)


def delta0_pmf(params: ProgressParams, mode: str = EXACT) -> Pmf:
    """Distribution of the zero-potential drop max{2Z - r + s - m, 0}."""
    n, s, m, r = params.n, params.s, params.m, params.r
    if mode == EXACT:
        entries: dict[int, Fraction] = {}
        for zh in hypergeom_support(n, m, r):
            d = _delta0_value(s, m, r, zh)
            entries[d] = entries.get(d, Fraction(0)) + hypergeom_pmf(n, m, r, zh)
        return Pmf(entries, EXACT)
    if mode == LOG:
        # positive part has at most s values; mass at 0 is the complement
        entries_log: dict[int, float] = {}
        tail = 0.0
        for z in range(1, s + 1):
            lp = delta0_point_log_prob(n, s, m, r, z)
            if lp > -inf:
                entries_log[z] = lp
                tail += exp(lp)
        if tail < 1.0:
            entries_log[0] = log(1.0 - tail) if tail > 0 else 0.0
        return Pmf(entries_log, LOG)
    raise ValueError(f"unknown pmf mode {mode!r}")


def delta0_point_prob(n: int, s: int, m: int, r: int, z: int) -> Fraction:
    """Exact P(Delta_0 = z) for z >= 1 via the unique matching Z value."""
    if z < 1:
        raise ValueError("point form only valid for z >= 1; use delta0_pmf for z = 0")
    t = z + r + m - s
    if t % 2:
        return Fraction(0)
    return hypergeom_pmf(n, m, r, t // 2)


def delta0_point_log_prob(n: int, s: int, m: int, r: int, z: int) -> float:
    if z < 1:
        raise ValueError("point form only valid for z >= 1")
    t = z + r + m - s
    if t % 2:
        return -inf
    return hypergeom_log_pmf(n, m, r, t // 2)


def delta0_tail_prob(n: int, s: int, m: int, r: int) -> Fraction:
    """Exact P(Delta_0 > 0) = P(Z > (r + m - s) / 2)."""
    num = 0
    den = comb(n, r)
    threshold = Fraction(r + m - s, 2)
    for zh in hypergeom_support(n, m, r):
        if zh > threshold:
            num += comb(m, zh) * comb(n - m, r - zh)
    return Fraction(num, den)
