"""Local-optima predicates and exhaustive target-set scans."""

from __future__ import annotations

from math import comb

from ..bitstring import BitString
from .base import LOCAL_OPTIMA, Objective, TargetSet

EXHAUSTIVE_CAP = 20


def is_local_optimum(obj: Objective, x: BitString) -> bool:
    """No Hamming-1 neighbour has strictly better fitness (direction-aware)."""
    fx = obj.evaluate(x)
    for i in range(obj.n):
        if obj.better(obj.evaluate(x.flip([i])), fx):
            return False
    return True


def local_optima(obj: Objective) -> TargetSet:
    """Exhaustive scan over all 2^n points; capped at n <= 20."""
    n = obj.n
    if n > EXHAUSTIVE_CAP:
        raise ValueError(f"exhaustive local-optima scan capped at n <= {EXHAUSTIVE_CAP}, got {n}")
    fits = [obj.evaluate(BitString(n, v)) for v in range(1 << n)]
    members = []
    for v in range(1 << n):
        fx = fits[v]
        if any(obj.better(fits[v ^ (1 << i)], fx) for i in range(n)):
            continue
        members.append(BitString(n, v))
    return TargetSet.from_points(members, LOCAL_OPTIMA, f"exhaustive scan of {obj.name}")


# Closed-form characterisations for some named instances; exhaustive scans in
# the test suite are the authority that these stay correct.

def jump_local_optima(n: int, k: int) -> TargetSet:
    """Ring of points with exactly k zeros, plus the optimum 1^n (k >= 2)."""
    if not 2 <= k <= n:
        raise ValueError("closed form needs 2 <= k <= n")

    def contains(x: BitString) -> bool:
        ones = x.count_ones()
        return ones == x.n or ones == x.n - k

    return TargetSet(
        kind=LOCAL_OPTIMA,
        contains=contains,
        size_bound=comb(n, k) + 1,
        description=f"|x|_1 = n-{k} ring plus 1^n",
    )


def maxsat_hard_local_optima(n: int) -> TargetSet:
    def contains(x: BitString) -> bool:
        ones = x.count_ones()
        return ones == x.n or ones == 1

    return TargetSet(
        kind=LOCAL_OPTIMA,
        contains=contains,
        size_bound=n + 1,
        description="single-1-bit points plus 1^n",
    )


def two_cliques_local_optima(n: int) -> TargetSet:
    """Single-vertex cuts on either side, plus the two clique-aligned optima."""
    half = n // 2
    aligned = (((1 << half) - 1) << half, (1 << half) - 1)

    def contains(x: BitString) -> bool:
        ones = x.count_ones()
        return ones in (1, x.n - 1) or x.value in aligned

    return TargetSet(
        kind=LOCAL_OPTIMA,
        contains=contains,
        size_bound=2 * n + 2,
        description="lone-vertex assignments plus the aligned bipartitions",
    )


def twomax_local_optima(n: int) -> TargetSet:
    return TargetSet.from_points(
        [BitString.zeros(n), BitString.ones(n)], LOCAL_OPTIMA, "0^n and 1^n"
    )
