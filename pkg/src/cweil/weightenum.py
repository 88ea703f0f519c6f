"""Genus-g complete weight enumerators.

cwe_g(C) = sum over g-tuples (c_1..c_g) of codewords of prod_v x_v^(a_v),
where a_v counts the coordinates i with (c_1[i], ..., c_g[i]) = v.  The
result is homogeneous of degree N in p^g variables with nonnegative integer
coefficients summing to |C|^g.

Two paths compute it: the generic definition (any p, any g, used as the
oracle) and a bit-packed kernel for p = 2 that reads each occupancy count
off a popcount of the column-pattern mask  AND_i (c_i or ~c_i).  Genus 0 is
the degenerate case: one empty tuple, cwe_0 = x^N in the single variable.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .codes import LinearCode
from .poly import Poly, var_index

DEFAULT_BUDGET = 1 << 32


def run_conductor(p: int) -> int:
    """The cyclotomic conductor used for everything at characteristic p."""
    return 8 if p == 2 else 4 * p


@lru_cache(maxsize=256)
def cwe(C: LinearCode, g: int, budget: int = DEFAULT_BUDGET) -> Poly:
    """The genus-g complete weight enumerator of C."""
    if len(C.words) ** g > budget:
        raise ValueError(f"{len(C.words)}^{g} tuples exceed the budget {budget}")
    if C.p == 2 and g >= 1:
        return cwe_binary_fast(C, g)
    return cwe_generic(C, g)


def cwe_generic(C: LinearCode, g: int, budget: int = DEFAULT_BUDGET) -> Poly:
    """Definition-level path: loop over tuples, count vector occurrences."""
    if len(C.words) ** g > budget:
        raise ValueError(f"{len(C.words)}^{g} tuples exceed the budget {budget}")
    p, n, d = C.p, C.n, C.p**g
    counts: dict[tuple, int] = {}
    for tup in product(C.words, repeat=g):
        exps = [0] * d
        for i in range(n):
            if p == 2:
                col = tuple((w >> i) & 1 for w in tup)
            else:
                col = tuple(w[i] for w in tup)
            exps[var_index(col, p)] += 1
        key = tuple(exps)
        counts[key] = counts.get(key, 0) + 1
    return Poly(p, g, n, run_conductor(p), counts)


def cwe_binary_fast(C: LinearCode, g: int, budget: int = DEFAULT_BUDGET) -> Poly:
    """Popcount kernel for p = 2, N <= 64; output identical to cwe_generic."""
    assert C.p == 2 and C.n <= 64 and g >= 1
    if len(C.words) ** g > budget:
        raise ValueError("tuple budget exceeded")
    n = C.n
    full = (1 << n) - 1
    d = 1 << g
    counts: dict[tuple, int] = {}
    if g == 1:
        for w in C.words:
            k = w.bit_count()
            key = (n - k, k)
            counts[key] = counts.get(key, 0) + 1
    elif g == 2:
        words = C.words
        wt = {w: w.bit_count() for w in words}
        for c1 in words:
            w1 = wt[c1]
            for c2 in words:
                n11 = (c1 & c2).bit_count()
                n10 = w1 - n11
                n01 = wt[c2] - n11
                key = (n - w1 - n01, n01, n10, n11)
                counts[key] = counts.get(key, 0) + 1
    else:
        for tup in product(C.words, repeat=g):
            exps = [0] * d
            for v in range(d):
                mask = full
                for i, w in enumerate(tup):
                    # bit g-1-i of v is the required value of codeword i
                    mask &= w if (v >> (g - 1 - i)) & 1 else ~w & full
                exps[v] = mask.bit_count()
            key = tuple(exps)
            counts[key] = counts.get(key, 0) + 1
    return Poly(2, g, n, run_conductor(2), counts)
