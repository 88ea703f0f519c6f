"""Automorphism groups of binary codes: Aut(C) = {sigma in S_N : sigma(C) = C}.

Exact order computation by orbit-stabilizer counting over the chain of
pointwise column stabilizers.  Each orbit question "is there sigma in Aut(C)
fixing 0..l-1 with sigma(l) = t" is answered by a backtracking search over
column bijections, pruned by simultaneous partition refinement of columns
and codewords on both sides of the would-be bijection (the standard
individualization-refinement scheme on the column/codeword incidence).

Colours are canonicalised by sorted signatures each round, so the domain
and codomain partitions stay comparable; any histogram mismatch prunes the
branch.  At a discrete partition the candidate permutation is read off and
verified against the code itself.

Intended scale: p = 2, N <= 24 (the length-16 table is instant; length-24
glue codes take seconds to a minute).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .codes import LinearCode


class _TooHard(Exception):
    pass


class _AutSearch:
    def __init__(self, C: LinearCode, node_limit: int):
        assert C.p == 2
        self.n = C.n
        self.limit = node_limit
        self.nodes = 0
        words = [w for w in C.words if w and w != (1 << C.n) - 1]
        self.members = frozenset(C.words)
        self.M = np.zeros((len(words), C.n), dtype=bool)
        for i, w in enumerate(words):
            for j in range(C.n):
                if (w >> j) & 1:
                    self.M[i, j] = True
        self.winit = np.array([w.bit_count() for w in words], dtype=np.int64)
        self.gen_masks = [sum(b << i for i, b in enumerate(r)) for r in C.rows]

    # --- refinement ----------------------------------------------------

    def _recolour(self, sigs_d, sigs_c):
        """Assign canonical ids to both sides from the merged signature order."""
        table = {s: i for i, s in enumerate(sorted(set(sigs_d) | set(sigs_c)))}
        d = np.array([table[s] for s in sigs_d], dtype=np.int64)
        c = np.array([table[s] for s in sigs_c], dtype=np.int64)
        return d, c, len(table)

    def refine(self, state):
        """Run column/word recolouring to a fixed point; None if sides differ."""
        ccol_d, ccol_c, wcol_d, wcol_c = state
        M = self.M
        while True:
            ncw = int(max(wcol_d.max(initial=0), wcol_c.max(initial=0))) + 1
            sig_d = [
                (int(ccol_d[j]), np.bincount(wcol_d[M[:, j]], minlength=ncw).tobytes())
                for j in range(self.n)
            ]
            sig_c = [
                (int(ccol_c[j]), np.bincount(wcol_c[M[:, j]], minlength=ncw).tobytes())
                for j in range(self.n)
            ]
            new_d, new_c, nc = self._recolour(sig_d, sig_c)
            if np.bincount(new_d, minlength=nc).tolist() != np.bincount(
                new_c, minlength=nc
            ).tolist():
                return None
            col_stable = np.array_equal(new_d, ccol_d) and np.array_equal(new_c, ccol_c)
            ccol_d, ccol_c = new_d, new_c
            wsig_d = [
                (int(wcol_d[i]), np.bincount(ccol_d[M[i]], minlength=nc).tobytes())
                for i in range(len(M))
            ]
            wsig_c = [
                (int(wcol_c[i]), np.bincount(ccol_c[M[i]], minlength=nc).tobytes())
                for i in range(len(M))
            ]
            nw_d, nw_c, ncw2 = self._recolour(wsig_d, wsig_c)
            if np.bincount(nw_d, minlength=ncw2).tolist() != np.bincount(
                nw_c, minlength=ncw2
            ).tolist():
                return None
            word_stable = np.array_equal(nw_d, wcol_d) and np.array_equal(nw_c, wcol_c)
            wcol_d, wcol_c = nw_d, nw_c
            if col_stable and word_stable:
                return ccol_d, ccol_c, wcol_d, wcol_c

    # --- backtracking ---------------------------------------------------

    def _perm_from_discrete(self, ccol_d, ccol_c):
        pos_c = {int(c): j for j, c in enumerate(ccol_c)}
        return [pos_c[int(c)] for c in ccol_d]

    def _verify(self, perm) -> bool:
        for mask in self.gen_masks:
            img = 0
            m = mask
            while m:
                i = (m & -m).bit_length() - 1
                img |= 1 << perm[i]
                m &= m - 1
            if img not in self.members:
                return False
        return True

    def search(self, state):
        """Find any column bijection consistent with `state`; returns perm or None."""
        self.nodes += 1
        if self.nodes > self.limit:
            raise _TooHard
        state = self.refine(state)
        if state is None:
            return None
        ccol_d, ccol_c, wcol_d, wcol_c = state
        nc = int(ccol_d.max(initial=0)) + 1
        counts = np.bincount(ccol_d, minlength=nc)
        big = [c for c in range(nc) if counts[c] > 1]
        if not big:
            perm = self._perm_from_discrete(ccol_d, ccol_c)
            return perm if self._verify(perm) else None
        cell = min(big, key=lambda c: (counts[c], c))
        j0 = int(np.nonzero(ccol_d == cell)[0][0])
        fresh = int(max(ccol_d.max(), ccol_c.max())) + 1
        for t in np.nonzero(ccol_c == cell)[0]:
            nd, ncc = ccol_d.copy(), ccol_c.copy()
            nd[j0] = fresh
            ncc[int(t)] = fresh
            got = self.search((nd, ncc, wcol_d.copy(), wcol_c.copy()))
            if got is not None:
                return got
        return None

    def find(self, pairs):
        """An automorphism with sigma(b) = t for each (b, t) in pairs, or None."""
        ccol_d = np.zeros(self.n, dtype=np.int64)
        ccol_c = np.zeros(self.n, dtype=np.int64)
        for i, (b, t) in enumerate(pairs):
            ccol_d[b] = i + 1
            ccol_c[t] = i + 1
        return self.search((ccol_d, ccol_c, self.winit.copy(), self.winit.copy()))

    def candidate_cell(self, pairs, point):
        """Columns that refinement allows as images of `point` given `pairs`."""
        ccol_d = np.zeros(self.n, dtype=np.int64)
        ccol_c = np.zeros(self.n, dtype=np.int64)
        for i, (b, t) in enumerate(pairs):
            ccol_d[b] = i + 1
            ccol_c[t] = i + 1
        state = self.refine((ccol_d, ccol_c, self.winit.copy(), self.winit.copy()))
        if state is None:
            return []
        ccol_d, ccol_c = state[0], state[1]
        return [int(j) for j in np.nonzero(ccol_c == ccol_d[point])[0]]


def _close_orbit(orbit: set, gens: list, seed: int) -> set:
    frontier = [seed]
    orbit = set(orbit)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


@lru_cache(maxsize=64)
def aut_order(C: LinearCode, limit: int = 2_000_000):
    """|Aut(C)| as an exact integer, or the string "unknown" past the budget.

    Orbit-stabilizer product over the chain of stabilizers of columns
    0, 1, 2, ...; orbits are grown using every automorphism found, so each
    new orbit point costs at most one backtracking search.
    """
    if C.p != 2:
        return "unknown"
    if C.k == 0 or C.k == C.n:
        import math

        return math.factorial(C.n)
    S = _AutSearch(C, limit)
    order = 1
    try:
        for level in range(C.n):
            prefix = [(i, i) for i in range(level)]
            orbit = {level}
            gens_here: list = []
            allowed = S.candidate_cell(prefix, level)
            for t in allowed:
                if t in orbit or t < level:
                    continue
                perm = S.find(prefix + [(level, t)])
                if perm is not None:
                    gens_here.append(perm)
                    orbit = _close_orbit(orbit, gens_here, level)
            order *= len(orbit)
    except _TooHard:
        return "unknown"
    return order
