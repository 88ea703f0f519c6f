"""Clifford-Weil groups: generators, finite closures, cosets, Eisenstein series.

The group C_g attached to a self-dual code type is generated by

    m_u : x_v -> x_{uv}                       (u in GL_g(F_p))
    d_phi : x_v -> exp(2 pi i phi(v)) x_v     (phi a quadratic form of the type)
    h_r : partial Fourier transform on the first r coordinates,
          x_v -> p^(-r/2) sum_w exp(2 pi i sum_{i<=r} w_i v_i / p) x_w
          over the w agreeing with v past the r-th coordinate.

An Operator stores its matrix as an int64 array of power-basis numerators
over a single common denominator, normalised by gcd; the product of two
operators is one einsum against the cyclotomic structure-constants tensor.
With our substitution convention, "act by A, then act by B" is the matrix
product A*B — Operator.__matmul__ is exactly that product.

Closures are plain breadth-first products over a reduced generating set;
the tests re-assert that every textbook generator lands inside.  Predicted
orders come from the tabulated group data |Z| * |ker lambda|^2 * |G_g|; we
keep the six desk-scale values and refuse anything bigger than the cap.

The parabolic subgroup here is the saturation <m_u, d_phi, zeta*id> by the
center: with scalars included, parabolic cosets are exactly what the
Eisenstein average and the index counts |ker lambda| * prod (p^i + 1) refer
to.  (The bare <m_u, d_phi> monoid contains no nontrivial scalar, so its
cosets would overcount by |Z| / |Z ∩ <m,d>|; the averaged series itself is
identical either way, the seed being scalar-invariant.)
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import gcd

import numpy as np

from .cyclo import CycNum, conj_table, mul_table, phi_degree, sqrt_prime_power
from .poly import Poly, apply_operator, index_vector, var_index
from .weightenum import run_conductor

CLOSURE_CAP = 200_000

# |Z|, and the predicted closure orders |Z| * |ker lambda|^2 * |G_g| at desk
# scale; everything larger goes through the mass-formula route instead.
CENTER_ORDER = {"2I": 2, "2II": 8, "Q": 4, "Q1": None}  # Q1: 4p, set per p
PREDICTED_ORDER = {
    ("2I", 1, 2): 16,
    ("2I", 2, 2): 2304,
    ("2II", 1, 2): 192,
    ("2II", 2, 2): 92160,
    ("Q", 1, 3): 96,
    ("Q1", 1, 3): 2592,
}
PREDICTED_PARABOLIC = {
    ("2I", 1, 2): 4,
    ("2I", 2, 2): 96,
    ("2II", 1, 2): 32,
    ("2II", 2, 2): 1536,
    ("Q", 1, 3): 24,
    ("Q1", 1, 3): 216,
}


def center_order(tag: str, p: int) -> int:
    z = CENTER_ORDER[tag]
    return 4 * p if z is None else z


class Operator:
    """A p^g x p^g matrix over Q(zeta_n), gcd-normalised int64 numerators."""

    __slots__ = ("p", "g", "n", "den", "arr")

    def __init__(self, p: int, g: int, n: int, arr: np.ndarray, den: int):
        assert den > 0
        arr = np.asarray(arr, dtype=np.int64)
        d = p**g
        assert arr.shape == (d, d, phi_degree(n)), arr.shape
        g_all = int(np.gcd.reduce(np.abs(arr), axis=None))
        g_all = gcd(g_all, den)
        if g_all > 1:
            arr = arr // g_all
            den //= g_all
        arr.setflags(write=False)
        self.p, self.g, self.n, self.den, self.arr = p, g, n, den, arr

    @staticmethod
    def identity(p: int, g: int, n: int) -> "Operator":
        d = p**g
        arr = np.zeros((d, d, phi_degree(n)), dtype=np.int64)
        arr[range(d), range(d), 0] = 1
        return Operator(p, g, n, arr, 1)

    @staticmethod
    def from_entries(p: int, g: int, n: int, grid) -> "Operator":
        d = p**g
        den = 1
        for row in grid:
            for e in row:
                den = den * e.den // gcd(den, e.den)
        arr = np.zeros((d, d, phi_degree(n)), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                e = grid[i][j]
                m = den // e.den
                arr[i, j, :] = np.array(e.nums, dtype=np.int64) * m
        return Operator(p, g, n, arr, den)

    def __matmul__(self, other: "Operator") -> "Operator":
        assert (self.p, self.g, self.n) == (other.p, other.g, other.n)
        T = mul_table(self.n)
        arr = np.einsum("iks,kjt,stu->iju", self.arr, other.arr, T)
        return Operator(self.p, self.g, self.n, arr, self.den * other.den)

    def conj_t(self) -> "Operator":
        C = conj_table(self.n)
        arr = np.einsum("jis,su->iju", self.arr, C)
        return Operator(self.p, self.g, self.n, arr, self.den)

    def fingerprint(self):
        return (self.den, self.arr.tobytes())

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return (
            (self.p, self.g, self.n, self.den) == (other.p, other.g, other.n, other.den)
            and np.array_equal(self.arr, other.arr)
        )

    def __hash__(self):
        return hash(self.fingerprint())

    def entry(self, i: int, j: int) -> CycNum:
        return CycNum(self.n, tuple(int(x) for x in self.arr[i, j]), self.den)

    def entries(self):
        d = self.p**self.g
        return [[self.entry(i, j) for j in range(d)] for i in range(d)]

    def apply(self, a: Poly) -> Poly:
        assert (a.p, a.g, a.conductor) == (self.p, self.g, self.n)
        return apply_operator(a, self.entries())

    def is_unitary(self) -> bool:
        return self @ self.conj_t() == Operator.identity(self.p, self.g, self.n)

    def scale(self, c: CycNum) -> "Operator":
        arr = np.einsum(
            "ijs,su->iju",
            self.arr,
            _power_matrix(self.n, c),
        )
        return Operator(self.p, self.g, self.n, arr, self.den * c.den)

    def __repr__(self):
        return f"Operator(p={self.p}, g={self.g}, den={self.den})"


def _power_matrix(n: int, c: CycNum) -> np.ndarray:
    """Matrix of multiplication by c's numerator part on the power basis."""
    T = mul_table(n)
    vec = np.array(c.nums, dtype=np.int64)
    return np.einsum("s,stu->tu", vec, T)


# --- quadratic forms ----------------------------------------------------


class QuadraticForm:
    """diagonal labels per type plus a strictly upper-triangular F_p part.

    Evaluation is a rational mod 1: sum_i phi_i(v_i) + sum_{i<j} v_i m_ij v_j / p
    with the x^2/2, x^2/4, x^2/p, (ax^2+bx)/p diagonal conventions of the
    four types (integer lifts 0..p-1 of the entries).
    """

    __slots__ = ("tag", "g", "p", "diag", "offdiag")

    def __init__(self, tag: str, g: int, p: int, diag, offdiag=None):
        self.tag, self.g, self.p = tag, g, p
        self.diag = tuple(diag)
        assert len(self.diag) == g
        off = {} if offdiag is None else dict(offdiag)
        for (i, j), m in off.items():
            assert 0 <= i < j < g and 0 < m < p
        self.offdiag = off

    def __call__(self, v) -> Fraction:
        p = self.p
        total = Fraction(0)
        for i, x in enumerate(v):
            x = x % p
            a = self.diag[i]
            if self.tag == "2I":
                total += Fraction(a * x * x, 2)
            elif self.tag == "2II":
                total += Fraction(a * x * x, 4)
            elif self.tag == "Q":
                total += Fraction((a * x * x) % p, p)
            else:
                ai, bi = a
                total += Fraction((ai * x * x + bi * x) % p, p)
        for (i, j), m in self.offdiag.items():
            total += Fraction((v[i] * m * v[j]) % p, p)
        return total % 1


def quadform_eval(phi: QuadraticForm, v) -> Fraction:
    return phi(v)


def all_quadforms(tag: str, g: int, p: int):
    if tag == "2I":
        diags = iproduct(range(2), repeat=g)
    elif tag == "2II":
        diags = iproduct(range(4), repeat=g)
    elif tag == "Q":
        diags = iproduct(range(p), repeat=g)
    else:
        diags = iproduct(list(iproduct(range(p), range(p))), repeat=g)
    pairs = [(i, j) for i in range(g) for j in range(i + 1, g)]
    for diag in diags:
        for ms in iproduct(range(p), repeat=len(pairs)):
            off = {pos: m for pos, m in zip(pairs, ms) if m}
            yield QuadraticForm(tag, g, p, diag, off)


def basis_quadforms(tag: str, g: int, p: int):
    """Forms with a single active slot; they generate all d_phi under products."""
    out = []
    zero_d = (0, 0) if tag == "Q1" else 0
    for i in range(g):
        if tag == "Q1":
            for lab in [(1, 0), (0, 1)]:
                diag = [zero_d] * g
                diag[i] = lab
                out.append(QuadraticForm(tag, g, p, diag))
        else:
            diag = [zero_d] * g
            diag[i] = 1
            out.append(QuadraticForm(tag, g, p, diag))
    for i in range(g):
        for j in range(i + 1, g):
            out.append(QuadraticForm(tag, g, p, [zero_d] * g, {(i, j): 1}))
    return out


# --- generators ---------------------------------------------------------


def _phase(n: int, frac: Fraction) -> CycNum:
    k = frac * n
    assert k.denominator == 1, (n, frac)
    return CycNum.zeta_pow(n, int(k) % n)


def gen_m(u, p: int, g: int, n: int | None = None) -> Operator:
    """The variable permutation x_v -> x_{uv}."""
    n = n or run_conductor(p)
    u = [list(map(int, row)) for row in u]
    d = p**g
    det = _det_mod(u, p)
    if det % p == 0:
        raise ValueError("u is singular")
    arr = np.zeros((d, d, phi_degree(n)), dtype=np.int64)
    for idx in range(d):
        v = index_vector(idx, p, g)
        uv = tuple(sum(u[i][j] * v[j] for j in range(g)) % p for i in range(g))
        arr[idx, var_index(uv, p), 0] = 1
    return Operator(p, g, n, arr, 1)


def _det_mod(u, p: int) -> int:
    m = [row[:] for row in u]
    g = len(m)
    det = 1
    for c in range(g):
        piv = next((i for i in range(c, g) if m[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], p - 2, p)
        for i in range(c + 1, g):
            f = m[i][c] * inv % p
            for j in range(c, g):
                m[i][j] = (m[i][j] - f * m[c][j]) % p
    return det % p


def gen_d(phi: QuadraticForm, n: int | None = None) -> Operator:
    """The diagonal phase operator x_v -> exp(2 pi i phi(v)) x_v."""
    p, g = phi.p, phi.g
    n = n or run_conductor(p)
    d = p**g
    arr = np.zeros((d, d, phi_degree(n)), dtype=np.int64)
    for idx in range(d):
        v = index_vector(idx, p, g)
        arr[idx, idx, :] = _phase(n, phi(v)).nums
    return Operator(p, g, n, arr, 1)


def gen_h(r: int, g: int, p: int, n: int | None = None) -> Operator:
    """Partial Fourier transform on the first r of g coordinates."""
    assert 1 <= r <= g
    n = n or run_conductor(p)
    d = p**g
    norm = sqrt_prime_power(p, r, n) / p**r  # p^(-r/2), exactly
    grid = [[CycNum.zero(n)] * d for _ in range(d)]
    for idx in range(d):
        v = index_vector(idx, p, g)
        for head in iproduct(range(p), repeat=r):
            w = tuple(head) + v[r:]
            phase = _phase(n, Fraction(sum(w[i] * v[i] for i in range(r)), p))
            grid[idx][var_index(w, p)] = norm * phase
    return Operator.from_entries(p, g, n, grid)


def gl_matrices(p: int, g: int):
    """All of GL_g(F_p) (g <= 2 scale)."""
    out = []
    for flat in iproduct(range(p), repeat=g * g):
        u = [list(flat[i * g : (i + 1) * g]) for i in range(g)]
        if _det_mod(u, p) % p:
            out.append(u)
    return out


def gl_generators(p: int, g: int):
    if g == 1:
        if p == 2:
            return [[[1]]]
        return [[[_primitive_root(p)]]]
    assert g == 2
    gens = [[[0, 1], [1, 0]], [[1, 1], [0, 1]]]
    if p > 2:
        gens.append([[_primitive_root(p), 0], [0, 1]])
    return gens


def _primitive_root(p: int) -> int:
    for a in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * a % p
            seen.add(x)
        if len(seen) == p - 1:
            return a
    raise ValueError(p)


def center_generator(tag: str, p: int, g: int, n: int | None = None) -> Operator:
    """zeta_|Z| times the identity."""
    n = n or run_conductor(p)
    z = center_order(tag, p)
    assert n % z == 0
    return Operator.identity(p, g, n).scale(CycNum.zeta_pow(n, n // z))


def generators(tag: str, g: int, p: int, reduced: bool = True, parabolic: bool = False):
    """Reduced (or full) generator list; parabolic drops the h's, adds the center."""
    n = run_conductor(p)
    ms = gl_generators(p, g) if reduced else gl_matrices(p, g)
    forms = basis_quadforms(tag, g, p) if reduced else list(all_quadforms(tag, g, p))
    gens = [gen_m(u, p, g, n) for u in ms]
    gens += [gen_d(phi, n) for phi in forms]
    if parabolic:
        gens.append(center_generator(tag, p, g, n))
    else:
        gens += [gen_h(r, g, p, n) for r in range(1, g + 1)]
    return gens


class GroupClosure:
    """A finite matrix group as {fingerprint: index} plus the element list."""

    def __init__(self, gens: list, elements: list):
        self.gens = gens
        self.elements = elements
        self.index = {op.fingerprint(): i for i, op in enumerate(elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, op: Operator) -> bool:
        return op.fingerprint() in self.index


def _batch_mul(arrs: np.ndarray, dens: np.ndarray, x: Operator, T: np.ndarray):
    """Normalised products (arrs[k]/dens[k]) @ x for a whole stack at once."""
    raw = np.einsum("fiks,kjt,stu->fiju", arrs, x.arr, T, optimize=True)
    out = dens * x.den
    common = np.gcd.reduce(np.abs(raw).reshape(out.size, -1), axis=1)
    common = np.gcd(common, out)
    raw //= common[:, None, None, None]
    out //= common
    return raw, out


def _op_stack(ops: list):
    return (
        np.stack([o.arr for o in ops]),
        np.array([o.den for o in ops], dtype=np.int64),
    )


def _bfs_closure(gens, cap: int) -> list:
    """Breadth-first products, one batched einsum per (level, generator)."""
    p, g, n = gens[0].p, gens[0].g, gens[0].n
    T = mul_table(n)
    ident = Operator.identity(p, g, n)
    seen = {ident.fingerprint()}
    elems = [ident]
    f_arr = ident.arr[None]
    f_den = np.array([1], dtype=np.int64)
    while f_den.size:
        new_ops = []
        for gopr in gens:
            raw, dens = _batch_mul(f_arr, f_den, gopr, T)
            for i in range(dens.size):
                fp = (int(dens[i]), raw[i].tobytes())
                if fp not in seen:
                    if len(elems) >= cap:
                        raise ValueError(f"closure exceeded the cap {cap}")
                    seen.add(fp)
                    op = Operator(p, g, n, raw[i].copy(), int(dens[i]))
                    elems.append(op)
                    new_ops.append(op)
        if not new_ops:
            break
        f_arr = np.stack([o.arr for o in new_ops])
        f_den = np.array([o.den for o in new_ops], dtype=np.int64)
    return elems


@lru_cache(maxsize=None)
def group_closure(tag: str, g: int, p: int = 2, cap: int = CLOSURE_CAP) -> GroupClosure:
    """Full Clifford-Weil group at desk scale; refuses unpredicted sizes."""
    predicted = PREDICTED_ORDER.get((tag, g, p))
    if predicted is None:
        raise ValueError(f"no feasible closure for {(tag, g, p)}")
    if predicted > cap:
        raise ValueError(f"predicted order {predicted} exceeds the cap {cap}")
    gens = generators(tag, g, p, reduced=True)
    elems = _bfs_closure(gens, cap)
    assert len(elems) == predicted, (len(elems), predicted)
    return GroupClosure(gens, elems)


@lru_cache(maxsize=None)
def parabolic_closure(tag: str, g: int, p: int = 2, cap: int = CLOSURE_CAP) -> GroupClosure:
    """<m_u, d_phi, center>: the coset denominator of the Eisenstein average."""
    gens = generators(tag, g, p, reduced=True, parabolic=True)
    elems = _bfs_closure(gens, cap)
    predicted = PREDICTED_PARABOLIC.get((tag, g, p))
    if predicted is not None:
        assert len(elems) == predicted, (len(elems), predicted)
    return GroupClosure(gens, elems)


def coset_reps(G: GroupClosure, P: GroupClosure) -> list:
    """One representative per right coset P*sigma in P\\G."""
    return coset_labels(G, P)[0]


def coset_labels(G: GroupClosure, P: GroupClosure):
    """reps plus the map element-index -> coset number, for orbit chasing."""
    for x in P.elements:
        if x not in G:
            raise ValueError("P is not a subgroup of G")
    assert G.order % P.order == 0
    T = mul_table(G.elements[0].n)
    P_arr, P_den = _op_stack(P.elements)
    reps = []
    label = [-1] * G.order
    for i, x in enumerate(G.elements):
        if label[i] >= 0:
            continue
        cid = len(reps)
        reps.append(x)
        raw, dens = _batch_mul(P_arr, P_den, x, T)
        for k in range(dens.size):
            label[G.index[(int(dens[k]), raw[k].tobytes())]] = cid
    assert len(reps) * P.order == G.order
    return reps, label


# --- Eisenstein series by coset averaging -------------------------------


def seed_poly(tag: str, g: int, N: int, p: int) -> Poly:
    n = run_conductor(p)
    d = p**g
    if tag in ("2I", "2II"):
        terms = {
            tuple(N if i == v else 0 for i in range(d)): 1 for v in range(d)
        }
        return Poly(p, g, N, n, terms)
    return Poly.monomial(p, g, n, tuple(N if i == 0 else 0 for i in range(d)))


def eisenstein_coset(
    tag: str,
    g: int,
    N: int,
    p: int = 2,
    closure: GroupClosure | None = None,
    parabolic: GroupClosure | None = None,
) -> Poly:
    """E_g as the average of the seed over P_g \\ C_g."""
    if N % center_order(tag, p):
        raise ValueError(f"N = {N} not divisible by |Z| = {center_order(tag, p)}")
    G = closure or group_closure(tag, g, p)
    P = parabolic or parabolic_closure(tag, g, p)
    reps = coset_reps(G, P)
    seed = seed_poly(tag, g, N, p)
    total = Poly.zero(p, g, N, seed.conductor)
    for rep in reps:
        total = total + rep.apply(seed)
    return total / len(reps)


# --- the doubling representatives tau_r ---------------------------------


def tau_operator(tag: str, g: int, r: int, p: int = 2) -> Operator:
    """pi(tau_r) on the genus-2g variables; r = 0 is the identity.

    The product d_phi * h' * d'_r: the off-diagonal pairing phase
    phi(v) = sum_{i<=r} v_i v_{g+i} / p on both ends, and in the middle the
    Fourier-type operator supported on the coordinates {1..r, g+1..g+r},
    with kernel exp(2 pi i sum_{i<=r} (w_i v_{g+i} + w_{g+i} v_i)/p) and
    normalisation p^(-r).
    """
    assert 0 <= r <= g
    n = run_conductor(p)
    gg = 2 * g
    if r == 0:
        return Operator.identity(p, gg, n)
    pairing = QuadraticForm(
        tag, gg, p, [(0, 0) if tag == "Q1" else 0] * gg,
        {(i, g + i): 1 for i in range(r)},
    )
    d_pair = gen_d(pairing, n)
    dd = p**gg
    grid = [[CycNum.zero(n)] * dd for _ in range(dd)]
    norm = CycNum.from_rat(n, Fraction(1, p**r))
    support = list(range(r)) + list(range(g, g + r))
    for idx in range(dd):
        v = index_vector(idx, p, gg)
        for vals in iproduct(range(p), repeat=2 * r):
            w = list(v)
            for pos, x in zip(support, vals):
                w[pos] = x
            phase = Fraction(
                sum(w[i] * v[g + i] + w[g + i] * v[i] for i in range(r)), p
            )
            grid[idx][var_index(w, p)] = norm * _phase(n, phase)
    h_mid = Operator.from_entries(p, gg, n, grid)
    return d_pair @ h_mid @ d_pair


def delta_embed(g1: Operator, g2: Operator) -> Operator:
    """Delta(gamma_1, gamma_2) acting on genus-2g variables X_(v1,v2)."""
    assert (g1.p, g1.g, g1.n) == (g2.p, g2.g, g2.n)
    p, g, n = g1.p, g1.g, g1.n
    d = p**g
    T = mul_table(n)
    arr = np.einsum("ips,jqt,stu->ijpqu", g1.arr, g2.arr, T)
    arr = arr.reshape(d * d, d * d, phi_degree(n))
    return Operator(p, 2 * g, n, arr, g1.den * g2.den)
