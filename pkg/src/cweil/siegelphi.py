"""Siegel Phi-operators on enumerator polynomials, and cusp spaces.

Phi_{g,j} kills every variable whose last j index coordinates are nonzero
and truncates the rest; its twisted sibling Phi^(w) keeps the variables
whose tail equals a chosen vector w.  Both are ring homomorphisms, so on a
monomial they either kill it or strip the tails off its variables.  The
lifts go the other way, appending a fixed tail.

Cusp forms at genus g are the combinations of complete weight enumerators
annihilated by Phi_{g,1}.  cusp_basis finds them by exact rational
elimination: kernel of the Phi-image matrix, minus the combinations that
are already zero as polynomials (enumerators of distinct codes need not be
independent — two of the length-16 classes share their genus-2 enumerator).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .poly import Poly, serialize_poly, var_index
from .weightenum import cwe


def phi_op(a: Poly, j: int = 1) -> Poly:
    """Phi_{g,j}: drop the last j coordinates, killing nonzero tails."""
    return phi_op_w(a, j, (0,) * j)


def phi_op_w(a: Poly, j: int, w) -> Poly:
    """The w-twisted truncation: keep variables whose tail is exactly w."""
    if not 1 <= j <= a.g:
        raise ValueError(f"j = {j} out of range for genus {a.g}")
    w = tuple(int(x) % a.p for x in w)
    assert len(w) == j
    pj = a.p**j
    widx = var_index(w, a.p)
    d_new = a.p ** (a.g - j)
    out: dict = {}
    for exps, c in a.terms.items():
        new = [0] * d_new
        for idx, e in enumerate(exps):
            if not e:
                continue
            if idx % pj != widx:
                break
            new[idx // pj] += e
        else:
            key = tuple(new)
            prev = out.get(key)
            s = c if prev is None else prev + c
            if s:
                out[key] = s
            elif prev is not None:
                del out[key]
    return Poly(a.p, a.g - j, a.N, a.conductor, out)


def lift_op(a: Poly, j: int = 1) -> Poly:
    """phi_{g,j}: re-embed by appending a zero tail to every variable."""
    return lift_op_w(a, j, (0,) * j)


def lift_op_w(a: Poly, j: int, w) -> Poly:
    w = tuple(int(x) % a.p for x in w)
    assert len(w) == j
    pj = a.p**j
    widx = var_index(w, a.p)
    d_new = a.p ** (a.g + j)
    out = {}
    for exps, c in a.terms.items():
        new = [0] * d_new
        for idx, e in enumerate(exps):
            if e:
                new[idx * pj + widx] = e
        out[tuple(new)] = c
    return Poly(a.p, a.g + j, a.N, a.conductor, out)


# --- exact rational linear algebra --------------------------------------


def _rref(rows: list[list[Fraction]]):
    """In-place reduced row echelon form; returns the pivot column list."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    del rows[r:]
    return pivots


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel, one vector per free column."""
    work = [list(row) for row in rows]
    pivots = _rref(work)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][fc]
        basis.append(tuple(v))
    return basis


def _primitive(vec) -> tuple[Fraction, ...]:
    """Scale to coprime integers with positive leading entry."""
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def _reduce_against(vec, echelon):
    """Reduce vec modulo the span of the rows in `echelon` (pivot-normalised)."""
    v = list(vec)
    for row, pc in echelon:
        if v[pc]:
            f = v[pc]
            v = [a - f * b for a, b in zip(v, row)]
    return v


def _echelon_insert(echelon, vec) -> bool:
    """Try to add vec to the echelon set; False if it was already in the span."""
    v = _reduce_against(vec, echelon)
    pc = next((i for i, x in enumerate(v) if x), None)
    if pc is None:
        return False
    inv = 1 / v[pc]
    echelon.append(([x * inv for x in v], pc))
    return True


# --- cusp spaces --------------------------------------------------------


@dataclass(frozen=True)
class CuspBasis:
    tag: str
    N: int
    g: int
    code_names: tuple[str, ...]
    combos: tuple[tuple[Fraction, ...], ...]
    polys: tuple[Poly, ...]

    @property
    def dimension(self) -> int:
        return len(self.polys)

    def to_text(self, include_polys: bool = False) -> str:
        lines = [
            f"cusp-basis type={self.tag} N={self.N} genus={self.g} "
            f"dim={self.dimension}"
        ]
        for combo in self.combos:
            parts = [
                f"{c}*[{name}]" for name, c in zip(self.code_names, combo) if c
            ]
            lines.append("  " + " + ".join(parts).replace("+ -", "- "))
        if include_polys:
            for poly in self.polys:
                lines.append(serialize_poly(poly))
        return "\n".join(lines)


def _coeff_rows(polys: list[Poly], monomials) -> list[list[Fraction]]:
    """Matrix with one row per monomial, one column per polynomial."""
    rows = []
    for m in monomials:
        row = []
        for poly in polys:
            c = poly.terms.get(m)
            row.append(c.as_rational() if c is not None else Fraction(0))
        rows.append(row)
    return rows


def cusp_basis(codes, g: int, names=None) -> CuspBasis:
    """Basis of {f in span(cwe_g(C_i)) : Phi_{g,1}(f) = 0, f != 0}.

    Accepts a mapping name -> code or a plain sequence (codes then named
    positionally).  The returned combos are primitive integer vectors.
    """
    if hasattr(codes, "items"):
        names = list(codes.keys())
        codes = list(codes.values())
    else:
        codes = list(codes)
        if names is None:
            names = [f"C{i}" for i in range(len(codes))]
    assert len(set(names)) == len(codes)
    assert len({(C.p, C.n, C.tag) for C in codes}) == 1
    N = codes[0].n

    enums = [cwe(C, g) for C in codes]
    images = [phi_op(e, 1) for e in enums]
    img_monos = sorted(set().union(*[set(e.terms) for e in images]))
    kernel = _nullspace(_coeff_rows(images, img_monos), len(codes))

    full_monos = sorted(set().union(*[set(e.terms) for e in enums]))
    zero_combos = _nullspace(_coeff_rows(enums, full_monos), len(codes))

    echelon = []
    for z in zero_combos:
        _echelon_insert(echelon, z)
    combos = []
    for v in kernel:
        resid = _reduce_against(v, echelon)
        if any(resid):
            combos.append(_primitive(resid))
            _echelon_insert(echelon, resid)

    polys = []
    for combo in combos:
        f = Poly.zero(codes[0].p, g, N, enums[0].conductor)
        for c, e in zip(combo, enums):
            if c:
                f = f + c * e
        assert f
        assert not phi_op(f, 1)
        polys.append(f)
    return CuspBasis(
        codes[0].tag or "", N, g, tuple(names), tuple(combos), tuple(polys)
    )


def in_span(f: Poly, basis) -> bool:
    """Is f a rational combination of the given polynomials?"""
    basis = list(basis)
    if not basis:
        return not f
    monos = sorted(set(f.terms).union(*[set(b.terms) for b in basis]))

    def coords(poly):
        return [
            poly.terms[m].as_rational() if m in poly.terms else Fraction(0)
            for m in monos
        ]

    rows = [coords(b) for b in basis]
    rank = len(_rref([row[:] for row in rows]))
    return len(_rref(rows + [coords(f)])) == rank
