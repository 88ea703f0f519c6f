"""Standard self-dual code constructions and glue assembly.

Component codes (the repetition code i2, the d-chains, the Hamming-derived
e7/e8, the extended quadratic-residue code of length 24) plus the generic
"glue" search: extend a self-orthogonal base code by coset representatives
of base^perp / base until it becomes self-dual of a requested type.

The named length-16 representatives are assembled here from components and
certified downstream: a construction is accepted only if its genus-1 and
genus-2 enumerators and automorphism order match the classification data
bit-exactly — nothing in this module is trusted by name.
"""

from __future__ import annotations

from .codes import (
    LinearCode,
    check_type,
    code_from_rows,
    dual_code,
    weight,
    weight_distribution,
)


def i2() -> LinearCode:
    return code_from_rows(2, 2, ["11"], tag="2I")


def e8() -> LinearCode:
    """The extended Hamming [8,4] code (first-order Reed-Muller RM(1,3))."""
    return code_from_rows(
        2, 8, ["11111111", "00001111", "00110011", "01010101"], tag="2II"
    )


def e7() -> LinearCode:
    """The even-weight subcode of the [7,4] Hamming code: [7,3], weights 0 and 4."""
    c = e8()
    rows = [w & 0x7F for w in c.words if not (w >> 7) & 1]
    return LinearCode(2, 7, [[(w >> i) & 1 for i in range(7)] for w in rows])


def d_chain(n: int) -> LinearCode:
    """d_n = [n, n/2 - 1]: spans of 1111 blocks at even offsets; weights = 0 mod 4."""
    assert n % 2 == 0 and n >= 4
    rows = []
    for i in range(n // 2 - 1):
        r = [0] * n
        r[2 * i : 2 * i + 4] = [1, 1, 1, 1]
        rows.append(r)
    return LinearCode(2, n, rows)


def direct_sum(*parts: LinearCode) -> LinearCode:
    p = parts[0].p
    assert all(c.p == p for c in parts)
    n = sum(c.n for c in parts)
    rows = []
    off = 0
    for c in parts:
        for row in c.rows:
            rows.append((0,) * off + tuple(row) + (0,) * (n - off - c.n))
        off += c.n
    return LinearCode(p, n, rows)


def repeat_sum(C: LinearCode, m: int) -> LinearCode:
    return direct_sum(*([C] * m))


def golay24() -> LinearCode:
    """The extended quadratic-residue construction at length 24."""
    q = 23
    residues = {pow(t, 2, q) for t in range(1, q)}
    base = [1 if j == 0 or j in residues else 0 for j in range(q)]
    rows = [[1] * 24]  # shifts alone span only the expurgated [23,11] code
    for s in range(q):
        row = [base[(j - s) % q] for j in range(q)]
        row.append(sum(row) % 2)
        rows.append(row)
    return LinearCode(2, 24, rows, tag="2II")


def tetracode() -> LinearCode:
    return code_from_rows(3, 4, ["1012", "0111"], tag="Q")


# --- glue assembly ------------------------------------------------------


def _reduce_mod(mask: int, packed_rows) -> int:
    for row, piv in packed_rows:
        if (mask >> piv) & 1:
            mask ^= row
    return mask


def glue_extensions(base: LinearCode, tag: str, min_glue_weight: int = 0):
    """All self-dual codes of the given type between `base` and its dual.

    Depth-first over subgroups of base^perp / base, coset representatives in
    increasing mask order (each new glue vector exceeds all previous ones, and
    completed codes are deduplicated by canonical basis).  A positive
    `min_glue_weight` keeps only glue cosets whose minimal weight reaches it —
    the lever that excludes gluings merging the intended components.
    """
    assert base.p == 2
    need = base.n // 2 - base.k
    packed = []
    for row in base.rows:
        m = sum(b << i for i, b in enumerate(row))
        packed.append((m, (m & -m).bit_length() - 1))
    dual = dual_code(base)
    reps = sorted({_reduce_mod(w, packed) for w in dual.words})
    base_words = list(base.words)
    ok = []
    for r in reps:
        if r == 0:
            continue
        wts = [(r ^ b).bit_count() for b in base_words]
        coset_min = min(wts)
        if coset_min < min_glue_weight:
            continue
        if tag == "2II" and any(w % 4 for w in wts):
            continue
        if any(w % 2 for w in wts):
            continue
        ok.append(r)
    seen = set()

    def dfs(chosen, span):
        if len(chosen) == need:
            rows = [[(m >> i) & 1 for i in range(base.n)] for m in chosen]
            C = LinearCode(2, base.n, list(base.rows) + rows, tag=tag)
            if C.rows in seen:
                return
            seen.add(C.rows)
            if check_type(C):
                yield C
            return
        start = ok.index(chosen[-1]) + 1 if chosen else 0
        for idx in range(start, len(ok)):
            g = ok[idx]
            if g in span:
                continue
            if any((g & s).bit_count() % 2 for s in chosen):
                continue
            new_span = span | {x ^ g for x in span}
            yield from dfs(chosen + [g], new_span)

    yield from dfs([], {0})


def _find_by_distribution(base, tag, wd, min_glue_weight=0) -> LinearCode:
    found = [
        C
        for C in glue_extensions(base, tag, min_glue_weight)
        if weight_distribution(C) == wd
    ]
    assert found, "no gluing with the requested weight distribution"
    first = found[0]
    assert all(C.rows == first.rows or weight_distribution(C) == wd for C in found)
    return first


def d16_plus() -> LinearCode:
    """E16: the d16 chain glued by 1010101010101010 (doubly even, [16,8])."""
    rows = [list(r) for r in d_chain(16).rows]
    rows.append([1, 0] * 8)
    C = LinearCode(2, 16, rows, tag="2I")
    assert check_type(C, "2II")
    return C


def f16() -> LinearCode:
    """F16: the indecomposable singly-even [16,8] gluing of d8 + d8.

    Identified among all gluings by its weight distribution
    (1, 0, 12, 64, 102, 64, 12, 0, 1) on even weights 0..16.
    """
    wd = [0] * 17
    wd[0] = wd[16] = 1
    wd[4] = wd[12] = 12
    wd[6] = wd[10] = 64
    wd[8] = 102
    C = _find_by_distribution(
        direct_sum(d_chain(8), d_chain(8)), "2I", tuple(wd), min_glue_weight=4
    )
    return LinearCode(2, 16, C.rows, tag="2I")


def b12() -> LinearCode:
    """B12: the indecomposable [12,6] code [I | J - I]; weights (1,0,15,32,15,0,1)."""
    rows = []
    for i in range(6):
        r = [0] * 12
        r[i] = 1
        for j in range(6):
            if j != i:
                r[6 + j] = 1
        rows.append(r)
    return LinearCode(2, 12, rows, tag="2I")


def d14() -> LinearCode:
    """D14: the indecomposable [14,7] gluing of e7 + e7 (min weight 4)."""
    wd = [0] * 15
    wd[0] = wd[14] = 1
    wd[4] = wd[10] = 14
    wd[6] = wd[8] = 49
    C = _find_by_distribution(
        direct_sum(e7(), e7()), "2I", tuple(wd), min_glue_weight=4
    )
    return LinearCode(2, 14, C.rows, tag="2I")


def table2_codes() -> dict[str, LinearCode]:
    """The seven binary self-dual classes of length 16, by classification name."""
    out = {
        "E16": d16_plus(),
        "F16": f16(),
        "A8^2": retag(repeat_sum(e8(), 2), "2I"),
        "D14+i2": retag(direct_sum(d14(), i2()), "2I"),
        "B12+2i2": retag(direct_sum(b12(), i2(), i2()), "2I"),
        "A8+4i2": retag(direct_sum(e8(), *[i2()] * 4), "2I"),
        "8i2": retag(repeat_sum(i2(), 8), "2I"),
    }
    for name, c in out.items():
        assert check_type(c), name
    return out


def retag(C: LinearCode, tag: str) -> LinearCode:
    return LinearCode(C.p, C.n, C.rows, tag=tag)
