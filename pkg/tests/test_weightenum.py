import random
import time

import pytest
from cweil.codes import code_from_rows, permute_code
from cweil.constructions import e8, i2, table2_codes, tetracode
from cweil.cyclo import CycNum
from cweil.poly import tuple_profile
from cweil.weightenum import cwe, cwe_binary_fast, cwe_generic

# genus-2 tuple coefficients of the seven length-16 classes, columns
# (12,2,2) (10,4,2) (8,6,2) (8,4,4) (6,6,4) (8,4,2,2) (10,2,2,2)
# (6,6,2,2) (6,4,4,2) (4,4,4,4)
GENUS2_TABLE = {
    "E16": (0, 0, 0, 420, 0, 0, 336, 4704, 0, 29400),
    "F16": (0, 0, 0, 84, 192, 576, 48, 1056, 3264, 8088),
    "A8^2": (0, 0, 0, 420, 0, 0, 336, 4704, 0, 29400),
    "D14+i2": (0, 14, 49, 98, 196, 672, 84, 1176, 3038, 7056),
    "B12+2i2": (2, 30, 94, 120, 212, 750, 120, 1264, 2820, 6120),
    "A8+4i2": (12, 68, 172, 188, 280, 852, 192, 1344, 2408, 4536),
    "8i2": (56, 168, 280, 420, 560, 840, 336, 1120, 1680, 2520),
}
GENUS2_COLUMNS = (
    (12, 2, 2),
    (10, 4, 2),
    (8, 6, 2),
    (8, 4, 4),
    (6, 6, 4),
    (8, 4, 2, 2),
    (10, 2, 2, 2),
    (6, 6, 2, 2),
    (6, 4, 4, 2),
    (4, 4, 4, 4),
)
GENUS1_TABLE = {
    "E16": (1, 0, 28, 0, 198),
    "F16": (1, 0, 12, 64, 102),
    "A8^2": (1, 0, 28, 0, 198),
    "D14+i2": (1, 1, 14, 63, 98),
    "B12+2i2": (1, 2, 16, 62, 94),
    "A8+4i2": (1, 4, 20, 60, 86),
    "8i2": (1, 8, 28, 56, 70),
}
GENUS1_COLUMNS = ((16,), (14, 2), (12, 4), (10, 6), (8, 8))


def _profile_value(prof, key, conductor=8):
    got = prof.get(key, CycNum.zero(conductor))
    return int(got.as_rational())


def test_cwe1_repetition():
    c = cwe(i2(), 1)
    assert c.terms == {(2, 0): CycNum.one(8), (0, 2): CycNum.one(8)}


def test_cwe0_is_power_of_single_variable():
    c = cwe_generic(e8(), 0)
    assert c.g == 0 and c.terms == {(8,): CycNum.one(8)}


def test_genus1_table():
    for name, C in table2_codes().items():
        prof = tuple_profile(cwe(C, 1))
        got = tuple((_profile_value(prof, k)) for k in GENUS1_COLUMNS)
        # mirror tuples (2,14) etc. appear as sorted keys (14,2): same entries
        assert got == GENUS1_TABLE[name], name


def test_genus2_table():
    t0 = time.time()
    for name, C in table2_codes().items():
        prof = tuple_profile(cwe(C, 2))
        got = tuple(_profile_value(prof, k) for k in GENUS2_COLUMNS)
        assert got == GENUS2_TABLE[name], name
        # the 2-part genus-2 tuples repeat the genus-1 table
        g1 = tuple(_profile_value(prof, k) for k in GENUS1_COLUMNS)
        assert g1 == GENUS1_TABLE[name], name
    assert time.time() - t0 < 10


def test_total_mass():
    for C, g in [(i2(), 1), (i2(), 2), (e8(), 1), (e8(), 2), (tetracode(), 1)]:
        c = cwe(C, g)
        total = sum(x.as_rational() for x in c.terms.values())
        assert total == len(C.words) ** g


def test_generic_equals_fast():
    for C, g in [(e8(), 1), (e8(), 2), (i2(), 3)]:
        assert cwe_generic(C, g) == cwe_binary_fast(C, g)
    rows = []
    for j in range(8):
        r = [0] * 16
        r[2 * j] = r[2 * j + 1] = 1
        rows.append(r)
    i2_8 = code_from_rows(2, 16, rows)
    assert cwe_generic(i2_8, 1) == cwe_binary_fast(i2_8, 1)


def test_permutation_invariance():
    rng = random.Random(3)
    C = table2_codes()["F16"]
    base1, base2 = cwe(C, 1), cwe(C, 2)
    for _ in range(3):
        sigma = list(range(16))
        rng.shuffle(sigma)
        Cp = permute_code(C, sigma)
        assert cwe(Cp, 1) == base1 and cwe(Cp, 2) == base2


def test_budget_refused():
    with pytest.raises(ValueError):
        cwe(table2_codes()["E16"], 2, budget=1000)


def test_tetracode_cwe1():
    prof = tuple_profile(cwe(tetracode(), 1))
    # 9 words: 1 zero word and 8 of weight 3; ternary variables x_0, x_1, x_2
    keys = set(prof)
    assert (4,) in keys
    total = sum(x.as_rational() for x in cwe(tetracode(), 1).terms.values())
    assert total == 9
