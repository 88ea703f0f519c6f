import random
from math import factorial

from cweil.autgroup import aut_order
from cweil.codes import code_from_rows, permute_code
from cweil.constructions import b12, e8, i2, table2_codes
from tests.test_constructions import LENGTH16_TABLE


def test_aut_i2():
    assert aut_order(i2()) == 2


def test_aut_e8():
    assert aut_order(e8()) == 1344


def test_aut_trivial_codes():
    full = code_from_rows(2, 5, ["10000", "01000", "00100", "00010", "00001"])
    assert aut_order(full) == factorial(5)


def test_aut_b12():
    # consistency with the certified length-16 value: B12 is indecomposable,
    # so Aut(B12+2i2) = Aut(B12) x (Aut(i2) wr S_2), giving 184320 / 8
    assert aut_order(b12()) == 184320 // 8 == 23040


def test_aut_matches_length16_table():
    for name, C in table2_codes().items():
        assert aut_order(C) == LENGTH16_TABLE[name][1], name


def test_aut_invariant_under_permutation():
    rng = random.Random(7)
    C = table2_codes()["F16"]
    for _ in range(3):
        sigma = list(range(16))
        rng.shuffle(sigma)
        assert aut_order(permute_code(C, sigma)) == 73728


def test_aut_divides_factorial():
    for name, C in table2_codes().items():
        assert factorial(16) % aut_order(C) == 0, name
