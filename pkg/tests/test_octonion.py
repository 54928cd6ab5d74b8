import random
from fractions import Fraction

import pytest

from latshell import linalg
from latshell.octonion import Octonion, coxeter_dickson_basis, oct_mul

from oracles import random_octonion


def test_imaginary_units_square_to_minus_one():
    minus_one = Octonion.unit(0).scale(-1)
    for i in range(1, 8):
        assert Octonion.unit(i) * Octonion.unit(i) == minus_one


def test_convention_e1e2_is_e3_and_e1e4_is_e5():
    e = [Octonion.unit(i) for i in range(8)]
    assert e[1] * e[2] == e[3]
    assert e[1] * e[4] == e[5]


def test_unit_is_identity():
    rng = random.Random(1)
    one = Octonion.unit(0)
    for _ in range(20):
        x = Octonion(random_octonion(rng))
        assert one * x == x == x * one


def test_composition_law_random():
    rng = random.Random(2024)
    for _ in range(100):
        x, y = Octonion(random_octonion(rng)), Octonion(random_octonion(rng))
        assert oct_mul(x, y).norm() == x.norm() * y.norm()


def test_conjugation_and_real_part():
    x = Octonion(tuple(range(1, 9)))
    assert x.conj().coords == (1, -2, -3, -4, -5, -6, -7, -8)
    assert x.re == 1
    assert (x * x.conj()).coords == (x.norm(),) + (Fraction(0),) * 7


def test_coxeter_dickson_gram():
    basis = coxeter_dickson_basis()
    g = basis.gram
    assert g[4][4] == 2  # 2 * 4 * (1/2)^2
    assert linalg.det(g) == 1
    assert [list(row[:4]) for row in g[:4]] == linalg.diag([2] * 4)
    assert linalg.is_symmetric(g) and linalg.is_positive_definite(g)
    assert all(g[i][i] % 2 == 0 for i in range(8))


def test_basis_vectors():
    b = coxeter_dickson_basis().vectors
    half = Fraction(1, 2)
    assert b[0] == Octonion.unit(0)
    assert b[4].coords == (0, half, half, half, half, 0, 0, 0)
    assert b[5] == Octonion.unit(1) * b[4]


def test_octonion_needs_eight_coords():
    with pytest.raises(ValueError):
        Octonion((1, 2, 3))
