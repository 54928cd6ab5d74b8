import pytest

from latshell import linalg
from latshell.cubic import (CubicIsometryError, build_cubic_isometry, closed_form_count,
                            orbit_decompose, orbit_size, r8_oracle, signature, signatures_of_norm)
from latshell.lattice import builtin
from latshell.shells import enumerate_shell, theta_prefix

from oracles import sum_of_squares_count

EXPECTED_ORBITS = {
    1: {(1, 0, 0, 0, 0, 0, 0, 0): 16},
    2: {(1, 1, 0, 0, 0, 0, 0, 0): 112},
    3: {(1, 1, 1, 0, 0, 0, 0, 0): 448},
    4: {(2, 0, 0, 0, 0, 0, 0, 0): 16, (1, 1, 1, 1, 0, 0, 0, 0): 1120},
    5: {(2, 1, 0, 0, 0, 0, 0, 0): 224, (1, 1, 1, 1, 1, 0, 0, 0): 1792},
}


def test_isometry_of_m():
    iso = build_cubic_isometry(builtin("M"))
    assert iso.gram_w() == linalg.diag([2] * 8)
    assert abs(linalg.det(iso.change_of_basis)) == 1
    w = linalg.transpose(iso.basis_w)
    assert linalg.matmul(iso.change_of_basis, w) == linalg.identity(8)


def test_identity_on_cubic_lattice():
    iso = build_cubic_isometry(builtin("sqrt2Z8"))
    assert [list(r) for r in iso.change_of_basis] == linalg.identity(8)


def test_isometry_refuses_e8():
    with pytest.raises(CubicIsometryError):
        build_cubic_isometry(builtin("E8"))


def test_orbit_size_values():
    assert orbit_size((1,) + (0,) * 7) == 16
    assert orbit_size((2, 1) + (0,) * 6) == 224
    assert orbit_size((1,) * 5 + (0,) * 3) == 1792
    assert orbit_size((0,) * 8) == 1


def test_signature():
    assert signature((0, -2, 1, 0)) == (2, 1, 0, 0)


@pytest.mark.parametrize("norm", range(1, 6))
def test_m_orbits(norm):
    m = builtin("M")
    dec = orbit_decompose(enumerate_shell(m, norm), build_cubic_isometry(m))
    assert dec.as_dict() == EXPECTED_ORBITS[norm]
    assert dec.total == len(enumerate_shell(m, norm))


def test_okubo_shell_orbits_through_m():
    m = builtin("M")
    shell = enumerate_shell(builtin("L_Ok"), 16).reinterpret(m)
    dec = orbit_decompose(shell, build_cubic_isometry(m))
    assert dec.as_dict() == EXPECTED_ORBITS[4]


def test_orbit_decompose_needs_same_lattice():
    with pytest.raises(ValueError):
        orbit_decompose(enumerate_shell(builtin("L_Ok"), 4), build_cubic_isometry(builtin("M")))


def test_three_way_agreement():
    theta = theta_prefix(builtin("M"), 16).coefficients
    for n in range(1, 17):
        assert theta[n] == r8_oracle(n) == closed_form_count(n)
    assert theta[11:13] == (21312, 31808)


def test_r8_oracle_independent():
    for n in range(0, 4):
        assert r8_oracle(n) == sum_of_squares_count(n, 8)
    assert r8_oracle(4, dim=4) == sum_of_squares_count(4, 4) == 24
    with pytest.raises(ValueError):
        r8_oracle(-1)


def test_signatures_are_descending():
    for n in range(1, 10):
        for s in signatures_of_norm(n):
            assert list(s) == sorted(s, reverse=True)
            assert sum(c * c for c in s) == n
