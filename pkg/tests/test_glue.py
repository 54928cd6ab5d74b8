from fractions import Fraction

import pytest

from latshell import linalg
from latshell.cubic import build_cubic_isometry
from latshell.glue import (GlueError, build_overlattice, discriminant, glue_code,
                           maximal_isotropic_codes, mod2, quotient, verify_isotropic_glue)
from latshell.lattice import GramLattice, builtin, builtin_embedding, direct_sum
from latshell.roots import certify_root_system
from latshell.shells import enumerate_shell


def test_mod2():
    assert mod2(Fraction(5, 2)) == Fraction(1, 2)
    assert mod2(Fraction(-1, 2)) == Fraction(3, 2)
    assert mod2(Fraction(4)) == 0


def test_discriminant_of_a1_and_m():
    d = discriminant(builtin("A1"))
    assert d.invariant_factors == (2,) and d.qvalues == (Fraction(1, 2),)
    dm = discriminant(builtin("M"))
    assert dm.order == 2 ** 8 == builtin("M").det
    assert dm.is_elementary_2
    assert set(dm.qvalues) == {Fraction(1, 2)}
    assert discriminant(builtin("E8")).order == 1


def test_discriminant_needs_even_lattice():
    with pytest.raises(GlueError):
        discriminant(GramLattice("Z", [[1]]))


def test_quotient_factors():
    assert quotient(builtin_embedding("M", "E8")) == (1, 1, 1, 1, 2, 2, 2, 2)
    assert quotient(builtin_embedding("E8", "E8")) == (1,) * 8


def test_m_glue_gives_e8():
    res = verify_isotropic_glue(builtin_embedding("M", "E8"))
    assert res.isotropic and res.maximal
    assert res.glue_order == 16
    over = res.overlattice
    assert over.is_even and over.det == 1
    s1 = enumerate_shell(over, 1)
    assert len(s1) == 240
    assert certify_root_system(s1).type_label == "E8"


def test_identity_embedding_glue_is_trivial():
    res = verify_isotropic_glue(builtin_embedding("E8", "E8"))
    assert res.glue_order == 1 and res.maximal
    assert res.overlattice.gram == builtin("E8").gram


def test_non_isotropic_glue_rejected():
    a1a1 = direct_sum(builtin("A1"), builtin("A1"))
    # (1/2, 1/2) has q = 1 mod 2: the glued lattice is integral but odd
    with pytest.raises(GlueError):
        build_overlattice(a1a1, [(Fraction(1, 2), Fraction(1, 2))])
    with pytest.raises(GlueError):
        build_overlattice(a1a1, [(Fraction(1, 3), 0)])


def test_isotropic_glue_on_a1_power():
    a1_4 = builtin("cubic4")
    h = Fraction(1, 2)
    over = build_overlattice(a1_4, [(h, h, h, h)])
    assert over.is_even
    assert over.det == linalg.det(a1_4.gram) // 4 == 4
    assert len(enumerate_shell(over, 1)) == 24


def test_glue_code_is_hamming():
    emb = builtin_embedding("M", "E8")
    code = glue_code(emb, build_cubic_isometry(emb.sub))
    assert (code.length, code.dimension, code.min_weight) == (8, 4, 4)
    assert code.weight_enumerator() == {0: 1, 4: 14, 8: 1}
    assert code.words in {c.words for c in maximal_isotropic_codes(8)}


def test_glue_code_needs_matching_isometry():
    emb = builtin_embedding("M", "E8")
    assert builtin("sqrt2Z8").gram != emb.sub.gram
    with pytest.raises(GlueError):
        glue_code(emb, build_cubic_isometry(builtin("sqrt2Z8")))


def test_maximal_isotropic_codes():
    codes = maximal_isotropic_codes(8)
    assert len(codes) == 30
    for c in codes:
        assert c.dimension == 4
        assert c.weight_enumerator() == {0: 1, 4: 14, 8: 1}
    with pytest.raises(ValueError):
        maximal_isotropic_codes(6)
