import json
from fractions import Fraction

import pytest

from latshell import linalg
from latshell.lattice import (BUILTIN_NAMES, CONDUCTOR_DIAG, Embedding, GramLattice, LatticeError,
                              builtin, builtin_embedding, conductor, direct_sum, dump_spec,
                              from_spec, load_spec, rescale_gram, resolve, to_spec)
from latshell.shells import enumerate_shell, theta_prefix


def test_registry_contents():
    assert set(BUILTIN_NAMES) >= {"A1", "A2", "D4", "E8", "L_Ok", "M", "sqrt2Z8"}
    for name in BUILTIN_NAMES:
        lat = builtin(name)
        assert lat.name == name
        assert lat.is_even


def test_unknown_builtin():
    with pytest.raises(LatticeError):
        builtin("Leech")


def test_gram_validation():
    with pytest.raises(LatticeError):
        GramLattice("bad", [[2, 1], [0, 2]])
    with pytest.raises(LatticeError):
        GramLattice("indef", [[2, 3], [3, 2]])


def test_norm_convention():
    e8 = builtin("E8")
    assert e8.norm((1, 0, 0, 0, 0, 0, 0, 0)) == 1
    assert e8.inner((1,) + (0,) * 7, (1,) + (0,) * 7) == 2


def test_conductor_indices():
    e8 = builtin("E8")
    assert conductor(e8, CONDUCTOR_DIAG).index == 2 ** 12
    assert conductor(e8, (1,) * 8).index == 1
    half = conductor(e8, (1, 1, 1, 1, 2, 2, 2, 2))
    assert half.index == 2 ** 4
    assert half.sub.gram == builtin("M").gram


def test_embedding_determinant_identity():
    for sub, sup in (("L_Ok", "E8"), ("M", "E8"), ("L_Ok", "M"), ("E8", "E8")):
        emb = builtin_embedding(sub, sup)
        assert emb.sub.det == emb.index ** 2 * emb.sup.det


def test_embedding_rejects_wrong_map():
    e8 = builtin("E8")
    with pytest.raises(LatticeError):
        Embedding(builtin("M"), e8, linalg.identity(8))


def test_chain_values():
    assert builtin("L_Ok").det == 2 ** 24
    assert builtin("M").det == 2 ** 8
    assert builtin("E8").det == 1
    assert all(x % 8 == 0 for row in builtin("L_Ok").gram for x in row)


def test_rescale():
    lok = builtin("L_Ok")
    m = rescale_gram(lok, Fraction(1, 4))
    assert m.gram == builtin("M").gram
    with pytest.raises(LatticeError):
        rescale_gram(builtin("E8"), Fraction(1, 4))
    with pytest.raises(LatticeError):
        rescale_gram(lok, 0)


def test_rescaled_shell_identity():
    lok, m = builtin("L_Ok"), builtin("M")
    for k in range(1, 5):
        assert enumerate_shell(lok, 4 * k).vectors == enumerate_shell(m, k).vectors


def test_direct_sum_convolution():
    a2 = builtin("A2")
    s = direct_sum(a2, a2)
    assert s.gram == builtin("A2xA2").gram
    ta = theta_prefix(a2, 4).coefficients
    ts = theta_prefix(s, 4).coefficients
    for n in range(5):
        assert ts[n] == sum(ta[i] * ta[n - i] for i in range(n + 1))


def test_spec_round_trip(tmp_path):
    path = tmp_path / "mylat.json"
    dump_spec(builtin("D4"), path)
    back = load_spec(path)
    assert back.gram == builtin("D4").gram
    assert resolve(f"@{path}").gram == back.gram
    assert from_spec(to_spec(builtin("M"))).gram == builtin("M").gram


def test_spec_constructions(tmp_path):
    spec = {"construct": "rescale", "factor": "1/4",
            "base": {"construct": "conductor", "base": "E8", "diag": list(CONDUCTOR_DIAG)}}
    assert from_spec(spec).gram == builtin("M").gram
    d = from_spec({"construct": "direct_sum", "parts": ["D4", {"builtin": "D4"}], "name": "DD"})
    assert d.name == "DD" and d.gram == builtin("D4xD4").gram
    with pytest.raises(LatticeError):
        from_spec({"construct": "twist"})
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"gram": [[1, 2], [2, 1]]}))
    with pytest.raises(LatticeError):
        load_spec(path)
