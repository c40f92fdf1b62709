import itertools

import pytest
from hypothesis import given, settings

from efl.errors import ModelError
from efl.model import EFLModel, equal_modulo_iso, fresh_nominal, rename, validate
from efl.scenarios import fig1, fig2, fig2_after

from generators import models


def ident(m):
    return {w: w for w in m.worlds}, {a: a for a in m.agents}


def test_fig1_is_valid():
    m = fig1().model
    assert validate(m) == []
    assert m.k["a"] == {(w, v) for w in ("u0", "u1") for v in ("u0", "u1")}
    assert m.f["u0"] == {("a", "b"), ("b", "a")}
    assert m.V["p"] == {("u0", "a")}


def test_reflexive_friendship_is_reported():
    m = EFLModel(["u0"], ["a", "b"], f={"u0": [("a", "a")]})
    problems = validate(m)
    assert [(v.condition, v.relation, v.where) for v in problems] == [("irreflexive", "f", "u0")]


def test_unclosed_k_is_reported():
    m = EFLModel(["u0", "u1"], ["a", "b"], k={"b": [("u0", "u1")]}, close=False)
    conds = {(v.relation, v.where, v.condition) for v in validate(m)}
    assert ("k", "b", "reflexive") in conds
    assert ("k", "b", "symmetric") in conds


def test_closure_of_generators():
    m = EFLModel(["u", "v", "w"], ["a"], k={"a": [("u", "v"), ("v", "w")]})
    assert m.k["a"] == set(itertools.product("uvw", repeat=2))


def test_unknown_names_raise():
    with pytest.raises(ModelError):
        EFLModel(["u"], ["a"], k={"z": []})
    with pytest.raises(ModelError):
        EFLModel(["u"], ["a"], f={"v": []})
    with pytest.raises(ModelError):
        EFLModel(["u"], ["a"], g={"n": "z"})


def test_rename():
    m = fig1().model
    r = rename(m, "n", "b")
    assert r.g["n"] == "b" and m.g["n"] == "a"
    assert (r.K, r.F, r.val) == (m.K, m.F, m.val)
    assert rename(m, "n", "a") is m
    assert rename(rename(m, "n", "b"), "n", "a").g["n"] == "a"
    with pytest.raises(ModelError):
        rename(m, "n", "zz")


def test_fresh_nominal():
    m = EFLModel(["u"], ["a", "b"], g={"a": "a", "b": "b", "n": "a"})
    t1 = fresh_nominal(m)
    assert t1 not in m.g
    t2 = fresh_nominal(rename(m, t1, "a"))
    assert t2 != t1
    assert fresh_nominal(EFLModel(["u"], ["a"]))


def test_equal_modulo_iso():
    m = fig2().model
    assert equal_modulo_iso(m, m, *ident(m))
    assert not equal_modulo_iso(m, fig2_after(), *ident(m))
    other = m.replace(val={})
    assert not equal_modulo_iso(m, other, *ident(m))
    swapped = EFLModel(["u1", "u0"], ["a", "b"], k={"a": [("u0", "u1")], "b": [("u0", "u1")]},
                       f={"u0": [("a", "b")], "u1": [("a", "b")]},
                       g={"a": "a", "b": "b"}, val={"p": [("u1", "a")]})
    assert equal_modulo_iso(m, swapped, {"u0": "u1", "u1": "u0"}, {"a": "a", "b": "b"})
    with pytest.raises(ModelError):
        equal_modulo_iso(m, m, {"u0": "u0", "u1": "u0"}, {"a": "a", "b": "b"})


def test_named_flag():
    assert not fig1().model.named
    assert fig2().model.named


@settings(max_examples=60, deadline=None)
@given(models(worlds=3, extra_names=("n",), with_d=True))
def test_valid_models_have_s5_slices(m):
    assert validate(m) == []
    for a in m.agents:
        rel = m.k[a]
        for w in m.worlds:
            assert (w, w) in rel
        for x, y in rel:
            assert (y, x) in rel
            assert all((x, z) in rel for y2, z in rel if y2 == y)
    for w in m.worlds:
        for x, y in m.f[w]:
            assert x != y and (y, x) in m.f[w]


@settings(max_examples=60, deadline=None)
@given(models(worlds=2, extra_names=("n",)))
def test_rename_keeps_everything_but_g(m):
    for a in m.agents:
        r = rename(m, "n", a)
        assert (r.worlds, r.agents, r.K, r.F, r.D, r.val) == (m.worlds, m.agents, m.K, m.F,
                                                              m.D, m.val)
        assert r.g["n"] == a
