import pytest
from hypothesis import given, settings, strategies as st

from efl.dynamics import apply
from efl.engine import satisfies, truth_mask
from efl.errors import EFLViolation
from efl.macros import (add_friend, ask, befriend, ck, delete_friend, expand, friend_request,
                        kbar, private_operator, send)
from efl.model import EFLModel, validate
from efl.parser import parse_formula
from efl.scenarios import gossip, spy
from efl.syntax import GDDLOperator, Nom, Prop, Sugar, Top, walk
from efl.validity import Signature, check_equiv, signature_for

from generators import FormulaGen, models


def test_send_is_a_single_k_assignment():
    t = send(Prop("q"), Prop("p"))
    assert [target for target, _ in t.assignments] == ["K"]


def test_private_operator_shape():
    op = private_operator(Nom("r"), Prop("p"))
    assert isinstance(op, GDDLOperator)
    assert op.actions == ("d0", "d1") and op.actual == "d0"
    assert dict(op.internal)["K'"] == {("d0", "d1"), ("d1", "d0")}


def test_ask_rejects_group_targets():
    with pytest.raises(TypeError):
        ask("n", Prop("p"), Prop("q"), Top())


def test_add_friend_to_self_leaves_the_class():
    m = EFLModel(["u"], ["a", "b"], g={"a": "a", "b": "b"})
    with pytest.raises(EFLViolation):
        apply(m, add_friend("a", "a"))
    assert apply(m, befriend("a", "a")).model.F == m.F
    assert apply(m, add_friend("a", "b")).model.f["u"] == {("a", "b"), ("b", "a")}


def test_delete_friend_on_non_friends_is_a_no_op():
    m = EFLModel(["u"], ["a", "b", "c"], f={"u": [("a", "b")]},
                 g={"a": "a", "b": "b", "c": "c"})
    assert apply(m, delete_friend("a", "c")).model.F == m.F
    assert apply(m, delete_friend("b", "a")).model.f["u"] == set()


def test_expand_removes_sugar():
    gen = FormulaGen(__import__("random").Random(3))
    for _ in range(200):
        phi = expand(gen.formula(4))
        assert not any(isinstance(x, Sugar) for x in walk(phi))


@settings(max_examples=40, deadline=None)
@given(models(worlds=2, extra_names=("n", "m"), with_d=True), st.integers(0, 2 ** 32 - 1))
def test_expand_is_semantically_transparent(m, seed):
    import random
    gen = FormulaGen(random.Random(seed), props=("p",), nominals=("a", "b", "c", "n", "m"),
                     binders=("n", "m"))
    phi = gen.formula(3)
    try:
        sugar = truth_mask(m, phi)
    except EFLViolation:
        with pytest.raises(EFLViolation):
            truth_mask(m, expand(phi))
        return
    assert sugar == truth_mask(m, expand(phi))


def test_kbar_program():
    sc = spy()
    phi = parse_formula("[Kbar e] s", nominals="bce")
    assert satisfies(sc.model, phi, ("u0", "b"))
    assert kbar("e") == parse_formula("[[A ; e? ; K]] s", nominals="e").program


def test_ck_of_false_is_trivial():
    sc = spy()
    assert satisfies(sc.model, parse_formula("[CK false] false"), ("u0", "b"))
    assert ck(Top()) is not None


def test_private_and_semi_private_agree_for_everyone():
    phi = parse_formula("[n <! p : true] K @n p", nominals="n")
    psi = parse_formula("[n <!! p : true] K @n p", nominals="n")
    sig = signature_for(phi, 2, ("a", "b"), ("p",))
    assert check_equiv(phi, psi, sig)


def test_friend_request_on_empty_want_relation():
    m = EFLModel(["u"], ["a", "b"], d={}, g={"a": "a", "b": "b"})
    phi = friend_request("b", parse_formula("<F> b", nominals="b"))
    assert not satisfies(m, phi, ("u", "a"))
    assert satisfies(m, friend_request("b", parse_formula("~<F> b", nominals="b")), ("u", "a"))


def test_friend_request_when_wanted():
    m = EFLModel(["u"], ["a", "b"], d={"u": [("b", "a")]}, g={"a": "a", "b": "b"})
    assert satisfies(m, friend_request("b", parse_formula("<F> b", nominals="b")), ("u", "a"))


def test_gossip_private_question_is_defined():
    sc = gossip()
    res = apply(sc.model, private_operator(Nom("r"), parse_formula("@p <F> m", nominals="prm")))
    assert validate(res.model) == []
    assert Signature(1, ("a",))
