import pytest
from hypothesis import given, settings, strategies as st

from efl.engine import denote, evaluate, satisfies, truth_mask
from efl.errors import MissingWantRelation, NotNamedAgent, UnknownNominal
from efl.macros import ck, classic_C, unfold_down
from efl.model import EFLModel, PointedModel
from efl.parser import parse_formula, parse_program
from efl.scenarios import fig1, fig2
from efl.syntax import At, Down, Nom, PBox, Prop, disj

from generators import FormulaGen, models


def holds(model, text, point, nominals=()):
    return satisfies(model, parse_formula(text, nominals=nominals), point)


def test_fig1_basics():
    m = fig1().model
    assert holds(m, "p", ("u0", "a"))
    assert not holds(m, "p", ("u0", "b"))
    assert holds(m, "<F> p", ("u0", "b"))
    assert holds(m, "~K p", ("u0", "a"))
    assert holds(m, "A ~n", ("u0", "b"), "n") is False
    assert holds(m, "@n p", ("u0", "b"), "n")
    assert evaluate(m, parse_formula("n", nominals="n")) == {("u0", "a"), ("u1", "a")}


def test_pointed_model():
    m = fig2().model
    assert satisfies(PointedModel(m, ("u0", "b")), parse_formula("(K ~p & ~K <F> p)"))


def test_down_binds_current_agent():
    m = fig2().model
    phi = parse_formula("down n . @a <F> n", nominals="a")
    assert evaluate(m, phi) == set(m.points) - {("u0", "a"), ("u1", "a")}


def test_errors():
    m = fig1().model
    with pytest.raises(UnknownNominal):
        truth_mask(m, parse_formula("@z p"))
    with pytest.raises(NotNamedAgent):
        truth_mask(m, parse_formula("down x . p"))
    with pytest.raises(MissingWantRelation):
        truth_mask(m, parse_formula("D p"))


def test_want_relation():
    m = EFLModel(["u"], ["a", "b"], d={"u": [("a", "b")]}, g={"a": "a", "b": "b"})
    assert holds(m, "<D> b", ("u", "a"), "ab")
    assert not holds(m, "<D> a", ("u", "b"), "ab")


def test_program_denotations():
    m = fig2().model
    rel = denote(m, parse_program("(a? ; K) | true?", nominals="ab"))
    assert (("u0", "a"), ("u1", "a")) in rel
    assert (("u0", "b"), ("u1", "b")) not in rel
    assert (("u0", "b"), ("u0", "b")) in rel
    assert denote(m, parse_program("A ; false?")) == frozenset()
    star = denote(m, parse_program("(F | K)*"))
    assert len(star) == len(m.points) ** 2


@settings(max_examples=40, deadline=None)
@given(models(worlds=3, extra_names=("n",), with_d=True), st.integers(0, 2 ** 32 - 1))
def test_common_knowledge_program_matches_classic(m, seed):
    import random
    gen = FormulaGen(random.Random(seed), props=("p",), nominals=("a", "b", "c"),
                     sugar=False, dynamic=False, binders=("n",))
    body = At("a", gen.formula(2))  # the same at every agent of a world
    for group in (("a",), ("a", "b"), ("b", "c"), ("a", "b", "c")):
        theta = disj(*(Nom(x) for x in group))
        assert truth_mask(m, PBox(ck(theta), body)) == truth_mask(m, classic_C(group, body))


@settings(max_examples=60, deadline=None)
@given(models(worlds=2, extra_names=("n",), with_d=True), st.integers(0, 2 ** 32 - 1))
def test_down_by_renaming_matches_disjunction(m, seed):
    import random
    gen = FormulaGen(random.Random(seed), props=("p",), nominals=("a", "b", "c", "n"),
                     sugar=False, dynamic=False, binders=("n",))
    phi = Down("n", gen.formula(3))
    assert truth_mask(m, phi) == truth_mask(m, unfold_down(phi, sorted(m.g)))


def test_truth_is_deterministic():
    m = fig2().model
    phi = parse_formula("(K ~p & ~K <F> p)")
    assert truth_mask(m, phi) == truth_mask(m, phi)
    assert Prop("p") == Prop("p")
