import random

import pytest
from hypothesis import given, settings, strategies as st

from efl.dynamics import apply, apply_gddl, apply_trans, cut_K, product
from efl.engine import evaluate
from efl.errors import CrossDimensionError, EFLViolation, EvaluationError
from efl.model import EFLModel, equal_modulo_iso, validate
from efl.parser import parse_formula, parse_operator, parse_program
from efl.scenarios import fig1, fig2, fig4_operator
from efl.syntax import IDENTITY, Composite, PDLTransformation, Prop, Rel

from generators import FormulaGen, models


def test_identity_transformation():
    m = fig2().model
    res = apply(m, IDENTITY)
    assert res.model.K == m.K and res.point_map[("u0", "a")] == ("u0", "a")


def test_assignments_are_simultaneous():
    m = EFLModel(["u"], ["a", "b"], g={"a": "a", "b": "b"},
                 val={"p": [("u", "a")], "q": [("u", "b")]})
    res = apply_trans(m, parse_operator("p := q, q := p"))
    assert res.model.V == {"p": {("u", "b")}, "q": {("u", "a")}}


def test_cut_K_reveals():
    m = fig2().model
    res = apply_trans(m, PDLTransformation((("K", cut_K(Prop("p"))),)))
    assert all(len([v for x, v in res.model.k[a] if x == "u0"]) for a in "ab")
    assert evaluate(res.model, parse_formula("(K p | K ~p)")) == set(m.points)


def test_leaving_the_class_raises():
    with pytest.raises(EFLViolation):
        apply_trans(fig1().model, parse_operator("K := (n? ; K)", nominals="n"))


def test_non_strict_reports_violations():
    res = apply_trans(fig1().model, parse_operator("K := (n? ; K)", nominals="n"), strict=False)
    assert res.violations
    assert validate(res.model) == list(res.violations)


def test_cross_dimension_is_rejected():
    with pytest.raises(CrossDimensionError):
        apply_trans(fig2().model, PDLTransformation((("K", Rel("A")),)))


def test_nominal_reassignment():
    m = fig2().model
    res = apply_trans(m, parse_operator("a := b", nominals="ab"))
    assert res.model.g["a"] == "b"
    with pytest.raises(EvaluationError):
        apply_trans(m, parse_operator("a := p", nominals="ab"))


def test_composite_validates_only_at_the_end():
    m = fig1().model
    op = Composite((parse_operator("F := (F | A)"), parse_operator("F := (F ; ~true?)")))
    assert apply(m, op).model.F == tuple(0 for _ in m.F)


def test_fig4_product():
    m = fig2().model
    res = apply_gddl(m, fig4_operator())
    assert validate(res.model) == []
    assert len(res.model.worlds) == 4
    assert res(("u1", "a")) == (("u1", "d0"), "a")
    prod, internal = product(m, fig4_operator())
    assert set(internal) == {"K'"}
    assert len(prod.points) == 2 * len(m.points)


def test_fig2_transformation_matches_expected_model():
    from efl.scenarios import fig2_after
    res = apply(fig2().model, parse_operator("K := ((a? ; K) | true?)", nominals="ab"))
    ident = {w: w for w in res.model.worlds}, {a: a for a in res.model.agents}
    assert equal_modulo_iso(res.model, fig2_after(), *ident)


def test_product_slabs_match_per_action_results():
    m = fig2().model
    op = fig4_operator()
    prod, _ = product(m, op)
    for action, t in zip(op.actions, op.per_action):
        slab = apply_trans(m, t).model
        for a in m.agents:
            want = {((x, action), (y, action)) for x, y in slab.k[a]}
            got = {(x, y) for x, y in prod.k[a] if x[1] == action}
            assert got == want


@settings(max_examples=40, deadline=None)
@given(models(worlds=2, extra_names=("n",), with_d=True), st.integers(0, 2 ** 32 - 1))
def test_assignment_order_is_irrelevant(m, seed):
    rng = random.Random(seed)
    gen = FormulaGen(rng, props=("p",), nominals=("a", "b", "c"), sugar=False, dynamic=False,
                     binders=("n",))
    t = PDLTransformation((("F", parse_program("(F ; ~c?) | (~c? ; F)", nominals="c")),
                           ("p", gen.formula(2)), ("D", parse_program("D | F"))))
    flipped = PDLTransformation(tuple(reversed(t.assignments)))
    r1, r2 = apply_trans(m, t, strict=False), apply_trans(m, flipped, strict=False)
    assert (r1.model.F, r1.model.D, r1.model.val) == (r2.model.F, r2.model.D, r2.model.val)
