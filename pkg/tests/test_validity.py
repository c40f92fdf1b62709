import pytest

from efl.engine import satisfies
from efl.errors import EFLViolation
from efl.parser import parse_formula
from efl.validity import (Countermodel, Signature, ValidUpTo, bell, check_equiv, check_valid,
                          enumerate_models, model_count, partitions, relevance, signature_for)


def test_bell_and_partitions():
    assert [bell(n) for n in range(1, 6)] == [1, 2, 5, 15, 52]
    assert [len(list(partitions(n))) for n in range(1, 6)] == [1, 2, 5, 15, 52]
    assert list(partitions(2)) == [(0, 0), (0, 1)]


@pytest.mark.parametrize("worlds", [1, 2])
@pytest.mark.parametrize("agents", [1, 2])
@pytest.mark.parametrize("props", [(), ("p",)])
@pytest.mark.parametrize("with_d", [False, True])
def test_enumeration_matches_closed_form(worlds, agents, props, with_d):
    sig = Signature(worlds, agents, props, with_d)
    seen = list(enumerate_models(sig))
    assert len(seen) == model_count(sig)
    assert len({(m.K, m.F, m.D, tuple(sorted(m.val.items()))) for m in seen}) == len(seen)


def test_schematic_nominals_multiply_the_space():
    sig = Signature(1, 2, nominals=("n",))
    assert model_count(sig) == 2 * model_count(Signature(1, 2))
    assert {m.g["n"] for m in enumerate_models(sig)} == {"a", "b"}


def test_valid_and_countermodel():
    sig = Signature(2, 2, ("p",))
    v = check_valid(parse_formula("(K p -> p)"), sig)
    assert isinstance(v, ValidUpTo) and v and v.models == model_count(sig)
    cm = check_valid(parse_formula("(p -> K p)"), sig)
    assert isinstance(cm, Countermodel) and not cm
    assert not satisfies(cm.model, parse_formula("(p -> K p)"), cm.point)


def test_projection_does_not_change_verdicts():
    sig = Signature(2, 2, ("p", "q"))
    for text in ("(K p -> p)", "(p -> F p)", "(<F> q -> A <F> q)", "[K := cutK(p)] (K p | K ~p)"):
        phi = parse_formula(text)
        a, b = check_valid(phi, sig), check_valid(phi, sig, project=False)
        assert bool(a) == bool(b)
        if not a:
            assert (a.model, a.point) == (b.model, b.point)


def test_relevance():
    sig = Signature(2, 2, ("p", "q"), nominals=("n",))
    use = relevance(parse_formula("K p"), sig)
    assert use["K"] and not use["F"] and use[("p", "p")] and not use[("p", "q")]
    assert not use[("n", "n")]


def test_signature_errors():
    with pytest.raises(ValueError):
        check_valid(parse_formula("q"), Signature(1, 1, ("p",)))
    with pytest.raises(ValueError):
        check_valid(parse_formula("@z p"), Signature(1, 1, ("p",)))
    with pytest.raises(ValueError):
        Signature(0, 1)


def test_signature_for_collects_schematic_nominals():
    phi = parse_formula("(@m p -> down n . @n p)", nominals="m")
    sig = signature_for(phi, 2, ("a", "b"), ("p",))
    assert sig.nominals == ("m",)


def test_partial_mode():
    phi = parse_formula("[K := (p? ; K)] true")
    sig = Signature(2, 2, ("p",))
    with pytest.raises(EFLViolation):
        check_valid(phi, sig)
    v = check_valid(phi, sig, partial=True)
    assert v and 0 < v.undefined < v.checked


def test_check_equiv():
    sig = Signature(2, 2, ("p",))
    assert check_equiv(parse_formula("~<K> ~p"), parse_formula("K p"), sig)
    assert not check_equiv(parse_formula("K p"), parse_formula("p"), sig)
