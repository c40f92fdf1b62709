"""Worked example models and their golden facts.

``fig1``/``fig2``: two friends a and b unsure between u0 and u1, p true of a
at u0 only. ``spy``: Bella (b) is friends with Charlie (c) and Erik (e);
u0 has Erik as the spy, u1 no spy, u2 Bella as the spy. ``gossip``: Peggy
(p), Roger (r) and Mona (m) over worlds u, v, w, x = {cheating, not} x
{Peggy-Mona friends, not}.
"""
from dataclasses import dataclass, field

from .dynamics import apply, apply_gddl, apply_trans, cut_K
from .engine import evaluate, satisfies
from .errors import EFLError
from .macros import private_operator, send
from .model import EFLModel, equal_modulo_iso, validate
from .parser import parse_defs, parse_formula, parse_operator
from .syntax import (IDENTITY, At, Dia, GDDLOperator, Internal, Nom, Or, PDLTransformation,
                     Prop, Rel, Star, Test, Top, seq, union)


@dataclass(frozen=True)
class Scenario:
    name: str
    model: EFLModel
    actual: tuple
    facts: tuple = ()  # (formula text, expected truth at actual)
    defs: dict = field(default_factory=dict)  # abbreviation name -> formula text

    def parse(self, text):
        nominals = tuple(self.model.g)
        return parse_formula(text, nominals=nominals, defs=parse_defs(self.defs, nominals))

    def holds(self, text, point=None, model=None):
        return satisfies(model or self.model, self.parse(text), point or self.actual)


def _chain(worlds):
    return [(x, y) for x, y in zip(worlds, worlds[1:])]


def fig1():
    m = EFLModel(["u0", "u1"], ["a", "b"],
                 k={"a": [("u0", "u1")], "b": [("u0", "u1")]},
                 f={"u0": [("a", "b")], "u1": [("a", "b")]},
                 g={"n": "a"}, val={"p": [("u0", "a")]})
    return Scenario("fig1", m, ("u0", "a"))


def fig2():
    m = fig1().model.replace(g={"a": "a", "b": "b"})
    facts = (("(K ~p & ~K <F> p)", True),
             ("[K := ((a? ; K) | true?)] K <F> p", True))
    return Scenario("fig2", m, ("u0", "b"), facts)


def fig2_after():
    """The right-hand model: k_a as before, k_b the identity."""
    return EFLModel(["u0", "u1"], ["a", "b"], k={"a": [("u0", "u1")]},
                    f={"u0": [("a", "b")], "u1": [("a", "b")]},
                    g={"a": "a", "b": "b"}, val={"p": [("u0", "a")]})


SPY_K = {"b": [["u0", "u1"], ["u2"]],
         "c": [["u0", "u1", "u2"]],
         "e": [["u0"], ["u1", "u2"]]}


def _spy_model(classes):
    k = {a: [p for cls in c for p in _chain(cls)] for a, c in classes.items()}
    friends = [("b", "c"), ("b", "e")]
    return EFLModel(["u0", "u1", "u2"], ["b", "c", "e"], k=k,
                    f={w: friends for w in ("u0", "u1", "u2")},
                    g={a: a for a in "bce"},
                    val={"s": [("u0", "e"), ("u2", "b")]})


DANGER = Or(Prop("s"), Dia("F", Prop("s")))


def spy():
    facts = (("@b (K ~s & ~K <F> s)", True),
             ("@b (d & ~K d)", True),
             ("@b K @c ~d", True),
             ("K d", False))
    return Scenario("spy", _spy_model(SPY_K), ("u0", "b"), facts, {"d": "(s | <F> s)"})


def spy_revealed():
    """Expected result of revealing d: the k_b u0-u1, k_c u1-u2 and k_e u1-u2
    links are gone."""
    return _spy_model({"b": [["u0"], ["u1"], ["u2"]],
                       "c": [["u0", "u1"], ["u2"]],
                       "e": [["u0"], ["u1"], ["u2"]]})


def spy_sent():
    """Expected result of sending d to the friends of b."""
    return _spy_model({"b": SPY_K["b"],
                       "c": [["u0", "u1"], ["u2"]],
                       "e": [["u0"], ["u1"], ["u2"]]})


GOSSIP_WORLDS = ["u", "v", "w", "x"]


def _gossip_model(k_m):
    f = {w: [("r", "m")] + ([("p", "m")] if w in ("u", "w") else []) for w in GOSSIP_WORLDS}
    return EFLModel(GOSSIP_WORLDS, ["p", "r", "m"],
                    k={"r": [("u", "v"), ("w", "x")], "p": [], "m": k_m},
                    f=f, g={a: a for a in "prm"},
                    val={"c": [("u", "r"), ("v", "r")]})


ROGER_FACTS = ("c",
          "down n . K (@p K @n c & @m ~K @n c)",
          "down n . @p K @n K @p K @n c",
          "(~K @m <F> p & ~K @m ~<F> p)",
          "down n . @p K @n ~K @m <F> p")


def gossip():
    return Scenario("gossip", _gossip_model([("u", "w"), ("v", "x")]), ("u", "r"),
                    tuple((t, True) for t in ROGER_FACTS))


def gossip_after():
    """The fig7 model: the gossip update cuts the k_m link u-w."""
    return _gossip_model([("v", "x")])


SCENARIOS = {"fig1": fig1, "fig2": fig2, "spy": spy, "gossip": gossip}


def load(name):
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}") from None


# golden checks


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    observed: object

    @property
    def passed(self):
        return self.expected == self.observed

    @property
    def scenario(self):
        head = self.name.split(":")[0].split(" ")[0]
        return _FIGURE_OF.get(head, head)


_FIGURE_OF = {"fig4": "fig2", "fig5": "spy", "fig7": "gossip", "fig8": "gossip",
              "network": "gossip"}


def _removed_links(before, after):
    out = []
    for a in before.agents:
        gone = {frozenset(p) for p in before.k[a] - after.k[a] if p[0] != p[1]}
        out.extend((a, tuple(sorted(p))) for p in sorted(gone, key=sorted))
    return tuple(out)


def fig4_operator():
    return GDDLOperator(
        actions=("d0", "d1"), actual="d0",
        per_action=(PDLTransformation((("K", union(seq(Test(Nom("a")), Rel("K")),
                                                   Test(Top()))),)), IDENTITY),
        internal={"K'": {("d0", "d1"), ("d1", "d0")}},
        integrate=PDLTransformation(
            (("K", Star(union(Rel("K"), seq(Test(Nom("a")), Internal("K'"))))),)))


def gossip_delta():
    """Private send of @p <F> m to r."""
    return private_operator(Nom("r"), At("p", Dia("F", Nom("m"))))


def golden_suite():
    """Every golden fact of the worked examples as a named expected/observed pair."""
    checks = []
    add = lambda name, exp, obs: checks.append(Check(name, exp, obs))

    for sc in (fig1(), fig2(), spy(), gossip()):
        add(f"{sc.name}: model is valid", [], [str(v) for v in validate(sc.model)])
        for text, want in sc.facts:
            add(f"{sc.name} {sc.actual}: {text}", want, sc.holds(text))

    # fig2 transformation
    f2 = fig2()
    t = parse_operator("K := ((a? ; K) | true?)", nominals="ab")
    after = apply_trans(f2.model, t).model
    ident = {w: w for w in after.worlds}, {a: a for a in after.agents}
    add("fig2: transformed model matches right-hand model", True,
        equal_modulo_iso(after, fig2_after(), *ident))
    add("fig2: k_b becomes the identity", {("u0", "u0"), ("u1", "u1")}, set(after.k["b"]))
    add("fig2: k_a unchanged", set(f2.model.k["a"]), set(after.k["a"]))
    add("fig1: [K := n? ; K] leaves the EFL class", "EFLViolation",
        _error_name(lambda: apply_trans(fig1().model, parse_operator("K := (n? ; K)",
                                                                     nominals="n"))))

    # fig4: a stays in the dark
    res = apply_gddl(f2.model, fig4_operator())
    m4 = res.model
    add("fig4: result is valid", [], [str(v) for v in validate(m4)])
    add("fig4: a cannot tell d0 from d1", True,
        all(((w, "d0"), (w, "d1")) in m4.k["a"] for w in f2.model.worlds))
    add("fig4: k_b is the identity on the d0 slab", True,
        {(x, y) for x, y in m4.k["b"] if x[1] == y[1] == "d0"}
        == {((w, "d0"), (w, "d0")) for w in f2.model.worlds})
    add("fig4: actual point maps into d0 slab", (("u0", "d0"), "b"), res(("u0", "b")))

    # spy network revelation
    sp = spy()
    danger = evaluate(sp.model, DANGER)
    add("spy: danger points", {("u0", "b"), ("u0", "e"), ("u2", "b"), ("u2", "c"), ("u2", "e")},
        set(danger))
    rev = apply_trans(sp.model, PDLTransformation((("K", cut_K(DANGER)),))).model
    ident = {w: w for w in rev.worlds}, {a: a for a in rev.agents}
    add("spy: revealing d cuts exactly the stated links", True,
        equal_modulo_iso(rev, spy_revealed(), *ident))
    add("spy: revealed k-links", (("b", ("u0", "u1")), ("c", ("u0", "u2")),
                                  ("c", ("u1", "u2")), ("e", ("u1", "u2"))),
        _removed_links(sp.model, rev))
    for text in ("@b K d", "@c K ~d", "[[(A ; <F> e? ; K)* ; A ; <F> e?]] d",
                 "@e F K d", "@e F K @e F K d"):
        add(f"spy revealed (u0, b): {text}", True, sp.holds(text, model=rev))
    add("spy: [K := cutK(d)] A (K d | K ~d)", True,
        sp.holds("[K := cutK(d)] A (K d | K ~d)"))

    # fig5
    op = send(Dia("F", Nom("b")), DANGER)
    sent = apply_trans(sp.model, op).model
    changed = tuple(a for a in sp.model.agents if sp.model.k[a] != sent.k[a])
    add("fig5: only k_c and k_e change", ("c", "e"), changed)
    add("fig5: result matches expected model", True,
        equal_modulo_iso(sent, spy_sent(), *ident))
    add("fig5 (u0, b): [send] K @c K ~d", True,
        sp.holds("[K := ((<F> b? ; cutK(d)) | (~<F> b? ; K))] K @c K ~d"))
    add("spy (u0, b): [b <! s : true] A K @b s holds vacuously", True,
        sp.holds("[b <! s : true] A K @b s"))

    # gossip
    go = gossip()
    gossip_op = parse_operator("K := ((<F> p? ; cutK(@r c)) | (~<F> p? ; K))", nominals="prm")
    fig7 = apply(go.model, gossip_op).model
    ident = {w: w for w in fig7.worlds}, {a: a for a in fig7.agents}
    add("fig7: gossip yields the fig7 model", True,
        equal_modulo_iso(fig7, gossip_after(), *ident))
    add("fig7: removed links", (("m", ("u", "w")),), _removed_links(go.model, fig7))
    add("gossip (u, r): sugar form matches the expanded update", True,
        go.holds("[p <! @r c : <F> p] @m K @r c"))
    lit = "down n . [p <! @n c : <F> p] @m K @n c"
    add("gossip (u, r): literal display reading", True, go.holds(lit))
    add("gossip (u, r): not-knowing reading", True, go.holds(f"~K {lit}"))
    add("gossip (w, r): literal display reading", True, go.holds(lit, ("w", "r")))
    add("gossip (w, r): not-knowing reading", False, go.holds(f"~K {lit}", ("w", "r")))

    delta = gossip_delta()
    res = apply_gddl(fig7, delta)
    target = go.parse("(@r K @m K @r c & ~@m K @r K @m K @r c)")
    point = res(("u", "r"))
    add("fig8: mapped point", (("u", "d0"), "r"), point)
    add("fig8: result is valid", [], [str(v) for v in validate(res.model)])
    add("fig8: r knows m knows, m does not know r knows", True, satisfies(res.model, target, point))
    add("fig8 (u, r): private announcement sugar", True,
        go.holds("[p <!! <F> m : r] (@r K @m K @r c & ~@m K @r K @m K @r c)", model=fig7))
    add("fig8 (u, r): private question matches", True,
        go.holds("[r ?? <F> m : p] (@r K @m K @r c & ~@m K @r K @m K @r c)", model=fig7))
    add("network change (u, r): [delF m p] keeps m ignorant", True,
        go.holds("[delF m p] down n . [p <! @n c : <F> p] @m ~K @n c"))
    return checks


def figures(name):
    """Models worth drawing for a scenario, as (label, model, highlighted point)."""
    sc = load(name)
    out = [(name, sc.model, sc.actual)]
    if name == "fig2":
        out.append(("fig2_after", apply_trans(sc.model, parse_operator(
            "K := ((a? ; K) | true?)", nominals="ab")).model, sc.actual))
        res = apply_gddl(sc.model, fig4_operator())
        out.append(("fig4", res.model, res(sc.actual)))
    elif name == "spy":
        out.append(("spy_revealed", apply_trans(
            sc.model, PDLTransformation((("K", cut_K(DANGER)),))).model, sc.actual))
        out.append(("fig5", apply_trans(sc.model, send(Dia("F", Nom("b")), DANGER)).model,
                    sc.actual))
    elif name == "gossip":
        fig7 = gossip_after()
        res = apply_gddl(fig7, gossip_delta())
        out.append(("fig7", fig7, sc.actual))
        out.append(("fig8", res.model, res(sc.actual)))
    return out


def _error_name(fn):
    try:
        fn()
    except EFLError as e:
        return type(e).__name__
    return None
