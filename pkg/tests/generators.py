"""Random formulas, programs, operators and models shared by the test suites.

Both a seeded ``random.Random`` generator (fast, used for large fuzz runs)
and hypothesis strategies built on top of it are provided.
"""
import itertools
import random

from hypothesis import strategies as st

from efl.model import EFLModel
from efl.syntax import (
    IDENTITY, AddFriend, And, Ask, At, Box, CommonC, CommonKnow, Composite, DelFriend,
    Down, Dyn, FriendRequest, GDDLOperator, Internal, KBarBox, Nom, Not, PBox,
    PDLTransformation, Prop, ReceiverAnnounce, Rel, SenderAnnounce, Seq, Star, Test, Top,
    Union,
)

PROPS = ("p", "q", "s")
NOMINALS = ("a", "b", "n", "m")


class FormulaGen:
    """Random ASTs over ``PROPS`` and ``NOMINALS``; every node kind is reachable."""

    def __init__(self, rng, props=PROPS, nominals=NOMINALS, sugar=True, dynamic=True,
                 binders=None):
        self.rng = rng
        self.binders = binders or nominals
        self.props = props
        self.nominals = nominals
        self.sugar = sugar
        self.dynamic = dynamic

    def nom(self):
        return self.rng.choice(self.nominals)

    def formula(self, depth=4):
        r = self.rng
        if depth <= 0 or r.random() < 0.2:
            kind = r.randrange(3)
            if kind == 0:
                return Top()
            if kind == 1:
                return Prop(r.choice(self.props))
            return Nom(self.nom())
        d = depth - 1
        kinds = ["not", "and", "box", "at", "down", "cc"]
        if self.dynamic:
            kinds += ["dyn", "pbox"]
        if self.sugar:
            kinds += ["send", "recv", "ask", "delf", "addf", "req", "ck", "kbar"]
        kind = r.choice(kinds)
        if kind == "not":
            return Not(self.formula(d))
        if kind == "and":
            return And(self.formula(d), self.formula(d))
        if kind == "box":
            return Box(r.choice("KFAD"), self.formula(d))
        if kind == "at":
            return At(self.nom(), self.formula(d))
        if kind == "down":
            return Down(self.rng.choice(self.binders), self.formula(d))
        if kind == "cc":
            return CommonC(tuple(r.sample(self.nominals, r.randint(1, 2))), self.formula(d))
        if kind == "dyn":
            return Dyn(self.operator(d), self.formula(d))
        if kind == "pbox":
            return PBox(self.program(d), self.formula(d))
        if kind == "send":
            return SenderAnnounce(self.nom(), self.formula(d - 1), self.formula(d - 1),
                                  self.formula(d), r.random() < 0.3)
        if kind == "recv":
            return ReceiverAnnounce(self.nom(), self.formula(d - 1), self.formula(d - 1),
                                    self.formula(d), r.random() < 0.3)
        if kind == "ask":
            return Ask(self.nom(), self.formula(d - 1), self.nom(), self.formula(d),
                       r.random() < 0.3)
        if kind == "delf":
            return DelFriend(self.nom(), self.nom(), self.formula(d))
        if kind == "addf":
            return AddFriend(self.nom(), self.nom(), self.formula(d))
        if kind == "req":
            return FriendRequest(self.nom(), self.formula(d), r.random() < 0.3)
        if kind == "ck":
            return CommonKnow(self.formula(d - 1), self.formula(d))
        return KBarBox(self.nom(), self.formula(d))

    def program(self, depth=3, internal=False):
        r = self.rng
        if depth <= 0 or r.random() < 0.3:
            if internal and r.random() < 0.3:
                return Internal("K'")
            if r.random() < 0.3:
                return Test(self.formula(1))
            return Rel(r.choice("KFAD"))
        d = depth - 1
        kind = r.randrange(3)
        if kind == 0:
            return Seq(self.program(d, internal), self.program(d, internal))
        if kind == 1:
            return Union(self.program(d, internal), self.program(d, internal))
        return Star(self.program(d, internal))

    def transformation(self, depth=2, internal=False):
        r = self.rng
        targets = r.sample(["K", "F", "D", "p", "q"], r.randint(0, 3))
        out = []
        for t in targets:
            if t in "KFD":
                out.append((t, self.program(depth, internal)))
            else:
                out.append((t, self.formula(depth)))
        return PDLTransformation(tuple(out))

    def operator(self, depth=2):
        r = self.rng
        kind = r.randrange(4)
        if kind == 0:
            return Composite(tuple(self.transformation(depth) for _ in range(r.randint(2, 3))))
        if kind == 1:
            return GDDLOperator(
                actions=("d0", "d1"), actual=r.choice(("d0", "d1")),
                per_action=(self.transformation(depth), r.choice((IDENTITY,
                                                                  self.transformation(depth)))),
                internal={"K'": {("d0", "d1"), ("d1", "d0")}},
                integrate=self.transformation(depth, internal=True))
        return self.transformation(depth)


def random_model(rng, worlds=3, agents=("a", "b", "c"), props=("p",), named=True,
                 extra_names=(), with_d=False):
    """A random EFL model; k classes come from a random partition per agent."""
    ws = [f"w{i}" for i in range(worlds)]
    k = {}
    for a in agents:
        labels = [rng.randrange(worlds) for _ in ws]
        k[a] = [(x, y) for (x, lx), (y, ly) in itertools.combinations(zip(ws, labels), 2)
                if lx == ly]
    f = {w: [p for p in itertools.combinations(agents, 2) if rng.random() < 0.5] for w in ws}
    d = None
    if with_d:
        d = {w: [p for p in itertools.product(agents, repeat=2) if rng.random() < 0.3]
             for w in ws}
    g = {a: a for a in agents} if named else {}
    for n in extra_names:
        g[n] = rng.choice(agents)
    val = {p: [(w, a) for w in ws for a in agents if rng.random() < 0.5] for p in props}
    return EFLModel(ws, list(agents), k=k, f=f, d=d, g=g, val=val)


@st.composite
def formulas(draw, depth=4, sugar=True, dynamic=True, props=PROPS, nominals=NOMINALS):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return FormulaGen(random.Random(seed), props, nominals, sugar, dynamic).formula(depth)


@st.composite
def models(draw, worlds=3, agents=("a", "b", "c"), props=("p",), extra_names=(),
           with_d=False):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_model(random.Random(seed), worlds, agents, props,
                        extra_names=extra_names, with_d=with_d)
