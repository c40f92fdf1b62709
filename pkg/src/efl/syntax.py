"""Abstract syntax for formulas, program terms and dynamic operators.

Derived connectives are stored in core form: ``Or``, ``Implies``, ``Iff`` and
the diamonds are functions that build ``Not``/``And``/``Box`` trees. Sugar
nodes (announcements, questions, network change, common knowledge) stay in
the tree until :func:`efl.macros.expand` removes them.
"""
from dataclasses import dataclass, fields
from typing import Optional

RELATIONS = ("K", "F", "A", "D")
ASSIGNABLE = ("K", "F", "D")


class Formula:
    __slots__ = ()
    _nominal_fields: tuple = ()


class Program:
    __slots__ = ()


# formulas


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Nom(Formula):
    name: str
    _nominal_fields = ("name",)


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    op: str
    arg: Formula

    def __post_init__(self):
        if self.op not in RELATIONS:
            raise ValueError(f"unknown modality {self.op!r}")


@dataclass(frozen=True)
class At(Formula):
    nominal: str
    arg: Formula
    _nominal_fields = ("nominal",)


@dataclass(frozen=True)
class Down(Formula):
    nominal: str
    arg: Formula


@dataclass(frozen=True)
class Dyn(Formula):
    op: object  # PDLTransformation | Composite | GDDLOperator
    arg: Formula


@dataclass(frozen=True)
class PBox(Formula):
    """``[pi] phi`` for an arbitrary program term."""
    program: Program
    arg: Formula


@dataclass(frozen=True)
class CommonC(Formula):
    """Classic common knowledge ``C_G`` over an enumerated group of nominals."""
    agents: tuple
    arg: Formula
    _nominal_fields = ("agents",)


# sugar


class Sugar(Formula):
    __slots__ = ()


@dataclass(frozen=True)
class SenderAnnounce(Sugar):
    """``[n <! psi : theta] phi``: n tells the theta-agents that psi holds of n."""
    sender: str
    message: Formula
    group: Formula
    body: Formula
    private: bool = False
    _nominal_fields = ("sender",)


@dataclass(frozen=True)
class ReceiverAnnounce(Sugar):
    """``[n !> psi : theta] phi``: n tells each theta-agent that psi holds of them."""
    sender: str
    message: Formula
    group: Formula
    body: Formula
    private: bool = False
    _nominal_fields = ("sender",)


@dataclass(frozen=True)
class Ask(Sugar):
    asker: str
    question: Formula
    answerer: str
    body: Formula
    private: bool = False
    _nominal_fields = ("asker", "answerer")


@dataclass(frozen=True)
class DelFriend(Sugar):
    n: str
    m: str
    body: Formula
    _nominal_fields = ("n", "m")


@dataclass(frozen=True)
class AddFriend(Sugar):
    n: str
    m: str
    body: Formula
    _nominal_fields = ("n", "m")


@dataclass(frozen=True)
class FriendRequest(Sugar):
    target: str
    body: Formula
    private: bool = False
    _nominal_fields = ("target",)


@dataclass(frozen=True)
class CommonKnow(Sugar):
    group: Formula
    body: Formula


@dataclass(frozen=True)
class KBarBox(Sugar):
    agent: str
    body: Formula
    _nominal_fields = ("agent",)


# programs


@dataclass(frozen=True)
class Rel(Program):
    name: str

    def __post_init__(self):
        if self.name not in RELATIONS:
            raise ValueError(f"unknown basic program {self.name!r}")


@dataclass(frozen=True)
class Internal(Program):
    name: str


@dataclass(frozen=True)
class Test(Program):
    formula: Formula


@dataclass(frozen=True)
class Seq(Program):
    first: Program
    second: Program


@dataclass(frozen=True)
class Union(Program):
    left: Program
    right: Program


@dataclass(frozen=True)
class Star(Program):
    arg: Program


# dynamic operators


@dataclass(frozen=True)
class PDLTransformation:
    """Simultaneous reassignment ``[t1 := e1, ..., tn := en]``.

    Targets ``K``, ``F`` and ``D`` take program terms; any other target is a
    propositional variable or nominal and takes a formula.
    """
    assignments: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "assignments",
                           tuple((t, rhs) for t, rhs in self.assignments))
        targets = [t for t, _ in self.assignments]
        if len(set(targets)) != len(targets):
            raise ValueError(f"duplicate assignment target in {targets}")
        for t, rhs in self.assignments:
            if t == "A":
                raise ValueError("the universal relation A cannot be reassigned")
            if t in ASSIGNABLE and not isinstance(rhs, Program):
                raise TypeError(f"target {t} needs a program term")
            if t not in ASSIGNABLE and not isinstance(rhs, Formula):
                raise TypeError(f"target {t} needs a formula")

    def __getitem__(self, target):
        return dict(self.assignments)[target]


IDENTITY = PDLTransformation(())


@dataclass(frozen=True)
class Composite:
    """Sequential composition of transformations, validated only at the end."""
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))


@dataclass(frozen=True)
class GDDLOperator:
    actions: tuple
    actual: str
    per_action: tuple
    internal: tuple
    integrate: PDLTransformation
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))
        if isinstance(self.per_action, dict):
            per = tuple(self.per_action.get(a, IDENTITY) for a in self.actions)
        else:
            per = tuple(self.per_action)
        object.__setattr__(self, "per_action", per)
        internal = self.internal.items() if isinstance(self.internal, dict) else self.internal
        internal = tuple(sorted((n, frozenset(tuple(p) for p in pairs)) for n, pairs in internal))
        object.__setattr__(self, "internal", internal)
        if len(set(self.actions)) != len(self.actions) or not self.actions:
            raise ValueError("actions must be a non-empty set of distinct ids")
        if self.actual not in self.actions:
            raise ValueError(f"actual action {self.actual!r} is not an action")
        if len(per) != len(self.actions):
            raise ValueError("one transformation per action is required")
        for t in per:
            if not isinstance(t, PDLTransformation):
                raise TypeError("per-action effects must be PDL-transformations")
        for n, pairs in internal:
            if n in RELATIONS:
                raise ValueError(f"internal relation may not be called {n}")
            for d, e in pairs:
                if d not in self.actions or e not in self.actions:
                    raise ValueError(f"internal relation {n} relates unknown actions")

    def effect(self, action):
        return self.per_action[self.actions.index(action)]


# derived connectives and constructors

TRUE = Top()
FALSE = Not(Top())


def Or(a, b):
    return Not(And(Not(a), Not(b)))


def Implies(a, b):
    return Not(And(a, Not(b)))


def Iff(a, b):
    return And(Implies(a, b), Implies(b, a))


def Dia(op, arg):
    return Not(Box(op, Not(arg)))


def PDia(program, arg):
    return Not(PBox(program, Not(arg)))


def conj(*xs):
    out = None
    for x in xs:
        out = x if out is None else And(out, x)
    return TRUE if out is None else out


def disj(*xs):
    out = None
    for x in xs:
        out = x if out is None else Or(out, x)
    return FALSE if out is None else out


def seq(*ps):
    out = ps[0]
    for p in ps[1:]:
        out = Seq(out, p)
    return out


def union(*ps):
    out = ps[0]
    for p in ps[1:]:
        out = Union(out, p)
    return out


K, F, A, D = (Rel(x) for x in RELATIONS)


# traversal


def children(node):
    """Direct sub-nodes (formulas, programs, operators) of any syntax node."""
    if isinstance(node, PDLTransformation):
        return [rhs for _, rhs in node.assignments]
    if isinstance(node, Composite):
        return list(node.steps)
    if isinstance(node, GDDLOperator):
        return list(node.per_action) + [node.integrate]
    out = []
    for fld in fields(node):
        v = getattr(node, fld.name)
        if isinstance(v, (Formula, Program, PDLTransformation, Composite, GDDLOperator)):
            out.append(v)
    return out


def walk(node):
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(children(n)))


def nominals(node):
    """Every token used as a nominal anywhere in ``node`` (free or bound)."""
    out = set()
    for n in walk(node):
        if isinstance(n, Down):
            out.add(n.nominal)
        for fname in getattr(type(n), "_nominal_fields", ()):
            v = getattr(n, fname)
            out.update(v if isinstance(v, tuple) else (v,))
        if isinstance(n, PDLTransformation):
            out.update(t for t, _ in n.assignments if t not in ASSIGNABLE)
    return out


def free_nominals(node, bound=frozenset()):
    """Nominals occurring outside the scope of a ``down`` that binds them."""
    if isinstance(node, Down):
        return free_nominals(node.arg, bound | {node.nominal})
    out = set()
    for fname in getattr(type(node), "_nominal_fields", ()):
        v = getattr(node, fname)
        out.update(x for x in (v if isinstance(v, tuple) else (v,)) if x not in bound)
    if isinstance(node, PDLTransformation):
        out.update(t for t, _ in node.assignments if t not in ASSIGNABLE and t not in bound)
    for c in children(node):
        out |= free_nominals(c, bound)
    return out


def props(node):
    return {n.name for n in walk(node) if isinstance(n, Prop)}


def reads(node):
    """Basic relations (K, F, A, D) that evaluating ``node`` may consult."""
    out = set()
    for n in walk(node):
        if isinstance(n, Box):
            out.add(n.op)
        elif isinstance(n, Rel):
            out.add(n.name)
        elif isinstance(n, (KBarBox, CommonKnow)):
            out.update("AK")
        elif isinstance(n, CommonC):
            out.add("K")
        elif isinstance(n, (SenderAnnounce, ReceiverAnnounce, Ask)):
            out.update("AK")
        elif isinstance(n, (DelFriend, AddFriend)):
            out.update("AF")
        elif isinstance(n, FriendRequest):
            out.update("AKFD")
    return out


def substitute_nominal(node, old, new):
    """Replace free occurrences of nominal ``old`` by ``new``.

    Occurrences under ``down old`` are bound and left alone.
    """
    if isinstance(node, Down) and node.nominal == old:
        return node
    if isinstance(node, Down) and node.nominal == new:
        fresh = fresh_token(nominals(node) | {old, new}, prefix="_b")
        renamed = substitute_nominal(node.arg, new, fresh)
        return Down(fresh, substitute_nominal(renamed, old, new))
    if isinstance(node, PDLTransformation):
        return PDLTransformation(tuple(
            (new if t == old else t, substitute_nominal(rhs, old, new))
            for t, rhs in node.assignments))
    if isinstance(node, Composite):
        return Composite(tuple(substitute_nominal(s, old, new) for s in node.steps))
    if isinstance(node, GDDLOperator):
        return GDDLOperator(node.actions, node.actual,
                            tuple(substitute_nominal(t, old, new) for t in node.per_action),
                            node.internal, substitute_nominal(node.integrate, old, new),
                            node.name)
    if not isinstance(node, (Formula, Program)):
        return node
    changes = {}
    nom_fields = getattr(type(node), "_nominal_fields", ())
    for fld in fields(node):
        v = getattr(node, fld.name)
        if fld.name in nom_fields:
            if isinstance(v, tuple):
                nv = tuple(new if x == old else x for x in v)
            else:
                nv = new if v == old else v
        elif isinstance(v, (Formula, Program, PDLTransformation, Composite, GDDLOperator)):
            nv = substitute_nominal(v, old, new)
        else:
            continue
        if nv is not v:
            changes[fld.name] = nv
    if not changes:
        return node
    return type(node)(**{f.name: changes.get(f.name, getattr(node, f.name))
                         for f in fields(node) if f.init})


def fresh_token(taken, prefix="x"):
    i = 0
    while f"{prefix}{i}" in taken:
        i += 1
    return f"{prefix}{i}"
