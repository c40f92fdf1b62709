"""Canonical ASCII printing; the output parses back to an equal tree."""
from .syntax import (
    AddFriend, And, Ask, At, Box, CommonC, CommonKnow, Composite, DelFriend, Down, Dyn,
    FriendRequest, GDDLOperator, Internal, KBarBox, Nom, Not, PBox, PDLTransformation,
    Prop, ReceiverAnnounce, Rel, SenderAnnounce, Seq, Star, Test, Top, Union,
)


def _implication(phi):
    """``(a, b)`` when phi is ``~(a & ~b)``."""
    if isinstance(phi, Not) and isinstance(phi.arg, And) and isinstance(phi.arg.right, Not):
        return phi.arg.left, phi.arg.right.arg
    return None


def format_formula(phi):
    f = format_formula
    if isinstance(phi, Top):
        return "true"
    if isinstance(phi, (Prop, Nom)):
        return phi.name
    if isinstance(phi, Not):
        x = phi.arg
        if isinstance(x, Top):
            return "false"
        if isinstance(x, Box) and isinstance(x.arg, Not):
            inner = f(x.arg)
            # ~K <F> p reads better than <K> F ~p
            if inner.startswith("~"):
                return f"<{x.op}> {f(x.arg.arg)}"
            return f"~{x.op} {inner}"
        if isinstance(x, And) and isinstance(x.left, Not) and isinstance(x.right, Not):
            return f"({f(x.left.arg)} | {f(x.right.arg)})"
        if isinstance(x, And) and isinstance(x.right, Not):
            return f"({f(x.left)} -> {f(x.right.arg)})"
        return f"~{f(x)}"
    if isinstance(phi, And):
        l, r = _implication(phi.left), _implication(phi.right)
        if l is not None and r is not None and l == (r[1], r[0]):
            return f"({f(l[0])} <-> {f(l[1])})"
        return f"({f(phi.left)} & {f(phi.right)})"
    if isinstance(phi, Box):
        return f"{phi.op} {f(phi.arg)}"
    if isinstance(phi, At):
        return f"@{phi.nominal} {f(phi.arg)}"
    if isinstance(phi, Down):
        return f"down {phi.nominal} . {f(phi.arg)}"
    if isinstance(phi, Dyn):
        return f"[{format_operator(phi.op)}] {f(phi.arg)}"
    if isinstance(phi, PBox):
        return f"[[{format_program(phi.program)}]] {f(phi.arg)}"
    if isinstance(phi, CommonC):
        return f"C{{{','.join(phi.agents)}}} {f(phi.arg)}"
    if isinstance(phi, SenderAnnounce):
        arrow = "<!!" if phi.private else "<!"
        return f"[{phi.sender} {arrow} {f(phi.message)} : {f(phi.group)}] {f(phi.body)}"
    if isinstance(phi, ReceiverAnnounce):
        arrow = "!!>" if phi.private else "!>"
        return f"[{phi.sender} {arrow} {f(phi.message)} : {f(phi.group)}] {f(phi.body)}"
    if isinstance(phi, Ask):
        mark = "??" if phi.private else "?"
        return f"[{phi.asker} {mark} {f(phi.question)} : {phi.answerer}] {f(phi.body)}"
    if isinstance(phi, DelFriend):
        return f"[delF {phi.n} {phi.m}] {f(phi.body)}"
    if isinstance(phi, AddFriend):
        return f"[addF {phi.n} {phi.m}] {f(phi.body)}"
    if isinstance(phi, FriendRequest):
        mark = "?? " if phi.private else ""
        return f"[request {mark}{phi.target}] {f(phi.body)}"
    if isinstance(phi, CommonKnow):
        return f"[CK {f(phi.group)}] {f(phi.body)}"
    if isinstance(phi, KBarBox):
        return f"[Kbar {phi.agent}] {f(phi.body)}"
    raise TypeError(f"not a formula: {phi!r}")


def _chain(pi, cls):
    out = []
    while isinstance(pi, cls):
        out.append(pi.second if cls is Seq else pi.right)
        pi = pi.first if cls is Seq else pi.left
    out.append(pi)
    return out[::-1]


def format_program(pi):
    if isinstance(pi, (Rel, Internal)):
        return pi.name
    if isinstance(pi, Test):
        return f"{format_formula(pi.formula)}?"
    if isinstance(pi, Seq):
        return "(" + " ; ".join(map(format_program, _chain(pi, Seq))) + ")"
    if isinstance(pi, Union):
        return "(" + " | ".join(map(format_program, _chain(pi, Union))) + ")"
    if isinstance(pi, Star):
        return f"{format_program(pi.arg)}*"
    raise TypeError(f"not a program term: {pi!r}")


def _assignment(target, rhs):
    body = format_formula(rhs) if _is_formula(rhs) else format_program(rhs)
    return f"{target} := {body}"


def _is_formula(x):
    from .syntax import Formula
    return isinstance(x, Formula)


def format_transformation(t):
    if not t.assignments:
        return "I"
    return ", ".join(_assignment(tg, rhs) for tg, rhs in t.assignments)


def format_operator(op):
    if isinstance(op, PDLTransformation):
        return format_transformation(op)
    if isinstance(op, Composite):
        return " then ".join(format_transformation(s) for s in op.steps)
    if isinstance(op, GDDLOperator):
        acts = []
        for a, t in zip(op.actions, op.per_action):
            star = "*" if a == op.actual else ""
            eff = "I" if not t.assignments else f"({format_transformation(t)})"
            acts.append(f"{star}{a} = {eff}")
        rels = ", ".join(
            f"{n} = " + " ".join(f"{d}>{e}" for d, e in sorted(pairs))
            for n, pairs in op.internal)
        return f"gddl {', '.join(acts)} ; {rels} ; {format_transformation(op.integrate)}"
    raise TypeError(f"not a dynamic operator: {op!r}")


def pretty(node):
    """Print any formula, program or operator."""
    if _is_formula(node):
        return format_formula(node)
    if isinstance(node, (Rel, Internal, Test, Seq, Union, Star)):
        return format_program(node)
    return format_operator(node)
