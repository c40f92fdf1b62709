"""Derived social operators: announcements, questions, network change and
common-knowledge programs, plus the expansion of sugar nodes into core form."""
from dataclasses import fields

from .dynamics import cut_K
from .syntax import (
    IDENTITY, AddFriend, And, Ask, At, Box, CommonC, CommonKnow, Composite, DelFriend,
    Dia, Down, Dyn, Formula, FriendRequest, GDDLOperator, Implies, Internal, KBarBox,
    Nom, Not, Or, PBox, PDLTransformation, Program, ReceiverAnnounce, Rel,
    SenderAnnounce, Star, Sugar, Test, conj, disj, fresh_token, nominals, seq,
    substitute_nominal, union,
)

K, F, A = Rel("K"), Rel("F"), Rel("A")
HIDDEN = "K'"


def _nominal(token, role):
    if not isinstance(token, str):
        raise TypeError(f"{role} must be an agent nominal, got {token!r}")
    return token


def send(theta, psi):
    """Anonymously reveal whether psi to exactly the agents satisfying theta."""
    return PDLTransformation(
        (("K", union(seq(Test(theta), cut_K(psi)), seq(Test(Not(theta)), K))),))


def private_operator(theta, message):
    """``send_theta(message)`` hidden from non-receivers behind an internal K'."""
    return GDDLOperator(
        actions=("d0", "d1"),
        actual="d0",
        per_action=(send(theta, message), IDENTITY),
        internal={HIDDEN: {("d0", "d1"), ("d1", "d0")}},
        integrate=PDLTransformation(
            (("K", Star(union(K, seq(Test(Not(theta)), Internal(HIDDEN))))),)),
    )


def sender_announce(n, psi, theta, cont, private=False):
    """``[n <! psi : theta] cont``; psi is about the sender n."""
    n = _nominal(n, "sender")
    message = At(n, psi)
    op = private_operator(theta, message) if private else send(theta, message)
    return Implies(At(n, Box("K", psi)), Dyn(op, cont))


def receiver_announce(n, psi, theta, cont, private=False, strict=False):
    """``[n !> psi : theta] cont``; psi is about each receiver.

    The precondition is ``@n K A(theta -> psi)``. ``strict=True`` drops the
    K and reproduces the unguarded precondition for comparison.
    """
    n = _nominal(n, "sender")
    guard = Box("A", Implies(theta, psi))
    pre = At(n, guard if strict else Box("K", guard))
    op = private_operator(theta, psi) if private else send(theta, psi)
    return Implies(pre, Dyn(op, cont))


def private_announce(n, psi, theta, cont, sender_indexical=True):
    build = sender_announce if sender_indexical else receiver_announce
    return build(n, psi, theta, cont, private=True)


def ask(n, psi, m, cont, private=False):
    """``[n ? psi : m] cont``: n asks m whether psi, where psi is about m.

    m answers yes, no or "I don't know" by announcing to n; cont must hold
    after each answer whose precondition is met.
    """
    n = _nominal(n, "asker")
    m = _nominal(m, "answerer")
    undecided = Not(Or(Box("K", psi), Box("K", Not(psi))))
    return conj(*(sender_announce(m, msg, Nom(n), cont, private)
                  for msg in (psi, Not(psi), undecided)))


def cut_F(n, m):
    """Friendship minus the single directed pair (n, m)."""
    return union(seq(Test(Not(Nom(n))), F), seq(F, Test(Not(Nom(m)))))


def delete_friend(n, m):
    return Composite((PDLTransformation((("F", cut_F(n, m)),)),
                      PDLTransformation((("F", cut_F(m, n)),))))


def add_friend(n, m):
    return PDLTransformation(
        (("F", union(F, seq(Test(Nom(n)), A, Test(Nom(m))),
                     seq(Test(Nom(m)), A, Test(Nom(n))))),))


def befriend(n, m):
    """Like ``add_friend`` but a no-op when n and m name the same agent."""
    other = And(Nom(m), Not(Nom(n)))
    return PDLTransformation(
        (("F", union(F, seq(Test(Nom(n)), A, Test(other)),
                     seq(Test(other), A, Test(Nom(n))))),))


def friend_request(m, cont, private=False, bound=None):
    """``[add(m)] cont``: ask m whether they want to be my friend, then
    befriend them if I am told so. A request to oneself adds no link."""
    m = _nominal(m, "target")
    me = bound or fresh_token(nominals(cont) | {m}, prefix="_n")
    wanted = Dia("D", Nom(me))
    told = Box("K", At(m, wanted))
    after = Or(And(told, Dyn(befriend(me, m), cont)), And(Not(told), cont))
    return Down(me, ask(me, wanted, m, after, private))


def kbar(a):
    return seq(A, Test(Nom(_nominal(a, "agent"))), K)


def ck(theta):
    """``(A ; theta? ; K)* ; A ; theta?``: common knowledge among theta-agents."""
    return seq(Star(seq(A, Test(theta), K)), A, Test(theta))


def classic_C(agents, phi):
    return CommonC(tuple(agents), phi)


def _expand_sugar(node):
    x = expand
    if isinstance(node, SenderAnnounce):
        return sender_announce(node.sender, x(node.message), x(node.group), x(node.body),
                               node.private)
    if isinstance(node, ReceiverAnnounce):
        return receiver_announce(node.sender, x(node.message), x(node.group), x(node.body),
                                 node.private)
    if isinstance(node, Ask):
        return ask(node.asker, x(node.question), node.answerer, x(node.body), node.private)
    if isinstance(node, DelFriend):
        return Dyn(delete_friend(node.n, node.m), x(node.body))
    if isinstance(node, AddFriend):
        return Dyn(add_friend(node.n, node.m), x(node.body))
    if isinstance(node, FriendRequest):
        return friend_request(node.target, x(node.body), node.private)
    if isinstance(node, CommonKnow):
        return PBox(ck(x(node.group)), x(node.body))
    if isinstance(node, KBarBox):
        return PBox(kbar(node.agent), x(node.body))
    raise TypeError(f"unknown sugar {node!r}")


def expand(node):
    """Eliminate every sugar node; ``down`` and ``@`` stay primitive."""
    if isinstance(node, Sugar):
        return _expand_sugar(node)
    if isinstance(node, PDLTransformation):
        return PDLTransformation(tuple((t, expand(r)) for t, r in node.assignments))
    if isinstance(node, Composite):
        return Composite(tuple(expand(s) for s in node.steps))
    if isinstance(node, GDDLOperator):
        return GDDLOperator(node.actions, node.actual,
                            tuple(expand(t) for t in node.per_action),
                            node.internal, expand(node.integrate), node.name)
    if not isinstance(node, (Formula, Program)):
        return node
    changed = {}
    for fld in fields(node):
        v = getattr(node, fld.name)
        if isinstance(v, (Formula, Program, PDLTransformation, Composite, GDDLOperator)):
            nv = expand(v)
            if nv is not v and nv != v:
                changed[fld.name] = nv
    if not changed:
        return node
    return type(node)(**{f.name: changed.get(f.name, getattr(node, f.name))
                         for f in fields(node)})


def unfold_down(node, names):
    """Replace every ``down n . phi`` by ``OR_m (m & phi[m/n])`` over ``names``.

    Only meaningful on named-agent models, where it agrees with evaluation by
    renaming; used as an independent check of that evaluation.
    """
    if isinstance(node, Down):
        body = unfold_down(node.arg, names)
        return disj(*(And(Nom(m), substitute_nominal(body, node.nominal, m))
                      for m in names))
    if isinstance(node, PDLTransformation):
        return PDLTransformation(tuple((t, unfold_down(r, names)) for t, r in node.assignments))
    if isinstance(node, Composite):
        return Composite(tuple(unfold_down(s, names) for s in node.steps))
    if isinstance(node, GDDLOperator):
        return GDDLOperator(node.actions, node.actual,
                            tuple(unfold_down(t, names) for t in node.per_action),
                            node.internal, unfold_down(node.integrate, names), node.name)
    if not isinstance(node, (Formula, Program)):
        return node
    kw = {}
    for fld in fields(node):
        v = getattr(node, fld.name)
        if isinstance(v, (Formula, Program, PDLTransformation, Composite, GDDLOperator)):
            v = unfold_down(v, names)
        kw[fld.name] = v
    return type(node)(**kw)
