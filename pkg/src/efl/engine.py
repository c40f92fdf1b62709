"""Denotations of formulas (point sets) and program terms (point relations).

Internally a point set is an ``int`` bitmask over the model's point index and
a relation is a tuple holding one successor mask per point.
"""
from .errors import (EvaluationError, MissingWantRelation, NotNamedAgent,
                     UnboundInternal, UnknownNominal)
from .model import PointedModel, bits, rename
from .syntax import (And, At, Box, CommonC, Down, Dyn, Internal, Nom, Not, PBox, Prop,
                     Rel, Seq, Star, Sugar, Test, Top, Union)


def compose(R, S):
    out = []
    for succ in R:
        m = 0
        while succ:
            low = succ & -succ
            m |= S[low.bit_length() - 1]
            succ ^= low
        out.append(m)
    return tuple(out)


def union_rel(R, S):
    return tuple(x | y for x, y in zip(R, S))


def diagonal(mask, size):
    return tuple((1 << i) if mask >> i & 1 else 0 for i in range(size))


def star(R):
    """Reflexive-transitive closure by a breadth-first search from each point."""
    out = []
    for i in range(len(R)):
        reach = 1 << i
        frontier = reach
        while frontier:
            nxt = 0
            for j in bits(frontier):
                nxt |= R[j]
            frontier = nxt & ~reach
            reach |= frontier
        out.append(reach)
    return tuple(out)


def box(R, mask):
    out = 0
    miss = ~mask
    for i, succ in enumerate(R):
        if not succ & miss:
            out |= 1 << i
    return out


class Evaluator:
    """Bottom-up evaluation on one fixed model, memoised per syntax node.

    ``internal`` binds internal relation tokens (such as ``K'``) while an
    integrating transformation is being evaluated on a product model.
    With ``strict=False`` dynamic operators may leave the EFL class; each such
    update is counted in ``exits`` (shared with nested evaluators) instead of
    raising.
    """

    def __init__(self, model, internal=None, strict=True, exits=None):
        self.model = model
        self.frame = model.frame
        self.internal = internal or {}
        self.strict = strict
        self.exits = exits if exits is not None else [0]
        self._memo = {}

    def _sub(self, model, internal=None):
        return Evaluator(model, internal, self.strict, self.exits)

    def relation(self, name):
        m = self.model
        if name == "K":
            return m.K
        if name == "F":
            return m.F
        if name == "A":
            return self.frame.universal
        if not m.has_d:
            raise MissingWantRelation("this model carries no want relation d")
        return m.D

    def agent_index(self, nominal):
        try:
            return self.frame.aidx[self.model.g[nominal]]
        except KeyError:
            raise UnknownNominal(f"nominal {nominal!r} names no agent") from None

    def formula(self, phi):
        key = id(phi)
        hit = self._memo.get(key)
        if hit is not None and hit[0] is phi:
            return hit[1]
        value = self._formula(phi)
        self._memo[key] = (phi, value)
        return value

    def _formula(self, phi):
        handler = _FORMULA.get(type(phi))
        if handler is not None:
            return handler(self, phi)
        if isinstance(phi, Sugar):
            from .macros import expand
            return self.formula(expand(phi))
        raise EvaluationError(f"cannot evaluate {phi!r}")

    def _prop(self, phi):
        return self.model.val.get(phi.name, 0)

    def _nom(self, phi):
        return self.frame.cols[self.agent_index(phi.name)]

    def _top(self, phi):
        return self.frame.full

    def _not(self, phi):
        return self.frame.full & ~self.formula(phi.arg)

    def _and(self, phi):
        return self.formula(phi.left) & self.formula(phi.right)

    def _box(self, phi):
        return box(self.relation(phi.op), self.formula(phi.arg))

    def _at(self, phi):
        fr = self.frame
        ai = self.agent_index(phi.nominal)
        inner = self.formula(phi.arg)
        out = 0
        for wi, row in enumerate(fr.rows):
            if inner >> (wi * fr.nA + ai) & 1:
                out |= row
        return out

    def _pbox(self, phi):
        return box(self.program(phi.program), self.formula(phi.arg))

    def _down(self, phi):
        model = self.model
        if not model.named:
            raise NotNamedAgent("down-binding needs a model in which every agent is named")
        out = 0
        for ai, agent in enumerate(self.frame.agents):
            sub = self._sub(rename(model, phi.nominal, agent), self.internal)
            out |= sub.formula(phi.arg) & self.frame.cols[ai]
        return out

    def _dyn(self, phi):
        from .dynamics import apply
        result = apply(self.model, phi.op, self.strict)
        if result.violations:
            self.exits[0] += 1
        inner = self._sub(result.model).formula(phi.arg)
        if result.index_map is None:
            return inner
        out = 0
        for i, j in enumerate(result.index_map):
            if inner >> j & 1:
                out |= 1 << i
        return out

    def _classic_common(self, phi):
        # computed on worlds from the k view, independently of the program engine
        model = self.model
        k = model.k
        group = []
        for n in phi.agents:
            if n not in model.g:
                raise UnknownNominal(f"nominal {n!r} names no agent")
            group.append(model.g[n])
        step = {w: set() for w in model.worlds}
        for a in group:
            for w, v in k[a]:
                step[w].add(v)
        truth = self.formula(phi.arg)
        fr = self.frame
        out = 0
        for wi, w in enumerate(fr.worlds):
            seen = {w}
            todo = [w]
            while todo:
                x = todo.pop()
                for y in step[x]:
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
            for ai in range(fr.nA):
                if all(truth >> (fr.widx[v] * fr.nA + ai) & 1 for v in seen):
                    out |= 1 << (wi * fr.nA + ai)
        return out

    def program(self, pi):
        key = id(pi)
        hit = self._memo.get(key)
        if hit is not None and hit[0] is pi:
            return hit[1]
        value = self._program(pi)
        self._memo[key] = (pi, value)
        return value

    def _program(self, pi):
        if isinstance(pi, Rel):
            return self.relation(pi.name)
        if isinstance(pi, Internal):
            try:
                return self.internal[pi.name]
            except KeyError:
                raise UnboundInternal(f"internal relation {pi.name!r} is unbound here") from None
        if isinstance(pi, Test):
            return diagonal(self.formula(pi.formula), self.frame.P)
        if isinstance(pi, Seq):
            # tests next to a relation only filter rows or successors
            first, second = pi.first, pi.second
            if isinstance(first, Test):
                m = self.formula(first.formula)
                return tuple(r if m >> i & 1 else 0
                             for i, r in enumerate(self.program(second)))
            if isinstance(second, Test):
                m = self.formula(second.formula)
                return tuple(r & m for r in self.program(first))
            return compose(self.program(first), self.program(second))
        if isinstance(pi, Union):
            return union_rel(self.program(pi.left), self.program(pi.right))
        if isinstance(pi, Star):
            return star(self.program(pi.arg))
        raise EvaluationError(f"cannot denote {pi!r}")


_FORMULA = {Prop: Evaluator._prop, Nom: Evaluator._nom, Top: Evaluator._top,
            Not: Evaluator._not, And: Evaluator._and, Box: Evaluator._box, At: Evaluator._at,
            Down: Evaluator._down, Dyn: Evaluator._dyn, PBox: Evaluator._pbox,
            CommonC: Evaluator._classic_common}


def truth_mask(model, phi):
    return Evaluator(model).formula(phi)


def evaluate(model, phi):
    """The set of (world, agent) points of ``model`` at which ``phi`` holds."""
    return model.frame.points_of(truth_mask(model, phi))


def denote(model, pi):
    """The relation on points denoted by program term ``pi``."""
    fr = model.frame
    R = Evaluator(model).program(pi)
    return frozenset((fr.points[i], fr.points[j]) for i, succ in enumerate(R)
                     for j in bits(succ))


def satisfies(pm, phi, point=None):
    """``M, w, a |= phi``; accepts a PointedModel or a model plus a point."""
    if isinstance(pm, PointedModel):
        model, point = pm.model, pm.point
    else:
        model = pm
    i = model.frame.index(*point)
    return bool(truth_mask(model, phi) >> i & 1)
