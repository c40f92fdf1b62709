"""PDL-transformations and GDDL operators acting on EFL models."""
from dataclasses import dataclass
from typing import Optional

from .engine import Evaluator
from .errors import CrossDimensionError, EFLViolation, EvaluationError
from .model import EFLModel, Violation, bits, frame, validate
from .syntax import (ASSIGNABLE, Composite, GDDLOperator, Not, PDLTransformation, Rel,
                     Test, seq, union)


@dataclass(frozen=True)
class TransformResult:
    model: EFLModel
    source: EFLModel
    index_map: Optional[tuple] = None  # pre point index -> post point index; None is identity
    violations: tuple = ()  # only non-empty for unchecked applications

    @property
    def point_map(self):
        pre, post = self.source.frame, self.model.frame
        if self.index_map is None:
            return {p: p for p in pre.points}
        return {pre.points[i]: post.points[j] for i, j in enumerate(self.index_map)}

    def __call__(self, point):
        i = self.source.frame.index(*point)
        j = i if self.index_map is None else self.index_map[i]
        return self.model.frame.points[j]


def cut_K(phi):
    """``(phi? ; K ; phi?) | (~phi? ; K ; ~phi?)``: reveal to each agent whether phi."""
    return union(seq(Test(phi), Rel("K"), Test(phi)),
                 seq(Test(Not(phi)), Rel("K"), Test(Not(phi))))


def _check_dimension(model, name, R):
    fr = model.frame
    bad = []
    for i, succ in enumerate(R):
        keep = fr.cols[fr.agent_of(i)] if name == "K" else fr.rows[fr.world_of(i)]
        for j in bits(succ & ~keep):
            bad.append((fr.points[i], fr.points[j]))
    if bad:
        cond = "agent-preserving" if name == "K" else "world-preserving"
        raise CrossDimensionError([Violation(cond, name.lower(), "*", tuple(bad))])


def _apply_trans(model, t, internal=None, strict=True):
    ev = Evaluator(model, internal, strict=strict)
    fr = model.frame
    fields = dict(K=model.K, F=model.F, D=model.D, has_d=model.has_d,
                  g=model.g, val=model.val)
    g = None
    val = None
    # every right-hand side is read in the pre-model before anything is written
    values = [(target, ev.program(rhs) if target in ASSIGNABLE else ev.formula(rhs))
              for target, rhs in t.assignments]
    for target, value in values:
        if target in ASSIGNABLE:
            if strict:
                _check_dimension(model, target, value)
            fields[target] = value
            if target == "D":
                fields["has_d"] = True
        elif target in model.g:
            matches = [fr.agents[ai] for ai, col in enumerate(fr.cols) if value == col]
            if len(matches) != 1:
                raise EvaluationError(
                    f"new value for nominal {target!r} does not pick out one agent "
                    "uniformly across worlds")
            g = dict(model.g) if g is None else g
            g[target] = matches[0]
        else:
            val = dict(model.val) if val is None else val
            if value:
                val[target] = value
            else:
                val.pop(target, None)
    if g is not None:
        fields["g"] = g
    if val is not None:
        fields["val"] = val
    return EFLModel._raw(fr, **fields)


def _checked(model):
    problems = validate(model)
    if problems:
        raise EFLViolation(problems)
    return model


def _finish(result, source, strict, index_map=None):
    if strict:
        return TransformResult(_checked(result), source, index_map)
    return TransformResult(result, source, index_map, tuple(validate(result)))


def apply_trans(model, t, internal=None, strict=True):
    """Apply a PDL-transformation; the result must again be an EFL model.

    ``strict=False`` skips the check and reports violations on the result
    instead, so that formulas can be read relationally on any structure.
    """
    return _finish(_apply_trans(model, t, internal, strict), model, strict)


def apply_composite(model, op, strict=True):
    current = model
    for step in op.steps:
        current = _apply_trans(current, step, strict=strict)
    return _finish(current, model, strict)


def product(model, op, strict=True):
    """The product model of ``model`` with the action structure of ``op``.

    Returns the product and the point-level denotations of its internal
    relations; slab ``i`` holds ``apply_trans(model, op.per_action[i])`` on
    worlds ``(w, action_i)``.
    """
    slabs = [apply_trans(model, t, strict=strict) for t in op.per_action]
    bad = tuple(v for s in slabs for v in s.violations)
    slabs = [s.model for s in slabs]
    g = slabs[0].g
    if any(s.g != g for s in slabs):
        raise EvaluationError("per-action transformations disagree on nominals")
    fr = model.frame
    P = fr.P
    pfr = frame(tuple((w, a) for a in op.actions for w in fr.worlds), fr.agents)

    def stack(attr):
        out = []
        for s, slab in enumerate(slabs):
            out.extend(x << (s * P) for x in getattr(slab, attr))
        return tuple(out)

    val = {}
    for s, slab in enumerate(slabs):
        for p, m in slab.val.items():
            val[p] = val.get(p, 0) | (m << (s * P))
    prod = EFLModel._raw(pfr, stack("K"), stack("F"), stack("D"),
                         any(sl.has_d for sl in slabs), dict(g), val)
    pos = {a: i for i, a in enumerate(op.actions)}
    internal = {}
    for name, pairs in op.internal:
        R = [0] * pfr.P
        for d, e in pairs:
            s, t = pos[d] * P, pos[e] * P
            for i in range(P):
                R[s + i] |= 1 << (t + i)
        internal[name] = tuple(R)
    if not strict:
        return prod, internal, bad
    return prod, internal


def apply_gddl(model, op, strict=True):
    """Product update followed by the integrating transformation."""
    if strict:
        prod, internal = product(model, op)
        bad = ()
    else:
        prod, internal, bad = product(model, op, strict=False)
    res = apply_trans(prod, op.integrate, internal, strict)
    offset = op.actions.index(op.actual) * model.frame.P
    return TransformResult(res.model, model, tuple(offset + i for i in range(model.frame.P)),
                           bad + res.violations)


def apply(model, op, strict=True):
    if isinstance(op, PDLTransformation):
        return apply_trans(model, op, strict=strict)
    if isinstance(op, GDDLOperator):
        return apply_gddl(model, op, strict)
    if isinstance(op, Composite):
        return apply_composite(model, op, strict)
    raise TypeError(f"not a dynamic operator: {op!r}")
