"""Bounded validity by exhaustive enumeration of small named-agent models.

Every model over a signature is generated in one canonical order: a set
partition of the worlds per agent (so each k_a is an equivalence by
construction), then a friendship graph per world, a want relation per world
when requested, a valuation per proposition and finally a value for each
schematic nominal. Components that a formula never consults are held at their
first value during checking, which leaves every verdict unchanged while
shrinking the search space.
"""
import itertools
from dataclasses import dataclass, field
from math import comb

from .engine import Evaluator
from .errors import EFLViolation
from .macros import expand
from .model import EFLModel, frame, rename
from .syntax import Down, Iff, free_nominals, props, reads


@dataclass(frozen=True)
class Signature:
    worlds: int
    agents: tuple = ("a", "b")
    props: tuple = ()
    include_d: bool = False
    nominals: tuple = ()  # extra nominals, each ranging over all agents

    def __post_init__(self):
        agents = self.agents
        if isinstance(agents, int):
            agents = tuple("abcdefgh"[:agents]) if agents <= 8 else tuple(
                f"a{i}" for i in range(agents))
        object.__setattr__(self, "agents", tuple(agents))
        object.__setattr__(self, "props", tuple(self.props))
        object.__setattr__(self, "nominals", tuple(self.nominals))
        if self.worlds < 1 or not self.agents:
            raise ValueError("a signature needs at least one world and one agent")
        if set(self.nominals) & set(self.agents):
            raise ValueError("extra nominals must differ from agent names")

    @property
    def world_ids(self):
        return tuple(f"w{i}" for i in range(self.worlds))

    def __str__(self):
        s = f"{self.worlds} worlds, agents {{{','.join(self.agents)}}}"
        s += f", props {{{','.join(self.props)}}}"
        if self.include_d:
            s += ", with d"
        if self.nominals:
            s += f", nominals {{{','.join(self.nominals)}}}"
        return s


def bell(n):
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


def model_count(sig):
    """Closed-form size of the search space of ``sig``."""
    W, A = sig.worlds, len(sig.agents)
    n = bell(W) ** A * 2 ** (comb(A, 2) * W) * 2 ** (W * A * len(sig.props))
    if sig.include_d:
        n *= 2 ** (A * A * W)
    return n * A ** len(sig.nominals)


def partitions(n):
    """Restricted growth strings of length n, in lexicographic order."""
    def grow(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(top + 2):
            yield from grow(prefix + [c], max(top, c))
    if n == 0:
        yield ()
        return
    yield from grow([0], 0)


def _subsets(items):
    for r in range(2 ** len(items)):
        yield [x for i, x in enumerate(items) if r >> i & 1]


class _Space:
    """Per-component option lists for one signature."""

    def __init__(self, sig, use=None):
        use = use or {}
        self.sig = sig
        fr = self.frame = frame(sig.world_ids, sig.agents)
        nW, nA = fr.nW, fr.nA
        keep = lambda key, opts: opts if use.get(key, True) else opts[:1]

        self.k_opts = []
        for ai in range(nA):
            opts = []
            for rgs in partitions(nW):
                rows = {}
                for wi in range(nW):
                    rows[wi * nA + ai] = sum(1 << (v * nA + ai)
                                             for v in range(nW) if rgs[v] == rgs[wi])
                opts.append(rows)
            self.k_opts.append(keep("K", opts))

        pairs = list(itertools.combinations(range(nA), 2))
        self.f_opts = []
        for wi in range(nW):
            base = wi * nA
            opts = []
            for chosen in _subsets(pairs):
                rows = {}
                for a, b in chosen:
                    rows[base + a] = rows.get(base + a, 0) | 1 << (base + b)
                    rows[base + b] = rows.get(base + b, 0) | 1 << (base + a)
                opts.append(rows)
            self.f_opts.append(keep("F", opts))

        self.d_opts = []
        if sig.include_d:
            ordered = list(itertools.product(range(nA), repeat=2))
            for wi in range(nW):
                base = wi * nA
                opts = []
                for chosen in _subsets(ordered):
                    rows = {}
                    for a, b in chosen:
                        rows[base + a] = rows.get(base + a, 0) | 1 << (base + b)
                    opts.append(rows)
                self.d_opts.append(keep("D", opts))

        self.val_opts = [keep(("p", p), list(range(2 ** fr.P))) for p in sig.props]
        self.g_opts = [keep(("n", n), list(sig.agents)) for n in sig.nominals]

    def size(self):
        n = 1
        for group in (self.k_opts, self.f_opts, self.d_opts, self.val_opts, self.g_opts):
            for opts in group:
                n *= len(opts)
        return n

    def __iter__(self):
        fr, sig = self.frame, self.sig
        P = fr.P
        nk, nf, nd = len(self.k_opts), len(self.f_opts), len(self.d_opts)
        nv = len(self.val_opts)
        base_g = {a: a for a in sig.agents}
        for choice in itertools.product(*self.k_opts, *self.f_opts, *self.d_opts,
                                        *self.val_opts, *self.g_opts):
            K = [0] * P
            for rows in choice[:nk]:
                for i, m in rows.items():
                    K[i] = m
            F = [0] * P
            for rows in choice[nk:nk + nf]:
                for i, m in rows.items():
                    F[i] = m
            D = [0] * P
            for rows in choice[nk + nf:nk + nf + nd]:
                for i, m in rows.items():
                    D[i] = m
            at = nk + nf + nd
            val = {p: m for p, m in zip(sig.props, choice[at:at + nv]) if m}
            g = dict(base_g)
            g.update(zip(sig.nominals, choice[at + nv:]))
            yield EFLModel._raw(fr, tuple(K), tuple(F), tuple(D), sig.include_d, g, val)


def enumerate_models(sig):
    """Every model over ``sig`` exactly once, in canonical order."""
    return iter(_Space(sig))


@dataclass(frozen=True)
class ValidUpTo:
    signature: Signature
    models: int  # size of the full search space
    checked: int  # models actually evaluated after relevance projection
    undefined: int = 0  # checked models on which some update left the EFL class

    def __bool__(self):
        return True

    def __str__(self):
        s = f"ValidUpTo({self.signature}; {self.models} models, {self.checked} checked"
        if self.undefined:
            s += f", {self.undefined} outside the EFL class"
        return s + ")"


@dataclass(frozen=True)
class Countermodel:
    model: EFLModel
    point: tuple
    signature: Signature = field(default=None, compare=False)

    def __bool__(self):
        return False

    def __str__(self):
        w, a = self.point
        return f"Countermodel at ({w}, {a})"


def relevance(phi, sig):
    """Which model components the truth of ``phi`` can depend on."""
    r = reads(phi)
    use = {"K": "K" in r, "F": "F" in r, "D": "D" in r}
    used_props = props(phi)
    for p in sig.props:
        use[("p", p)] = p in used_props
    free = free_nominals(phi)
    for n in sig.nominals:
        use[("n", n)] = n in free
    return use


def signature_for(phi, worlds, agents, props_=(), include_d=False):
    """A signature whose schematic nominals cover the free nominals of phi
    that are not agent names."""
    agents = Signature(1, agents).agents
    extra = tuple(sorted(free_nominals(phi) - set(agents)))
    return Signature(worlds, agents, tuple(props_), include_d, extra)


def check_valid(phi, sig, project=True, partial=False):
    """ValidUpTo if phi holds at every point of every model over ``sig``,
    otherwise the first falsifying model and point in canonical order.

    With ``partial=True`` points at which some dynamic operator leaves the
    EFL class are skipped instead of raising (see ``_partial_truth``); models
    with such points are counted in ``undefined``.
    """
    missing = props(phi) - set(sig.props)
    if missing:
        raise ValueError(f"propositions {sorted(missing)} are not in the signature")
    unknown = free_nominals(phi) - set(sig.agents) - set(sig.nominals)
    if unknown:
        raise ValueError(f"nominals {sorted(unknown)} are neither agents nor schematic")
    space = _Space(sig, relevance(phi, sig) if project else None)
    core = expand(phi)
    full = space.frame.full
    checked = undefined = 0
    for model in space:
        checked += 1
        if partial:
            mask, dead = _partial_truth(model, core)
            if dead:
                undefined += 1
                mask |= dead
        else:
            mask = Evaluator(model).formula(core)
        if mask != full:
            missing_pts = full & ~mask
            i = (missing_pts & -missing_pts).bit_length() - 1
            return Countermodel(model, model.frame.points[i], sig)
    return ValidUpTo(sig, model_count(sig), checked, undefined)


def _partial_truth(model, phi):
    """Truth mask plus the points at which the strict reading is undefined.

    Under a leading ``down n`` each agent column is judged on its own
    renamed model; otherwise any update leaving the EFL class makes the
    whole model undefined.
    """
    fr = model.frame
    if isinstance(phi, Down) and model.named:
        mask = dead = 0
        for ai, agent in enumerate(fr.agents):
            sub = rename(model, phi.nominal, agent)
            m, d = _partial_truth(sub, phi.arg)
            mask |= m & fr.cols[ai]
            dead |= d & fr.cols[ai]
        return mask, dead
    try:
        return Evaluator(model).formula(phi), 0
    except EFLViolation:
        return 0, fr.full


def check_equiv(phi, psi, sig, project=True, partial=False):
    return check_valid(Iff(phi, psi), sig, project, partial)
