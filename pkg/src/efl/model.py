"""Finite two-dimensional Kripke models indexed by (world, agent) points.

Relations are stored as successor bitmasks over the point index
``world_index * len(agents) + agent_index``; the set-valued views
(``k``, ``f``, ``d``, ``V``) are derived on demand.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import count

from .errors import ModelError

Point = tuple  # (world, agent)


def bits(mask):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Frame:
    """The point grid shared by every model over the same worlds and agents."""

    __slots__ = ("worlds", "agents", "widx", "aidx", "nW", "nA", "P",
                 "rows", "cols", "full", "universal", "points")

    def __init__(self, worlds, agents):
        self.worlds = tuple(worlds)
        self.agents = tuple(agents)
        if len(set(self.worlds)) != len(self.worlds):
            raise ModelError("duplicate world ids")
        if len(set(self.agents)) != len(self.agents):
            raise ModelError("duplicate agent ids")
        if not self.worlds or not self.agents:
            raise ModelError("a model needs at least one world and one agent")
        self.widx = {w: i for i, w in enumerate(self.worlds)}
        self.aidx = {a: i for i, a in enumerate(self.agents)}
        self.nW = len(self.worlds)
        self.nA = len(self.agents)
        self.P = self.nW * self.nA
        row = (1 << self.nA) - 1
        self.rows = tuple(row << (i * self.nA) for i in range(self.nW))
        self.cols = tuple(
            sum(1 << (w * self.nA + a) for w in range(self.nW)) for a in range(self.nA)
        )
        self.full = (1 << self.P) - 1
        self.universal = tuple(self.rows[i // self.nA] for i in range(self.P))
        self.points = tuple((w, a) for w in self.worlds for a in self.agents)

    def index(self, world, agent):
        try:
            return self.widx[world] * self.nA + self.aidx[agent]
        except KeyError:
            raise ModelError(f"unknown point ({world!r}, {agent!r})") from None

    def world_of(self, i):
        return i // self.nA

    def agent_of(self, i):
        return i % self.nA

    def mask_of(self, points):
        m = 0
        for w, a in points:
            m |= 1 << self.index(w, a)
        return m

    def points_of(self, mask):
        return frozenset(self.points[i] for i in bits(mask))


@lru_cache(maxsize=256)
def frame(worlds, agents):
    return Frame(worlds, agents)


def _classes(items, pairs):
    parent = {x: x for x in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
    groups = {}
    for x in items:
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


class EFLModel:
    """An immutable EFL model ``<W, A, k, f, d, g, V>``.

    ``k`` maps agents to generator pairs of worlds, ``f`` and ``d`` map worlds
    to pairs of agents, ``g`` maps nominals to agents and ``val`` maps
    propositional variables to points. With ``close=True`` each ``k_a`` is
    replaced by its reflexive-symmetric-transitive closure and each ``f_w`` by
    its symmetric closure; reflexive friendship pairs survive and are reported
    by :func:`validate`. Passing ``d=None`` builds a model without a want
    relation.
    """

    __slots__ = ("frame", "K", "F", "D", "has_d", "g", "val", "_hash")

    def __init__(self, worlds, agents, k=None, f=None, d=None, g=None, val=None,
                 *, close=True):
        fr = frame(tuple(worlds), tuple(agents))
        nA = fr.nA
        K = [0] * fr.P
        for agent, pairs in (k or {}).items():
            if agent not in fr.aidx:
                raise ModelError(f"k given for unknown agent {agent!r}")
            ai = fr.aidx[agent]
            pairs = [tuple(p) for p in pairs]
            for p in pairs:
                for w in p:
                    if w not in fr.widx:
                        raise ModelError(f"k_{agent} mentions unknown world {w!r}")
            if close:
                for cls in _classes(fr.worlds, pairs):
                    m = 0
                    for w in cls:
                        m |= 1 << (fr.widx[w] * nA + ai)
                    for w in cls:
                        K[fr.widx[w] * nA + ai] = m
            else:
                for w, v in pairs:
                    K[fr.widx[w] * nA + ai] |= 1 << (fr.widx[v] * nA + ai)
        if close:
            for ai in range(nA):
                for wi in range(fr.nW):
                    i = wi * nA + ai
                    if not K[i]:
                        K[i] = 1 << i
        F = self._agent_relation(fr, f, "f", symmetric=close)
        has_d = d is not None
        D = self._agent_relation(fr, d, "d", symmetric=False)
        gmap = {}
        for nom, agent in (g or {}).items():
            if agent not in fr.aidx:
                raise ModelError(f"nominal {nom!r} names unknown agent {agent!r}")
            gmap[nom] = agent
        vals = {}
        for prop, points in (val or {}).items():
            m = fr.mask_of(tuple(p) for p in points)
            if m:
                vals[prop] = m
        self._init(fr, tuple(K), F, D, has_d, gmap, vals)

    @staticmethod
    def _agent_relation(fr, rel, name, symmetric):
        R = [0] * fr.P
        for world, pairs in (rel or {}).items():
            if world not in fr.widx:
                raise ModelError(f"{name} given for unknown world {world!r}")
            base = fr.widx[world] * fr.nA
            for pair in pairs:
                a, b = pair
                if a not in fr.aidx or b not in fr.aidx:
                    raise ModelError(f"{name}_{world} mentions unknown agent in {pair!r}")
                i, j = base + fr.aidx[a], base + fr.aidx[b]
                R[i] |= 1 << j
                if symmetric:
                    R[j] |= 1 << i
        return tuple(R)

    def _init(self, fr, K, F, D, has_d, g, val):
        self.frame = fr
        self.K = K
        self.F = F
        self.D = D
        self.has_d = has_d
        self.g = g
        self.val = val
        self._hash = None

    @classmethod
    def _raw(cls, fr, K, F, D, has_d, g, val):
        m = cls.__new__(cls)
        m._init(fr, K, F, D, has_d, g, val)
        return m

    def replace(self, **changes):
        fields = dict(K=self.K, F=self.F, D=self.D, has_d=self.has_d,
                      g=self.g, val=self.val)
        fields.update(changes)
        return EFLModel._raw(self.frame, **fields)

    # set-valued views

    @property
    def worlds(self):
        return self.frame.worlds

    @property
    def agents(self):
        return self.frame.agents

    @property
    def points(self):
        return self.frame.points

    @property
    def k(self):
        fr = self.frame
        out = {}
        for ai, a in enumerate(fr.agents):
            pairs = set()
            for wi, w in enumerate(fr.worlds):
                for j in bits(self.K[wi * fr.nA + ai]):
                    pairs.add((w, fr.worlds[fr.world_of(j)]))
            out[a] = frozenset(pairs)
        return out

    def _world_view(self, R):
        fr = self.frame
        out = {}
        for wi, w in enumerate(fr.worlds):
            pairs = set()
            for ai, a in enumerate(fr.agents):
                for j in bits(R[wi * fr.nA + ai]):
                    pairs.add((a, fr.agents[fr.agent_of(j)]))
            out[w] = frozenset(pairs)
        return out

    @property
    def f(self):
        return self._world_view(self.F)

    @property
    def d(self):
        return self._world_view(self.D) if self.has_d else {}

    @property
    def V(self):
        return {p: self.frame.points_of(m) for p, m in self.val.items()}

    @property
    def named(self):
        return set(self.g.values()) == set(self.agents)

    def __eq__(self, other):
        if not isinstance(other, EFLModel):
            return NotImplemented
        return (self.frame.worlds == other.frame.worlds
                and self.frame.agents == other.frame.agents
                and self.K == other.K and self.F == other.F
                and self.has_d == other.has_d and self.D == other.D
                and self.g == other.g and self.val == other.val)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.frame.worlds, self.frame.agents, self.K, self.F,
                               self.has_d, self.D, tuple(sorted(self.g.items())),
                               tuple(sorted(self.val.items()))))
        return self._hash

    def __repr__(self):
        return (f"EFLModel(worlds={list(self.worlds)}, agents={list(self.agents)}, "
                f"g={self.g}, props={sorted(self.val)})")


@dataclass(frozen=True)
class PointedModel:
    model: EFLModel
    point: Point

    def __post_init__(self):
        self.model.frame.index(*self.point)


@dataclass(frozen=True)
class Violation:
    condition: str
    relation: str
    where: object
    pairs: tuple = ()

    def __str__(self):
        s = f"{self.relation}_{self.where} not {self.condition}"
        if self.pairs:
            s += ": " + ", ".join(f"({x}, {y})" for x, y in self.pairs)
        return s


def validate(model):
    """Return every violated EFL frame condition, in a deterministic order."""
    fr = model.frame
    nA = fr.nA
    out = []
    # k: same-agent pairs, then per-agent equivalence
    for ai, a in enumerate(fr.agents):
        col = fr.cols[ai]
        cross, refl, sym, trans = [], [], [], []
        for wi, w in enumerate(fr.worlds):
            i = wi * nA + ai
            succ = model.K[i]
            for j in bits(succ & ~col):
                cross.append((fr.points[i], fr.points[j]))
            if not succ >> i & 1:
                refl.append((w, w))
            for j in bits(succ & col):
                if not model.K[j] >> i & 1:
                    sym.append((w, fr.worlds[j // nA]))
                for l in bits(model.K[j] & col & ~succ):
                    trans.append((w, fr.worlds[l // nA]))
        for cond, pairs in (("agent-preserving", cross), ("reflexive", refl),
                            ("symmetric", sym), ("transitive", trans)):
            if pairs:
                out.append(Violation(cond, "k", a, tuple(pairs)))
    for name, R, symmetric in (("f", model.F, True), ("d", model.D, False)):
        if name == "d" and not model.has_d:
            continue
        for wi, w in enumerate(fr.worlds):
            row = fr.rows[wi]
            cross, refl, sym = [], [], []
            for ai, a in enumerate(fr.agents):
                i = wi * nA + ai
                succ = R[i]
                for j in bits(succ & ~row):
                    cross.append((fr.points[i], fr.points[j]))
                if symmetric and succ >> i & 1:
                    refl.append((a, a))
                if symmetric:
                    for j in bits(succ & row):
                        if not R[j] >> i & 1:
                            sym.append((a, fr.agents[j % nA]))
            for cond, pairs in (("world-preserving", cross), ("irreflexive", refl),
                                ("symmetric", sym)):
                if pairs:
                    out.append(Violation(cond, name, w, tuple(pairs)))
    return out


def rename(model, nominal, agent):
    """Return a copy of ``model`` in which ``nominal`` names ``agent``."""
    if agent not in model.frame.aidx:
        raise ModelError(f"unknown agent {agent!r}")
    if model.g.get(nominal) == agent:
        return model
    g = dict(model.g)
    g[nominal] = agent
    return model.replace(g=g)


def fresh_nominal(model, prefix="n"):
    for i in count():
        tok = f"{prefix}{i}"
        if tok not in model.g:
            return tok


def equal_modulo_iso(m1, m2, world_map, agent_map):
    """True iff the bijections carry k, f, d, g and V of ``m1`` onto ``m2``."""
    if (set(world_map) != set(m1.worlds) or set(world_map.values()) != set(m2.worlds)
            or len(set(world_map.values())) != len(world_map)):
        raise ModelError("world map is not a bijection between the models' worlds")
    if (set(agent_map) != set(m1.agents) or set(agent_map.values()) != set(m2.agents)
            or len(set(agent_map.values())) != len(agent_map)):
        raise ModelError("agent map is not a bijection between the models' agents")
    wm, am = world_map, agent_map

    def pts(ps):
        return frozenset((wm[w], am[a]) for w, a in ps)

    if {am[a]: frozenset((wm[x], wm[y]) for x, y in r) for a, r in m1.k.items()} != m2.k:
        return False
    for name in ("f", "d"):
        r1, r2 = getattr(m1, name), getattr(m2, name)
        if {wm[w]: frozenset((am[x], am[y]) for x, y in r) for w, r in r1.items()} != r2:
            return False
    if m1.has_d != m2.has_d:
        return False
    if {n: am[a] for n, a in m1.g.items()} != m2.g:
        return False
    return {p: pts(s) for p, s in m1.V.items()} == m2.V
