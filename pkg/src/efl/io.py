"""JSON model files and Graphviz DOT export.

A model file is a JSON object::

    {"worlds": ["u0", "u1"], "agents": ["a", "b"], "names": {"n": "a"},
     "k": {"a": [["u0", "u1"]]},            # generators, closed on load
     "f": [["u0", ["a", "b"]]],             # per-world pairs, symmetrised
     "d": [["u0", ["a", "b"]]],             # optional want relation
     "val": {"p": [["u0", "a"]]},
     "actual": ["u0", "a"],                 # optional
     "defs": {"d": "(s | <F> s)"}}          # optional formula abbreviations

World ids that are JSON arrays (as produced by action-structure updates) are
read back as tuples.
"""
import json

from .errors import EFLViolation, ModelError
from .model import EFLModel, validate


def _ident(x):
    return tuple(_ident(y) for y in x) if isinstance(x, list) else x


def _plain(x):
    return [_plain(y) for y in x] if isinstance(x, tuple) else x


def world_label(w):
    return "(" + ",".join(world_label(x) for x in w) + ")" if isinstance(w, tuple) else str(w)


def _per_world(entries, what):
    out = {}
    if isinstance(entries, dict):
        entries = [[w, pair] for w, pairs in entries.items() for pair in pairs]
    for entry in entries or []:
        if not (isinstance(entry, list) and len(entry) == 2 and len(entry[1]) == 2):
            raise ModelError(f"{what} entries must look like [world, [agent, agent]], "
                             f"got {entry!r}")
        out.setdefault(_ident(entry[0]), []).append(tuple(entry[1]))
    return out


def model_from_dict(doc):
    """Build and validate a model; returns (model, actual point or None, defs)."""
    try:
        worlds = [_ident(w) for w in doc["worlds"]]
        agents = list(doc["agents"])
    except KeyError as e:
        raise ModelError(f"model file lacks required key {e.args[0]!r}") from None
    k = {a: [tuple(_ident(w) for w in p) for p in pairs]
         for a, pairs in (doc.get("k") or {}).items()}
    d = _per_world(doc["d"], "d") if doc.get("d") is not None else None
    val = {p: [(_ident(w), a) for w, a in pts] for p, pts in (doc.get("val") or {}).items()}
    model = EFLModel(worlds, agents, k=k, f=_per_world(doc.get("f"), "f"), d=d,
                     g=doc.get("names") or {}, val=val)
    problems = validate(model)
    if problems:
        raise EFLViolation(problems)
    actual = doc.get("actual")
    if actual is not None:
        actual = (_ident(actual[0]), actual[1])
        model.frame.index(*actual)
    return model, actual, dict(doc.get("defs") or {})


def read_model(path):
    """Load a model file; returns (model, actual point or None, defs)."""
    with open(path) as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    return model_from_dict(doc)


def _unordered(pairs, order):
    seen = set()
    out = []
    for x, y in sorted(pairs, key=lambda p: (order[p[0]], order[p[1]])):
        if x == y or (y, x) in seen:
            continue
        seen.add((x, y))
        out.append([_plain(x), _plain(y)])
    return out


def model_to_dict(model, actual=None, defs=None):
    fr = model.frame
    widx, aidx = fr.widx, fr.aidx
    doc = {"worlds": [_plain(w) for w in model.worlds],
           "agents": list(model.agents),
           "names": dict(sorted(model.g.items())),
           "k": {a: _unordered(model.k[a], widx) for a in model.agents},
           "f": [[_plain(w), pair] for w, pairs in model.f.items()
                 for pair in _unordered(pairs, aidx)]}
    if model.has_d:
        doc["d"] = [[_plain(w), [a, b]] for w, pairs in model.d.items()
                    for a, b in sorted(pairs, key=lambda p: (aidx[p[0]], aidx[p[1]]))]
    doc["val"] = {p: [[_plain(w), a] for w, a in sorted(pts, key=lambda q: fr.index(*q))]
                  for p, pts in sorted(model.V.items())}
    if actual is not None:
        doc["actual"] = [_plain(actual[0]), actual[1]]
    if defs:
        doc["defs"] = dict(defs)
    return doc


def dumps_model(model, actual=None, defs=None):
    return json.dumps(model_to_dict(model, actual, defs), indent=2) + "\n"


def write_model(model, path, actual=None, defs=None):
    with open(path, "w") as fh:
        fh.write(dumps_model(model, actual, defs))


def k_generators(model):
    """Per agent, a chain through each equivalence class in world order."""
    out = {}
    for ai, a in enumerate(model.agents):
        classes = {}
        for w in model.worlds:
            rep = min((v for x, v in model.k[a] if x == w), key=model.frame.widx.get)
            classes.setdefault(rep, []).append(w)
        out[a] = [(c[i], c[i + 1]) for c in classes.values() for i in range(len(c) - 1)]
    return out


def dot_text(model):
    """Points as a grid (worlds are rows, agents are columns), k as solid
    column edges, f as dotted row edges, true propositions as labels."""
    fr = model.frame
    node = lambda w, a: f'"{world_label(w)}|{a}"'
    lines = ["graph efl {", "  node [shape=circle, fontsize=10];", "  splines=true;"]
    props = sorted(model.V.items())
    for w in model.worlds:
        cells = []
        for a in model.agents:
            label = ",".join(p for p, pts in props if (w, a) in pts)
            lines.append(f'  {node(w, a)} [label="{label}"];')
            cells.append(node(w, a))
        lines.append("  { rank=same; " + "; ".join(cells) + "; }")
    for a, gens in k_generators(model).items():
        for w, v in gens:
            lines.append(f"  {node(w, a)} -- {node(v, a)} [style=solid, penwidth=2];")
    for w in model.worlds:
        for x, y in sorted(model.f[w], key=lambda p: (fr.aidx[p[0]], fr.aidx[p[1]])):
            if fr.aidx[x] < fr.aidx[y]:
                lines.append(f"  {node(w, x)} -- {node(w, y)} [style=dotted, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(model, path):
    with open(path, "w") as fh:
        fh.write(dot_text(model))
