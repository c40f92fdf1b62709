"""Matplotlib drawings of models in the grid layout: one row per world, one
column per agent, k links as thick column segments, friendship as dotted row
arcs and true propositions printed beside each point."""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyArrowPatch  # noqa: E402

from .io import k_generators, world_label  # noqa: E402


def draw(model, ax=None, title=None, highlight=None):
    """Draw ``model`` on ``ax`` (a new figure when omitted) and return the axes."""
    nW, nA = len(model.worlds), len(model.agents)
    if ax is None:
        _, ax = plt.subplots(figsize=(1.6 * nA + 1.2, 1.0 * nW + 1.0))
    pos = {(w, a): (j, -i) for i, w in enumerate(model.worlds)
           for j, a in enumerate(model.agents)}

    for a, gens in k_generators(model).items():
        for w, v in gens:
            (x0, y0), (x1, y1) = pos[(w, a)], pos[(v, a)]
            bend = 0.0 if abs(y0 - y1) == 1 else 0.35
            ax.add_patch(FancyArrowPatch((x0, y0), (x1, y1), arrowstyle="-", lw=2.5,
                                         color="0.2", connectionstyle=f"arc3,rad={bend}"))
    for w in model.worlds:
        for x, y in model.f[w]:
            if model.frame.aidx[x] < model.frame.aidx[y]:
                (x0, y0), (x1, y1) = pos[(w, x)], pos[(w, y)]
                bend = 0.0 if abs(x0 - x1) == 1 else -0.3
                ax.add_patch(FancyArrowPatch((x0, y0), (x1, y1), arrowstyle="-", lw=1.2,
                                             ls=":", color="tab:blue",
                                             connectionstyle=f"arc3,rad={bend}"))

    props = sorted(model.V.items())
    for pt, (x, y) in pos.items():
        face = "gold" if highlight is not None and pt == tuple(highlight) else "white"
        ax.plot(x, y, "o", ms=14, mfc=face, mec="black", zorder=3)
        label = ",".join(p for p, pts in props if pt in pts)
        if label:
            ax.text(x + 0.14, y + 0.14, label, fontsize=9, zorder=4)

    ax.set_xticks(range(nA))
    ax.set_xticklabels(model.agents)
    ax.xaxis.tick_top()
    ax.set_yticks([-i for i in range(nW)])
    ax.set_yticklabels([world_label(w) for w in model.worlds])
    ax.set_xlim(-0.6, nA - 0.4)
    ax.set_ylim(-nW + 0.4, 0.6)
    for side in ("right", "bottom"):
        ax.spines[side].set_visible(False)
    if title:
        ax.set_title(title, fontsize=10, pad=22)
    return ax


def render(model, path, title=None, highlight=None):
    """Write a PNG (or any format matplotlib infers from ``path``)."""
    ax = draw(model, title=title, highlight=highlight)
    fig = ax.figure
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
