"""Render transition systems as figures (PNG, PDF or SVG, by file extension)."""

from __future__ import annotations

import math
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle, FancyArrowPatch  # noqa: E402

NODE_RADIUS = 0.22


def _layout(lts, extra=()):
    """Original states on a row, added states (such as ``u``) centred below it."""
    top = [s for s in lts.states if s not in extra]
    bottom = [s for s in lts.states if s in extra]
    if len(top) > 6:
        step = 2 * math.pi / len(top)
        pos = {s: (2.0 * math.cos(i * step), 2.0 * math.sin(i * step)) for i, s in enumerate(top)}
        y_bottom = -3.0
    else:
        pos = {s: (1.6 * i, 0.0) for i, s in enumerate(top)}
        y_bottom = -1.8
    centre = 1.6 * (len(top) - 1) / 2 if len(top) <= 6 else 0.0
    for i, s in enumerate(bottom):
        pos[s] = (centre + 1.6 * (i - (len(bottom) - 1) / 2), y_bottom)
    return pos


def draw_lts(lts, path, title=None, extra_states=()):
    """Draw ``lts`` to ``path``; parallel edges share one arrow with a joint label."""
    pos = _layout(lts, set(extra_states))
    grouped = defaultdict(list)
    for s, a, t in lts.edges:
        grouped[s, t].append(a)

    fig, ax = plt.subplots(figsize=(1.8 + 1.4 * max(2, len(pos)), 3.6))
    for s, (x, y) in pos.items():
        ax.add_patch(Circle((x, y), NODE_RADIUS, fill=False, lw=1.4 if s == lts.initial else 0.8))
        ax.text(x, y, lts.labels.get(s, s), ha="center", va="center", fontsize=10)

    for (s, t), labels in sorted(grouped.items()):
        text = ",".join(sorted(labels))
        (x1, y1), (x2, y2) = pos[s], pos[t]
        if s == t:
            loop = Circle((x1, y1 - NODE_RADIUS - 0.18), 0.18, fill=False, lw=0.8)
            ax.add_patch(loop)
            ax.text(x1, y1 - NODE_RADIUS - 0.48, text, ha="center", va="top", fontsize=8)
            continue
        rad = 0.25 if (t, s) in grouped else 0.0
        arrow = FancyArrowPatch(
            (x1, y1),
            (x2, y2),
            connectionstyle=f"arc3,rad={rad}",
            arrowstyle="-|>",
            mutation_scale=10,
            shrinkA=14,
            shrinkB=14,
            lw=0.8,
            color="black",
        )
        ax.add_patch(arrow)
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        dx, dy = x2 - x1, y2 - y1
        norm = math.hypot(dx, dy) or 1.0
        offset = 0.15 + rad * norm * 0.5
        # arc3 bends towards (dy, -dx); the label sits on the outside of the bend
        ax.text(mx + dy / norm * offset, my - dx / norm * offset, text, ha="center", va="center", fontsize=8)

    xs = [x for x, _ in pos.values()]
    ys = [y for _, y in pos.values()]
    ax.set_xlim(min(xs) - 0.8, max(xs) + 0.8)
    ax.set_ylim(min(ys) - 1.0, max(ys) + 0.8)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path
