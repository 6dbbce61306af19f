"""Static root scatter plots (matplotlib, Agg backend, deterministic output)."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from .roots import SQRT15_OVER_6  # noqa: E402

# fixed salt and no timestamp keep SVG output byte-identical between runs
plt.rcParams["svg.hashsalt"] = "ehrhart"
plt.rcParams["svg.fonttype"] = "none"

_METADATA = {
    "svg": {"Date": None, "Creator": None},
    "png": {"Software": None},
    "pdf": {"CreationDate": None, "ModDate": None, "Producer": None, "Creator": None},
}


def root_scatter(rows: Sequence[tuple], d: int, path: str | Path, title: str | None = None) -> Path:
    """Scatter ``(id, re, im, certified)`` rows into ``path`` (format from the suffix).

    Certified real roots are drawn as filled circles on the real axis, the
    rest as small crosses.  Overlays: the strip ``-d <= Re <= d-1`` and, for
    ``d == 2``, the planar root region.
    """
    path = Path(path)
    fmt = path.suffix.lstrip(".").lower() or "svg"
    fig, ax = plt.subplots(figsize=(6.0, 4.5))

    ax.axvspan(-d, d - 1, color="0.93", zorder=0, label=f"strip $-{d} \\leq$ Re $\\leq {d - 1}$")
    ax.axvline(-d, color="0.6", lw=0.6, zorder=1)
    ax.axvline(d - 1, color="0.6", lw=0.6, zorder=1)
    if d == 2:
        h = SQRT15_OVER_6
        ax.add_patch(Rectangle((-0.5, -h), 0.5, 2 * h, fill=False, ec="tab:green", lw=1.0,
                               zorder=2, label="planar region"))
        ax.plot([-2, -1, -2 / 3], [0, 0, 0], "s", mfc="none", mec="tab:green", ms=7, zorder=2)

    cplx = [(r[1], r[2]) for r in rows if not r[3]]
    real = [(r[1], r[2]) for r in rows if r[3]]
    if cplx:
        ax.plot(*zip(*cplx), "x", color="tab:blue", ms=3, mew=0.6, label="complex", zorder=3)
    if real:
        ax.plot(*zip(*real), "o", color="tab:red", ms=3, label="certified real", zorder=4)

    xs = [r[1] for r in rows] + [-d - 0.5, d - 0.5]
    ys = [abs(r[2]) for r in rows] + [1.0]
    ax.set_xlim(min(xs) - 0.25, max(xs) + 0.25)
    ym = max(ys) * 1.1
    ax.set_ylim(-ym, ym)
    ax.axhline(0, color="0.3", lw=0.5, zorder=1)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(title or f"roots, d = {d}, {len({r[0] for r in rows})} polytopes")
    ax.legend(loc="upper right", fontsize=7, frameon=False)
    fig.tight_layout()
    fig.savefig(path, format=fmt, metadata=_METADATA.get(fmt))
    plt.close(fig)
    return path


def max_norm(rows: Iterable[tuple]) -> float:
    return max((math.hypot(r[1], r[2]) for r in rows), default=0.0)
