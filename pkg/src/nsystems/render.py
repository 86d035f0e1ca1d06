"""SVG figures: combined graphs of systems and scatter plots of spectrum samples.

Output is byte-deterministic for a fixed matplotlib version: the SVG hash
salt is pinned, text stays as text and the date metadata is dropped.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import OutOfDomain  # noqa: E402
from .paths import PLPath, division_numbers, switch_numbers  # noqa: E402
from .rational import format_rational  # noqa: E402
from .spectrum import SelfSimilarSystem  # noqa: E402

_RC = {
    "svg.hashsalt": "nsystems",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.linewidth": 0.8,
    "path.simplify": False,
}

# dash patterns in points; solid first, so a single component reads plainly
_DASHES = [(), (6, 3), (2, 2), (8, 2, 2, 2), (4, 4), (1, 3), (10, 3, 2, 3, 2, 3)]
_COLORS = ["#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#2e4053", "#117a65"]


@dataclass(frozen=True)
class RenderSpec:
    width: int = 640
    height: int = 400
    q_range: Optional[tuple] = None  # defaults to the path, or one period
    label_division: bool = True
    label_switch: bool = False

    def __post_init__(self):
        if self.width < 16 or self.height < 16:
            raise ValueError("figure must be at least 16x16 pixels")
        if self.q_range is not None:
            lo, hi = (Fraction(x) for x in self.q_range)
            object.__setattr__(self, "q_range", (lo, hi))


def _path_over(system, q_range) -> PLPath:
    if isinstance(system, SelfSimilarSystem):
        if q_range is None:
            return system.base
        lo, hi = q_range
        if lo < system.start:
            raise OutOfDomain(f"{lo} precedes q_0={system.start}")
        periods, reach = 1, system.start * system.ratio
        while reach < hi:
            reach *= system.ratio
            periods += 1
        return system.unroll(periods)
    return system


def _save(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def _figure(spec: RenderSpec):
    dpi = 100
    return plt.subplots(figsize=(spec.width / dpi, spec.height / dpi), dpi=dpi)


def render_combined_graph(system, spec: RenderSpec = RenderSpec(), title: str = "") -> str:
    """SVG of every component over ``spec.q_range`` with division rules.

    Components are drawn one polyline each with their own dash pattern,
    so coinciding components stay distinguishable where they overlap.
    """
    with matplotlib.rc_context(_RC):
        path = _path_over(system, spec.q_range)
        lo, hi = spec.q_range or (path.start, path.end)
        if not lo < hi:
            raise OutOfDomain(f"empty range [{lo}, {hi}]")
        path = path.restrict(lo, hi)
        fig, ax = _figure(spec)
        qs = [float(q) for q in path.breakpoints]
        for j in range(path.n):
            ys = [float(v[j]) for v in path.values]
            ax.plot(qs, ys, color=_COLORS[j % len(_COLORS)], linewidth=1.4,
                    dashes=_DASHES[j % len(_DASHES)], label=f"P{j + 1}", gid=f"component-{j + 1}")
        divs = division_numbers(path, check=False)
        for i, q in enumerate(divs):
            ax.axvline(float(q), color="#888888", linewidth=0.6, linestyle=(0, (3, 3)), zorder=0,
                       gid=f"division-{i}")
        if spec.label_switch:
            for i, q in enumerate(switch_numbers(path, check=False)):
                ax.axvline(float(q), color="#444444", linewidth=0.9, linestyle=(0, (1, 2)), zorder=0,
                           gid=f"switch-{i}")
        if spec.label_division:
            ax.set_xticks([float(q) for q in divs])
            ax.set_xticklabels([format_rational(q) for q in divs], rotation=90)
        ax.set_xlim(float(lo), float(hi))
        ax.set_xlabel("q")
        if title:
            ax.set_title(title)
        ax.legend(loc="upper left", frameon=False)
        fig.tight_layout()
        return _save(fig)


def render_spectrum_scatter(points: Sequence, coords=(0, 3), spec: RenderSpec = RenderSpec(),
                            marker=None, title: str = "") -> str:
    """Scatter of two coordinates of spectrum points; ``marker`` is highlighted."""
    i, j = coords
    with matplotlib.rc_context(_RC):
        fig, ax = _figure(spec)
        xs = [float(p.values[i]) for p in points]
        ys = [float(p.values[j]) for p in points]
        ax.scatter(xs, ys, s=4, color=_COLORS[0], linewidths=0)
        if marker is not None:
            ax.scatter([float(marker[i])], [float(marker[j])], s=40, marker="x", color=_COLORS[1])
        ax.set_xlabel(f"coordinate {i + 1}")
        ax.set_ylabel(f"coordinate {j + 1}")
        if title:
            ax.set_title(title)
        fig.tight_layout()
        return _save(fig)
