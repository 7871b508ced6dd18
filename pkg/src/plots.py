"""SVG rendering of loading histograms."""

import io
from typing import Optional

import matplotlib

matplotlib.use("Agg")

from matplotlib.figure import Figure  # noqa: E402

from .stats.fits import FitParams  # noqa: E402
from .stats.histogram import Histogram  # noqa: E402

COLORS = {
    "nonzero": "#d62728",
    "zero": "#1f77b4",
    "depth_violating": "#5c3317",
    "all": "#7f7f7f",
}
LABELS = {
    "nonzero": "g(t) != 0",
    "zero": "g(t) = 0",
    "depth_violating": "depth condition violated",
    "all": "all triples",
}
CURVE_COLOR = "red"

# zero is drawn first: depth_violating is a subset of it
DRAW_ORDER = ("zero", "depth_violating", "nonzero")


def render_histogram_svg(
    h: Histogram,
    overlay: Optional[FitParams] = None,
    overlay_class: Optional[str] = None,
    title: str = "",
    xlabel: str = "loading",
) -> str:
    """
    Render a histogram (per class when it has classes) as an SVG document.

    Args:
        h: Histogram to draw
        overlay: Fitted distribution drawn as a red curve scaled to counts
        overlay_class: Class whose total scales the curve (default: all)
        title: Axes title
        xlabel: X axis label

    Returns:
        The SVG text; identical inputs give identical output
    """
    fig = Figure(figsize=(8, 4.5))
    ax = fig.add_subplot(1, 1, 1)
    edges = h.bin_edges
    widths = edges[1:] - edges[:-1]

    if h.class_counts:
        for name in DRAW_ORDER:
            if name not in h.class_counts:
                continue
            ax.bar(
                edges[:-1],
                h.class_counts[name],
                width=widths,
                align="edge",
                color=COLORS[name],
                alpha=0.6 if name == "nonzero" else 0.9,
                label=LABELS[name],
                linewidth=0,
            )
    else:
        ax.bar(edges[:-1], h.counts, width=widths, align="edge", color=COLORS["all"],
               label=LABELS["all"], linewidth=0)

    if overlay is not None:
        total = h.class_counts[overlay_class].sum() if overlay_class else h.total
        x, y = overlay.expected_counts(edges, float(total))
        ax.plot(x, y, color=CURVE_COLOR, linewidth=1.5, label=f"{overlay.family} fit")

    ax.set_xlabel(xlabel)
    ax.set_ylabel("number of triples")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", fontsize="small")
    fig.tight_layout()

    buffer = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "kronload", "svg.fonttype": "path"}):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()
