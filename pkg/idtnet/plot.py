"""
SVG charts of IDT curves, one panel per temperature.
"""
import io
import math

import matplotlib
from matplotlib.figure import Figure

from .exceptions import InputException
from .objects.curves import AnalyticCurve, EmpiricalCurve
from .utils import read_text

PANEL_COLUMNS = 3


def load_curve(text):
    """
    Reads an analytic or empirical curve CSV, telling them apart by their columns.
    """
    header = next((line for line in text.splitlines() if line.strip() and not line.startswith("#")), "")
    columns = header.split(",")

    if "d_steps" in columns:
        return AnalyticCurve.from_csv(text)
    if "mean_idt_sweeps" in columns:
        return EmpiricalCurve.from_csv(text)

    raise InputException("Not an IDT curve table", 302, header)


def load_curves(paths):
    return [load_curve(read_text(path)) for path in paths]


def _panels(curves):
    """Curves grouped by temperature, in increasing temperature; unknown temperature last"""
    groups = {}
    for curve in curves:
        groups.setdefault(curve.temperature, []).append(curve)

    known = sorted(t for t in groups if t is not None)
    order = known + ([None] if None in groups else [])
    return [(t, groups[t]) for t in order]


def _draw(ax, curve):
    if isinstance(curve, AnalyticCurve):
        ax.plot(curve.ks, curve.d_values, color="black", label="analytic ({0})".format(curve.branch))
        return

    means = curve.means
    band = 2.0 * curve.sems
    line, = ax.plot(curve.ks, means, marker="o", markersize=3, label=curve.label)
    ax.fill_between(curve.ks, means - band, means + band, color=line.get_color(), alpha=0.25, linewidth=0)


def curve_figure(curves, title=None):
    """
    Figure with analytic curves as lines and empirical curves as mean lines inside a
    band of two standard errors.
    """
    if not curves:
        raise InputException("No curves to plot", 302)

    panels = _panels(curves)
    columns = min(PANEL_COLUMNS, len(panels))
    rows = int(math.ceil(len(panels) / float(columns)))

    figure = Figure(figsize=(4.5 * columns, 3.5 * rows))
    axes = figure.subplots(rows, columns, squeeze=False)

    for index, (temperature, group) in enumerate(panels):
        ax = axes[index // columns][index % columns]
        for curve in group:
            _draw(ax, curve)

        ax.set_xlabel("k")
        ax.set_ylabel("D (steps)")
        if temperature is not None:
            ax.set_title("T = {0:g}".format(temperature))
        ax.legend(fontsize="small")

    for index in range(len(panels), rows * columns):
        axes[index // columns][index % columns].set_visible(False)

    if title:
        figure.suptitle(title)
    figure.tight_layout()
    return figure


def render_svg(figure):
    """
    Self-contained SVG text with fixed ids and no timestamp, so reruns are identical.
    """
    buffer = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "idtnet", "svg.fonttype": "path"}):
        figure.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()
