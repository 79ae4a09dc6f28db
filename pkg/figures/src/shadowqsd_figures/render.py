"""Render study-result CSVs into the standard figure set.

The renderer never recomputes any physics: every number on a figure comes
from the CSV rows (fit lines are least-squares fits of those rows).  Four
figure kinds are supported:

``shots``     reciprocal error versus shots per state, log-log, red fit line
``subspace``  reciprocal error versus evolved-state count, log y axis, red
              fit line and a green dashed marker at the minimal count
``errorbar``  mean reciprocal error with a standard-deviation band and a
              green fit line through the lower bound
``bias``      absolute entry bias versus shots per state, log-log, red fit
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

FIGURE_KINDS = ("shots", "subspace", "errorbar", "bias")

REQUIRED_COLUMNS = {
    "shots": ("shots", "median_abs_err_mev"),
    "subspace": ("m", "mnes", "median_abs_err_mev"),
    "errorbar": ("shots", "mean_inv_err", "std_inv_err"),
    "bias": ("shots_per_state", "abs_bias_mev"),
}


class SchemaError(ValueError):
    """CSV header does not match the requested figure kind."""

    def __init__(self, kind: str, missing, found):
        self.missing = tuple(missing)
        self.found = tuple(found)
        super().__init__(
            f"CSV does not match the {kind!r} schema: missing columns {list(missing)}; "
            f"found columns {list(found)}"
        )


@dataclass(frozen=True)
class FigureSpec:
    """What to render: a CSV, the study kind, and the output image path."""

    csv_path: Path
    kind: str
    out_path: Path
    x_label: str | None = None
    y_label: str | None = None

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise ValueError(f"kind must be one of {FIGURE_KINDS}, got {self.kind!r}")


@dataclass(frozen=True)
class PlotSpec:
    """The numbers that fully determine a rendered figure."""

    kind: str
    x: tuple[float, ...]
    y: tuple[float, ...]
    y_low: tuple[float, ...] = ()
    y_high: tuple[float, ...] = ()
    fit_slope: float = math.nan
    fit_intercept: float = math.nan
    marker_x: float | None = None


def read_table(path) -> dict[str, list[float]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError("any", ("<header>",), ())
        table = {name: [] for name in reader.fieldnames}
        for row in reader:
            for name in reader.fieldnames:
                table[name].append(float(row[name]))
    return table


def _require(table, kind: str):
    missing = [c for c in REQUIRED_COLUMNS[kind] if c not in table]
    if missing:
        raise SchemaError(kind, missing, table.keys())


def _fit_line(x, y):
    if len(x) < 2:
        return math.nan, math.nan
    xa = [float(v) for v in x]
    ya = [float(v) for v in y]
    xbar = sum(xa) / len(xa)
    ybar = sum(ya) / len(ya)
    sxx = sum((v - xbar) ** 2 for v in xa)
    slope = sum((u - xbar) * (v - ybar) for u, v in zip(xa, ya)) / sxx
    return slope, ybar - slope * xbar


def build_plot_spec(table: dict[str, list[float]], kind: str) -> PlotSpec:
    """Reduce a CSV table to the exact numbers a figure will draw."""
    _require(table, kind)
    if kind == "shots":
        x = table["shots"]
        y = [1.0 / v for v in table["median_abs_err_mev"]]
        slope, intercept = _fit_line([math.log(v) for v in x], [math.log(v) for v in y])
        return PlotSpec(kind, tuple(x), tuple(y), fit_slope=slope, fit_intercept=intercept)
    if kind == "subspace":
        x = table["m"]
        y = [1.0 / v for v in table["median_abs_err_mev"]]
        slope, intercept = _fit_line(x, [math.log(v) for v in y])
        return PlotSpec(
            kind, tuple(x), tuple(y),
            fit_slope=slope, fit_intercept=intercept, marker_x=table["mnes"][0],
        )
    if kind == "errorbar":
        x = table["shots"]
        y = table["mean_inv_err"]
        spread = table["std_inv_err"]
        low = [max(v - s, 1e-300) for v, s in zip(y, spread)]
        high = [v + s for v, s in zip(y, spread)]
        slope, intercept = _fit_line([math.log(v) for v in x], [math.log(v) for v in low])
        return PlotSpec(
            kind, tuple(x), tuple(y), tuple(low), tuple(high),
            fit_slope=slope, fit_intercept=intercept,
        )
    x = table["shots_per_state"]
    y = table["abs_bias_mev"]
    slope, intercept = _fit_line([math.log(v) for v in x], [math.log(v) for v in y])
    return PlotSpec(kind, tuple(x), tuple(y), fit_slope=slope, fit_intercept=intercept)


_AXIS_LABELS = {
    "shots": ("shots per state", "1 / error (1/MeV)"),
    "subspace": ("number of evolved states", "1 / error (1/MeV)"),
    "errorbar": ("shots per state", "1 / error (1/MeV)"),
    "bias": ("shots per state", "|entry bias| (MeV)"),
}


def render(spec: FigureSpec) -> PlotSpec:
    """Render one figure; returns the plot numbers for inspection/tests."""
    table = read_table(spec.csv_path)
    plot = build_plot_spec(table, spec.kind)
    x_label, y_label = _AXIS_LABELS[spec.kind]
    fig, ax = plt.subplots(figsize=(4.8, 3.6), dpi=150)
    try:
        if spec.kind in ("shots", "bias"):
            ax.loglog(plot.x, plot.y, "o", color="tab:blue", label="runs")
            if not math.isnan(plot.fit_slope):
                xs = sorted(plot.x)
                ys = [math.exp(plot.fit_intercept) * v**plot.fit_slope for v in xs]
                ax.loglog(xs, ys, "-", color="red",
                          label=f"fit, slope {plot.fit_slope:.2f}")
        elif spec.kind == "subspace":
            ax.semilogy(plot.x, plot.y, "o", color="tab:blue", label="runs")
            if not math.isnan(plot.fit_slope):
                xs = sorted(plot.x)
                ys = [math.exp(plot.fit_intercept + plot.fit_slope * v) for v in xs]
                ax.semilogy(xs, ys, "-", color="red",
                            label=f"fit, slope {plot.fit_slope:.2f}")
            if plot.marker_x is not None:
                ax.axvline(plot.marker_x, color="green", linestyle="--",
                           label="minimal state count")
        else:
            yerr_low = [y - lo for y, lo in zip(plot.y, plot.y_low)]
            yerr_high = [hi - y for y, hi in zip(plot.y, plot.y_high)]
            ax.errorbar(plot.x, plot.y, yerr=[yerr_low, yerr_high], fmt="o",
                        color="tab:blue", capsize=3, label="runs")
            ax.set_xscale("log")
            ax.set_yscale("log")
            if not math.isnan(plot.fit_slope):
                xs = sorted(plot.x)
                ys = [math.exp(plot.fit_intercept) * v**plot.fit_slope for v in xs]
                ax.plot(xs, ys, "-", color="green",
                        label=f"lower-bound fit, slope {plot.fit_slope:.2f}")
        ax.set_xlabel(spec.x_label or x_label)
        ax.set_ylabel(spec.y_label or y_label)
        ax.legend(fontsize=8)
        fig.tight_layout()
        spec.out_path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(spec.out_path)
    finally:
        plt.close(fig)
    return plot


def kinds_for_table(table: dict[str, list[float]]) -> list[str]:
    """Figure kinds whose schema the CSV satisfies (a CSV may feed several)."""
    out = []
    for kind in FIGURE_KINDS:
        if all(c in table for c in REQUIRED_COLUMNS[kind]):
            out.append(kind)
    return out
