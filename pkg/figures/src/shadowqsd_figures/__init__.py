"""Figure rendering for shadow-subspace study CSVs."""

from shadowqsd_figures.render import (
    FIGURE_KINDS,
    FigureSpec,
    PlotSpec,
    SchemaError,
    build_plot_spec,
    kinds_for_table,
    read_table,
    render,
)

__all__ = [
    "FIGURE_KINDS",
    "FigureSpec",
    "PlotSpec",
    "SchemaError",
    "build_plot_spec",
    "kinds_for_table",
    "read_table",
    "render",
]

__version__ = "0.1.0"
