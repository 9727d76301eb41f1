"""Figure generation for paint shop benchmark CSVs."""

from .figures import PlotJob, load_records, plot_box, plot_kde, plot_scatter

__all__ = ["PlotJob", "load_records", "plot_box", "plot_kde", "plot_scatter"]
