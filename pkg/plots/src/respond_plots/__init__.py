"""Panel figures for the CSV datasets emitted by ``respond figure``."""

from .render import FigureJob, render, render_job

__version__ = "0.1.0"

__all__ = ["FigureJob", "render", "render_job"]
