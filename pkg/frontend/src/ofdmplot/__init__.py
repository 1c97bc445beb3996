"""Offline figure rendering for optofdm result CSVs."""

__version__ = "0.1.0"

from .plots import PlotSpec, render
from .reader import SchemaError
