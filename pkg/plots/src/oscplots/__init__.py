"""CSV-report consumer: figures and summary tables for the experiment harness."""

from oscplots.frame import ReportFrame, ReportRow, SchemaMismatchError, SCHEMA_COLUMNS
from oscplots.render import AXES_BY_KIND, base_kind, render

__all__ = [
    "ReportFrame",
    "ReportRow",
    "SchemaMismatchError",
    "SCHEMA_COLUMNS",
    "AXES_BY_KIND",
    "base_kind",
    "render",
]
