"""Result files of a run."""

from affect.reporting.csv_report import write_csv_outputs
from affect.reporting.text_report import RunReportGenerator

__all__ = ["RunReportGenerator", "write_csv_outputs"]
