"""
Report Writer.

This module writes command outputs: the deterministic JSON report, the
timestamp sidecar and plot-ready CSV tables.
"""

import logging
from pathlib import Path
from typing import Dict, List, Mapping

import numpy as np
import pandas as pd

from src.core.constants import CSV_FLOAT_FORMAT, REPORT_SUFFIX, SIDECAR_SUFFIX
from src.core.error_handling import handle_file_errors
from src.core.utils import ensure_directory
from src.models.report_models import CommandReport, RunMetadata

logger = logging.getLogger(__name__)


class ReportWriter:
    """Write command reports into one output directory.

    File layout for a command ``name``:
    - ``name.json``: CommandReport envelope (byte-identical across reruns)
    - ``name.meta.json``: RunMetadata with timestamps
    - ``name.<table>.csv``: one file per data table
    """

    def __init__(self, directory: str | Path):
        """Initialize writer.

        Args:
            directory: Output directory, created on first write
        """
        self.directory = Path(directory)

    def _path(self, name: str) -> Path:
        return ensure_directory(self.directory) / name

    @handle_file_errors
    def write_report(self, report: CommandReport) -> Path:
        """Write the JSON envelope.

        Args:
            report: Envelope to serialize

        Returns:
            Path of the written file
        """
        path = self._path(f"{report.command}{REPORT_SUFFIX}")
        path.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.info(f"Wrote report {path}")
        return path

    @handle_file_errors
    def write_metadata(self, metadata: RunMetadata) -> Path:
        """Write the timestamp sidecar next to the report."""
        path = self._path(f"{metadata.command}{SIDECAR_SUFFIX}")
        path.write_text(metadata.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.debug(f"Wrote sidecar {path}")
        return path

    @handle_file_errors
    def write_table(self, command: str, stem: str, columns: Mapping[str, object]) -> Path:
        """Write one CSV table with columns in the given order.

        Args:
            command: Command name used as file prefix
            stem: Table name
            columns: Column name -> 1-D values (equal lengths)

        Returns:
            Path of the written file
        """
        frame = pd.DataFrame({name: np.asarray(values) for name, values in columns.items()})
        path = self._path(f"{command}.{stem}.csv")
        frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
        logger.info(f"Wrote table {path} ({len(frame)} rows)")
        return path

    def write_tables(self, command: str, tables: Dict[str, Mapping[str, object]]) -> List[Path]:
        """Write every table of a command in sorted stem order."""
        return [self.write_table(command, stem, tables[stem]) for stem in sorted(tables)]
