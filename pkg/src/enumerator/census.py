import logging
from pathlib import Path
from typing import Union

import pandas as pd

from src.enumerator.subgroup_enumerator import EnumerationResult
from src.utility.file_utils import FileUtils

SNAPSHOT_HEADER = "# census-snapshot v1"
SNAPSHOT_COLUMNS = ["lattice", "N", "order", "label", "generators"]

logger = logging.getLogger(__name__)


def write_snapshot(result: EnumerationResult, path: Union[str, Path]) -> Path:
    """
    Persist an enumeration as ``# census-snapshot v1`` followed by CSV records.

    Rows are sorted by (order, label, generators) so that snapshots of the same run compare equal.
    """
    frame = result.records().sort_values(["order", "label", "generators"], kind="stable")
    FileUtils.save_csv(frame, path, header_line=SNAPSHOT_HEADER)
    logger.info(f"Wrote {len(frame)} census records to {path}")
    return Path(path)


def read_snapshot(path: Union[str, Path]) -> pd.DataFrame:
    """
    Load a census snapshot.

    Raises:
        ValueError: If the file is not a version-1 snapshot or lacks a column.
    """
    frame = FileUtils.read_csv(path, header_line=SNAPSHOT_HEADER)
    missing = [column for column in SNAPSHOT_COLUMNS if column not in frame.columns]
    if missing:
        raise ValueError(f"Snapshot {path} is missing columns {missing}")
    frame["N"] = frame["N"].astype(int)
    frame["order"] = frame["order"].astype(int)
    return frame


def snapshot_census(frame: pd.DataFrame) -> pd.Series:
    """Label counts of a snapshot, in the same shape as ``EnumerationResult.label_census``."""
    return frame["label"].value_counts().rename("count").sort_index()
