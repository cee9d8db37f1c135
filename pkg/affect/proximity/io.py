"""
CSV storage of proximity matrix sequences.

A matrix file has a header row ``id,<id_1>,...,<id_n>`` followed by one
row ``<id_i>,w_i1,...,w_in`` per object. A sequence is a directory of
``step_0000.csv``, ``step_0001.csv``, ... files. The proximity kind is not
stored in the file; it comes from the run configuration.

Ground-truth memberships may sit next to the step files as
``labels_NNNN.csv`` (``id,label``) and true proximities as
``oracle_NNNN.csv`` in the matrix layout.
"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from affect.errors import ParseError
from affect.proximity.matrix import ClusterAssignment, Kind, ProximityMatrix

logger = logging.getLogger(__name__)

STEP_PATTERN = re.compile(r"^step_(\d{4,})\.csv$")

# Shortest repr that round-trips a float64.
FLOAT_FORMAT = "%.17g"


# ------------------------------------------------------------
# File naming
# ------------------------------------------------------------

def step_file(directory: Path, t: int, prefix: str = "step") -> Path:
    return Path(directory) / f"{prefix}_{t:04d}.csv"


def list_step_files(directory: Path) -> List[Path]:
    """
    Return the step files of a sequence directory in time order.

    Raises
    ------
    ParseError
        If the directory holds no step files or the numbering has gaps.
    """

    directory = Path(directory)
    if not directory.is_dir():
        raise ParseError("Sequence directory not found", path=directory)

    numbered = {}
    for path in directory.iterdir():
        match = STEP_PATTERN.match(path.name)
        if match:
            numbered[int(match.group(1))] = path

    if not numbered:
        raise ParseError("No step_NNNN.csv files in directory", path=directory)

    expected = list(range(len(numbered)))
    if sorted(numbered) != expected:
        missing = sorted(set(expected) - set(numbered))
        raise ParseError(
            f"Step numbering must start at 0 without gaps (missing {missing[:3]})",
            path=directory
        )

    return [numbered[t] for t in expected]


# ------------------------------------------------------------
# Matrices
# ------------------------------------------------------------

def write_matrix(path: Path, matrix: ProximityMatrix) -> None:
    """Write a matrix in the CSV layout."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    frame = pd.DataFrame(
        np.asarray(matrix.values),
        index=list(matrix.ids),
        columns=list(matrix.ids)
    )
    frame.to_csv(path, index_label="id", float_format=FLOAT_FORMAT)


def _read_table(path: Path) -> pd.DataFrame:
    try:
        return pd.read_csv(
            path,
            header=None,
            dtype=str,
            keep_default_na=False
        )
    except pd.errors.EmptyDataError:
        raise ParseError("File is empty", path=path, line=1) from None
    except pd.errors.ParserError as exc:
        raise ParseError(f"Malformed CSV ({exc})", path=path) from None


def read_matrix(path: Path, kind=Kind.SIMILARITY) -> ProximityMatrix:
    """
    Read and validate one matrix file.

    Raises
    ------
    ParseError
        On structural problems, with the offending file and line.
    AsymmetricMatrix, NegativeDissimilarity, DimensionMismatch
        When the parsed matrix violates the proximity invariants.
    """

    path = Path(path)
    table = _read_table(path)

    header = [cell.strip() for cell in table.iloc[0].tolist()]
    ids = header[1:]
    n = len(ids)

    if n == 0:
        raise ParseError("Header lists no object ids", path=path, line=1)
    if len(set(ids)) != n:
        raise ParseError("Header repeats an object id", path=path, line=1)
    if table.shape[0] - 1 != n:
        raise ParseError(
            f"Expected {n} data rows, found {table.shape[0] - 1}",
            path=path
        )

    position = {obj: i for i, obj in enumerate(ids)}
    values = np.empty((n, n))
    seen = set()

    for row in range(1, table.shape[0]):
        line = row + 1
        cells = [cell.strip() for cell in table.iloc[row].tolist()]
        obj = cells[0]

        if obj not in position:
            raise ParseError(f"Row id {obj!r} is not in the header", path=path, line=line)
        if obj in seen:
            raise ParseError(f"Row id {obj!r} appears twice", path=path, line=line)
        seen.add(obj)

        try:
            values[position[obj]] = [float(cell) for cell in cells[1:]]
        except ValueError:
            raise ParseError("Non-numeric proximity value", path=path, line=line) from None

    return ProximityMatrix.build(values, ids, kind=kind)


# ------------------------------------------------------------
# Ground-truth labels
# ------------------------------------------------------------

def write_labels(path: Path, assignment: ClusterAssignment) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({"id": list(assignment.ids), "label": assignment.labels})
    frame.to_csv(path, index=False)


def read_labels(path: Path) -> ClusterAssignment:
    path = Path(path)
    table = _read_table(path)

    if table.shape[1] != 2 or table.shape[0] < 2:
        raise ParseError("Label file must have columns id,label and one row per object", path=path)

    ids = []
    labels = []
    for row in range(1, table.shape[0]):
        obj, label = (cell.strip() for cell in table.iloc[row].tolist())
        try:
            labels.append(int(label))
        except ValueError:
            raise ParseError(f"Label {label!r} is not an integer", path=path, line=row + 1) from None
        ids.append(obj)

    return ClusterAssignment.from_labels(labels, ids)


# ------------------------------------------------------------
# Sequences
# ------------------------------------------------------------

def ingest(directory: Path, kind=Kind.SIMILARITY) -> List[ProximityMatrix]:
    """
    Read a directory of step files into an ordered, validated sequence.

    Object sets may differ between steps; alignment happens downstream.

    Parameters
    ----------
    directory : Path
        Directory holding step_0000.csv, step_0001.csv, ...

    kind : Kind or str
        Proximity kind declared by the run configuration.

    Returns
    -------
    list of ProximityMatrix
    """

    kind = Kind.parse(kind)
    sequence = []

    for t, path in enumerate(list_step_files(directory)):
        matrix = read_matrix(path, kind=kind)
        if sequence:
            previous = set(sequence[-1].ids)
            current = set(matrix.ids)
            entered = len(current - previous)
            left = len(previous - current)
            if entered or left:
                logger.debug(f"Step {t}: {entered} objects entered, {left} left")
        sequence.append(matrix)

    logger.info(f"Ingested {len(sequence)} steps from {directory}")
    return sequence


def read_companions(directory: Path, prefix: str, steps: int) -> Optional[Dict[int, Path]]:
    """Paths of ``<prefix>_NNNN.csv`` files for every step, or None if any is missing."""
    paths = {t: step_file(directory, t, prefix=prefix) for t in range(steps)}
    if all(p.exists() for p in paths.values()):
        return paths
    return None
