"""Expression matrices and class labels as tab-separated text.

Matrix: header `gene_id<TAB>sample...`, one row per gene. Values are written with 17
significant digits, which reads back to the identical double.
Labels: `sample_id<TAB>{0|1}` per line, optional header.
"""
from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from bgsa.exceptions import InputError
from bgsa.model import ExpressionDataset
from ._atomic import atomic_write


log = logging.getLogger(__name__)

MATRIX_FLOAT_FORMAT = '%.17g'


def _read_table(path: Path) -> pd.DataFrame:
    try:
        return pd.read_csv(
            path, sep='\t', header=None, dtype=str,
            na_filter=False, keep_default_na=False, skip_blank_lines=True,
        )
    except FileNotFoundError:
        raise InputError(f"{path}: file not found") from None
    except pd.errors.EmptyDataError:
        raise InputError(f"{path}: file is empty") from None
    except pd.errors.ParserError as e:
        raise InputError(f"{path}: {e}") from None


def _first_missing(frame: pd.DataFrame) -> tuple[int, int] | None:
    missing = np.argwhere(frame.isna().to_numpy())
    return (int(missing[0][0]), int(missing[0][1])) if missing.size else None


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_labels(path: str | Path) -> pd.Series:
    """Class labels indexed by sample id.

    The first row is a header when its class field is not a number.
    """
    path = Path(path)
    frame = _read_table(path)
    if frame.shape[1] != 2:
        raise InputError(f"{path}: expected 2 columns (sample_id, class), got {frame.shape[1]}")
    if not _is_number(str(frame.iloc[0, 1]).strip()):
        frame = frame.iloc[1:]
    if (miss := _first_missing(frame)) is not None:
        raise InputError(f"{path}: line {frame.index[miss[0]] + 1} has a missing field")

    ids = frame.iloc[:, 0].str.strip()
    raw = frame.iloc[:, 1].str.strip()
    bad = ~raw.isin(['0', '1'])
    if bad.any():
        row = bad.to_numpy().argmax()
        raise InputError(
            f"{path}: line {frame.index[row] + 1}: label '{raw.iloc[row]}' of sample '{ids.iloc[row]}' is not 0 or 1"
        )
    if ids.duplicated().any():
        raise InputError(f"{path}: duplicate sample id '{ids[ids.duplicated()].iloc[0]}'")
    return pd.Series(raw.astype(np.int8).to_numpy(), index=ids.to_numpy(), name='class')


def read_matrix(path: str | Path, labels_path: str | Path) -> ExpressionDataset:
    """Read a matrix and its labels; samples are matched by id, not by position."""
    path = Path(path)
    frame = _read_table(path)
    if frame.shape[0] < 2 or frame.shape[1] < 2:
        raise InputError(f"{path}: need a header row and at least one gene row with samples")
    if (miss := _first_missing(frame)) is not None:
        raise InputError(f"{path}: line {miss[0] + 1} has fewer fields than the header")

    header = frame.iloc[0].str.strip().tolist()
    sample_ids = header[1:]
    body = frame.iloc[1:]
    gene_ids = body.iloc[:, 0].str.strip().tolist()
    cells = body.iloc[:, 1:].to_numpy()

    try:
        values = cells.astype(np.float64)
    except ValueError:
        for (row, col), cell in np.ndenumerate(cells):
            try:
                float(cell)
            except ValueError:
                raise InputError(
                    f"{path}: non-numeric value '{cell}' at line {row + 2}, column {col + 2} "
                    f"(gene '{gene_ids[row]}', sample '{sample_ids[col]}')"
                ) from None
        raise

    labels = read_labels(labels_path)
    missing = [s for s in sample_ids if s not in labels.index]
    if missing:
        raise InputError(f"{labels_path}: no label for sample '{missing[0]}'")
    unknown = [s for s in labels.index if s not in set(sample_ids)]
    if unknown:
        raise InputError(f"{labels_path}: unknown sample id '{unknown[0]}'")

    try:
        data = ExpressionDataset(values, gene_ids, sample_ids, labels.loc[sample_ids].to_numpy())
    except InputError as e:
        raise InputError(f"{path}: {e}") from None
    log.info(f"Read {data.n_genes} genes x {data.n_samples} samples from {path.name}")
    return data


def write_matrix(data: ExpressionDataset, path: str | Path):
    frame = pd.DataFrame(data.values, index=pd.Index(data.gene_ids, name='gene_id'), columns=list(data.sample_ids))
    with atomic_write(path) as f:
        frame.to_csv(f, sep='\t', float_format=MATRIX_FLOAT_FORMAT, lineterminator='\n')


def write_labels(data: ExpressionDataset, path: str | Path):
    frame = pd.DataFrame(dict(sample_id=data.sample_ids, **{'class': data.class_labels}))
    with atomic_write(path) as f:
        frame.to_csv(f, sep='\t', index=False, lineterminator='\n')
