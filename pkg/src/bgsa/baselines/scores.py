from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from bgsa.exceptions import InputError
from bgsa.model import ExpressionDataset

# within-class variance at or below this fraction of the total variance counts as zero
DEGENERATE_VARIANCE_RATIO = 1e-12


@dataclass(frozen=True, eq=False)
class GeneScores:
    z: NDArray[np.float64]
    degenerate: NDArray[np.bool_]

    @property
    def n_degenerate(self) -> int:
        return int(self.degenerate.sum())


def class_tstats(values: NDArray[np.float64], labels: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.bool_]]:
    """Pooled-variance two-sample t statistics (treatment minus control) of every row of `values`.

    `labels` is one labelling (n,) or a batch (B, n); the result has shape (G,) or (B, G).
    Rows with zero pooled variance get t = 0 and are flagged.
    """
    labels = np.asarray(labels, dtype=np.float64)
    single = labels.ndim == 1
    labels = np.atleast_2d(labels)
    n = values.shape[1]
    n1 = labels.sum(axis=1)[:, None]
    n0 = n - n1
    if np.any(n1 < 1) or np.any(n0 < 1):
        raise InputError("Both classes need at least one sample for a t statistic")

    centered = values - values.mean(axis=1, keepdims=True)
    sq = centered ** 2
    total_ss = sq.sum(axis=1)[None, :]

    s1 = labels @ centered.T
    s0 = centered.sum(axis=1)[None, :] - s1
    q1 = labels @ sq.T
    mean1 = s1 / n1
    mean0 = s0 / n0

    within_ss = (q1 - n1 * mean1 ** 2) + (total_ss - q1 - n0 * mean0 ** 2)
    pooled_var = np.maximum(within_ss, 0) / (n - 2)
    degenerate = pooled_var <= DEGENERATE_VARIANCE_RATIO * total_ss / n

    with np.errstate(divide='ignore', invalid='ignore'):
        t = (mean1 - mean0) / np.sqrt(pooled_var * (1 / n1 + 1 / n0))
    t = np.where(degenerate, 0.0, t)

    if single:
        return t[0], degenerate[0]
    return t, degenerate


def gene_zscores(data: ExpressionDataset) -> GeneScores:
    z, degenerate = class_tstats(data.values, data.class_labels)
    return GeneScores(z=z, degenerate=degenerate)
