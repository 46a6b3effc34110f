from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike, NDArray
from scipy import stats

from bgsa.exceptions import ParameterDomainError
from bgsa.simgen import SimulationTruth


@dataclass(frozen=True, eq=False)
class MethodScores:
    """Per-set significance scores of one method; higher means more significant.

    `tiebreak` orders sets whose scores are equal; it never overrides `scores`.
    """
    method: str
    scores: NDArray[np.float64]
    orientation: str
    tiebreak: NDArray[np.float64] | None = None

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64)
        if scores.ndim != 1 or not np.all(np.isfinite(scores)):
            raise ParameterDomainError(f"{self.method}: scores must be a finite 1-d array")
        object.__setattr__(self, 'scores', scores)
        if self.tiebreak is not None:
            tiebreak = np.asarray(self.tiebreak, dtype=np.float64)
            if tiebreak.shape != scores.shape or not np.all(np.isfinite(tiebreak)):
                raise ParameterDomainError(f"{self.method}: tiebreak must be finite and match the scores")
            object.__setattr__(self, 'tiebreak', tiebreak)

    def __len__(self) -> int:
        return len(self.scores)

    def ranking_key(self) -> NDArray[np.float64]:
        """Integer-valued key, lexicographic in (score, tiebreak)."""
        if self.tiebreak is None:
            return self.scores
        primary = stats.rankdata(self.scores, method='dense')
        secondary = stats.rankdata(self.tiebreak, method='dense')
        return primary * (len(self) + 1.0) + secondary


def _split(scores: MethodScores | ArrayLike, truth: SimulationTruth | ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.bool_]]:
    key = scores.ranking_key() if isinstance(scores, MethodScores) else np.asarray(scores, dtype=np.float64)
    if isinstance(truth, SimulationTruth):
        labels = truth.set_labels(len(key))
    else:
        labels = np.asarray(truth, dtype=bool)
    if labels.shape != key.shape:
        raise ParameterDomainError(f"{len(key)} scores but {len(labels)} truth labels")
    return key, labels


def auc(scores: MethodScores | ArrayLike, truth: SimulationTruth | ArrayLike) -> float:
    """Area under the ROC curve in Mann-Whitney form; ties count one half."""
    key, labels = _split(scores, truth)
    n_pos = int(labels.sum())
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ParameterDomainError(f"AUC needs positive and negative sets, got {n_pos} and {n_neg}")
    ranks = stats.rankdata(key)
    u = ranks[labels].sum() - n_pos * (n_pos + 1) / 2
    return float(u / (n_pos * n_neg))


def roc_points(scores: MethodScores | ArrayLike, truth: SimulationTruth | ArrayLike) -> pd.DataFrame:
    """ROC curve at every distinct score threshold, from (0, 0) to (1, 1)."""
    key, labels = _split(scores, truth)
    n_pos = int(labels.sum())
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ParameterDomainError(f"ROC needs positive and negative sets, got {n_pos} and {n_neg}")

    order = np.argsort(-key, kind='stable')
    key, labels = key[order], labels[order]
    ends = np.flatnonzero(np.r_[key[1:] != key[:-1], True])
    tp = np.cumsum(labels)[ends]
    fp = np.cumsum(~labels)[ends]
    return pd.DataFrame(dict(
        threshold=np.r_[np.inf, key[ends]],
        fpr=np.r_[0.0, fp / n_neg],
        tpr=np.r_[0.0, tp / n_pos],
    ))
