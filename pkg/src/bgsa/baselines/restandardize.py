"""Restandardization: centering and scaling set statistics by their moments under random
reassignment of genes to sets of the same size."""
from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from bgsa.exceptions import ParameterDomainError
from bgsa.model import GeneSetCollection
from .statistics import SetStatistic, score_sets


log = logging.getLogger(__name__)

MIN_RANDOMIZATIONS = 100
SD_FLOOR = 1e-12


@dataclass(frozen=True)
class RandomizedSets:
    """For each distinct set size, an (R, size) matrix of random gene subsets."""
    subsets: dict[int, NDArray[np.intp]]
    n_randomizations: int


@dataclass(frozen=True)
class Restandardized:
    values: NDArray[np.float64]
    degenerate: NDArray[np.bool_]


def draw_random_subsets(
    n_genes: int,
    sizes: Iterable[int],
    n_randomizations: int,
    rng: np.random.Generator,
) -> RandomizedSets:
    if n_randomizations < MIN_RANDOMIZATIONS:
        raise ParameterDomainError(f"At least {MIN_RANDOMIZATIONS} randomizations are required, got {n_randomizations}")
    subsets: dict[int, NDArray[np.intp]] = {}
    for size in sorted(set(int(s) for s in sizes)):
        if size > n_genes:
            raise ParameterDomainError(f"Set size {size} exceeds the number of genes ({n_genes})")
        if size == n_genes:
            subsets[size] = np.tile(np.arange(n_genes), (n_randomizations, 1))
            continue
        keys = rng.random((n_randomizations, n_genes))
        subsets[size] = np.argpartition(keys, size, axis=1)[:, :size]
    return RandomizedSets(subsets=subsets, n_randomizations=n_randomizations)


def randomization_moments(
    z: NDArray[np.float64],
    randomized: RandomizedSets,
    method: SetStatistic,
) -> dict[int, tuple[float, float]]:
    """Mean and standard deviation of the statistic over the random subsets of each size."""
    moments = {}
    for size, idx in randomized.subsets.items():
        values = score_sets(z, idx, method)
        moments[size] = (float(values.mean()), float(values.std(ddof=1)))
    return moments


def apply_moments(
    raw_stats: NDArray[np.float64],
    set_sizes: NDArray[np.intp],
    moments: dict[int, tuple[float, float]],
) -> Restandardized:
    mean = np.array([moments[int(s)][0] for s in set_sizes])
    sd = np.array([moments[int(s)][1] for s in set_sizes])
    degenerate = ~(sd >= SD_FLOOR)
    return Restandardized(
        values=(raw_stats - mean) / np.where(degenerate, SD_FLOOR, sd),
        degenerate=degenerate,
    )


def restandardize(
    raw_stats: NDArray[np.float64],
    z: NDArray[np.float64],
    sets: GeneSetCollection,
    method: SetStatistic,
    n_randomizations: int,
    rng: np.random.Generator,
) -> Restandardized:
    """(T_s - mean*) / sd*, with moments from random gene subsets of the same size as set s."""
    randomized = draw_random_subsets(len(z), sets.set_sizes, n_randomizations, rng)
    result = apply_moments(np.asarray(raw_stats, dtype=np.float64), sets.set_sizes, randomization_moments(z, randomized, method))
    if result.degenerate.any():
        log.warning(f"Randomization variance is zero for {int(result.degenerate.sum())} sets; sd floored at {SD_FLOOR}")
    return result
