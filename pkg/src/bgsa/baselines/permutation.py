from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import dataclass

import dask
import numpy as np
import pandas as pd
from numpy.typing import NDArray

from bgsa.exceptions import ParameterDomainError
from bgsa.model import ExpressionDataset, GeneSetCollection
from .restandardize import (
    RandomizedSets,
    apply_moments,
    draw_random_subsets,
    randomization_moments,
)
from .scores import class_tstats
from .statistics import SetStatistic, set_statistics


log = logging.getLogger(__name__)

MAX_EXHAUSTIVE_SAMPLES = 12
BATCH_SIZE = 100
# relative slack when comparing permuted with observed statistics
TIE_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class BaselineResult:
    method: SetStatistic
    set_names: tuple[str, ...]
    set_sizes: NDArray[np.intp]
    raw_stat: NDArray[np.float64]
    restd_stat: NDArray[np.float64] | None
    perm_pvalue: NDArray[np.float64]
    n_permutations: int
    n_randomizations: int
    exhaustive: bool = False

    @property
    def restandardized(self) -> bool:
        return self.restd_stat is not None

    @property
    def effective_stat(self) -> NDArray[np.float64]:
        """The statistic the p-values were computed from."""
        return self.restd_stat if self.restd_stat is not None else self.raw_stat

    def to_frame(self) -> pd.DataFrame:
        df = pd.DataFrame(dict(
            set_name=list(self.set_names),
            n_genes=self.set_sizes,
            raw_stat=self.raw_stat,
        ))
        if self.restd_stat is not None:
            df['restd_stat'] = self.restd_stat
        df['perm_pvalue'] = self.perm_pvalue
        return df


def _set_scores(
    z: NDArray[np.float64],
    sets: GeneSetCollection,
    method: SetStatistic,
    randomized: RandomizedSets | None,
) -> tuple[NDArray[np.float64], NDArray[np.float64] | None]:
    raw = set_statistics(z, sets, method)
    if randomized is None:
        return raw, None
    moments = randomization_moments(z, randomized, method)
    return raw, apply_moments(raw, sets.set_sizes, moments).values


def _exceedances(
    values: NDArray[np.float64],
    labellings: NDArray[np.float64],
    sets: GeneSetCollection,
    method: SetStatistic,
    randomized: RandomizedSets | None,
    observed: NDArray[np.float64],
) -> NDArray[np.int64]:
    """Per set, how many of `labellings` give a statistic at least as extreme as `observed`."""
    z_batch, _ = class_tstats(values, labellings)
    counts = np.zeros(len(sets), dtype=np.int64)
    threshold = np.abs(observed) if method.signed else observed
    threshold = threshold - TIE_TOLERANCE * np.maximum(np.abs(threshold), 1.0)
    for z in z_batch:
        raw, restd = _set_scores(z, sets, method, randomized)
        stat = restd if restd is not None else raw
        if method.signed:
            stat = np.abs(stat)
        counts += stat >= threshold
    return counts


def _random_labellings(
    labels: NDArray[np.int8],
    master_seed: int,
    start: int,
    stop: int,
) -> NDArray[np.float64]:
    """Permutation b is drawn from its own stream seeded by (master_seed, b)."""
    out = np.empty((stop - start, len(labels)))
    for row, b in enumerate(range(start, stop)):
        rng = np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(b,)))
        out[row] = rng.permutation(labels)
    return out


def _all_labellings(n: int, n_treatment: int) -> NDArray[np.float64]:
    combos = list(itertools.combinations(range(n), n_treatment))
    out = np.zeros((len(combos), n))
    for row, positions in enumerate(combos):
        out[row, list(positions)] = 1
    return out


def permutation_pvalues(
    data: ExpressionDataset,
    sets: GeneSetCollection,
    method: SetStatistic,
    n_permutations: int,
    restandardized: bool,
    rng: np.random.Generator,
    n_randomizations: int = 200,
    exhaustive: bool = False,
    threads: int = 1,
) -> BaselineResult:
    """Label-permutation p-values of a set statistic.

    Random mode: p = (1 + #{b: T_b as or more extreme}) / (B + 1), with class sizes preserved.
    Exhaustive mode (n <= 12): every distinct labelling, the observed one included,
    and p = #{as or more extreme} / #labellings.
    """
    method = SetStatistic(method)
    n = data.n_samples
    n_control, n_treatment = data.class_sizes
    n_distinct = math.comb(n, n_treatment)

    if exhaustive:
        if n > MAX_EXHAUSTIVE_SAMPLES:
            raise ParameterDomainError(
                f"Exhaustive enumeration is limited to {MAX_EXHAUSTIVE_SAMPLES} samples, got {n}"
            )
    else:
        if n_permutations < 1:
            raise ParameterDomainError(f"n_permutations must be positive, got {n_permutations}")
        if n_permutations > n_distinct - 1:
            raise ParameterDomainError(
                f"Only {n_distinct} distinct labellings exist for {n_control} control and {n_treatment} "
                f"treatment samples, fewer than the {n_permutations} permutations requested; "
                "use exhaustive enumeration instead"
            )

    randomized = (
        draw_random_subsets(data.n_genes, sets.set_sizes, n_randomizations, rng)
        if restandardized else None
    )
    master_seed = int(rng.integers(0, 2**63))

    z_obs, degenerate = class_tstats(data.values, data.class_labels)
    if degenerate.any():
        log.warning(f"{int(degenerate.sum())} genes have zero pooled variance; their t statistic is set to 0")
    raw, restd = _set_scores(z_obs, sets, method, randomized)
    observed = restd if restd is not None else raw

    if exhaustive:
        all_labellings = _all_labellings(n, n_treatment)
        batches = [all_labellings[i:i + BATCH_SIZE] for i in range(0, len(all_labellings), BATCH_SIZE)]
        make_batch = None
        n_total = len(all_labellings)
    else:
        batches = [(i, min(i + BATCH_SIZE, n_permutations)) for i in range(0, n_permutations, BATCH_SIZE)]
        make_batch = _random_labellings
        n_total = n_permutations

    def run_batch(batch) -> NDArray[np.int64]:
        labellings = batch if make_batch is None else make_batch(data.class_labels, master_seed, *batch)
        return _exceedances(data.values, labellings, sets, method, randomized, observed)

    log.info(
        f"Permutation test ({method.label}{', restandardized' if restandardized else ''}): "
        f"{n_total} {'labellings' if exhaustive else 'permutations'}, {len(sets)} sets"
    )
    _start = time.perf_counter()

    tasks = [dask.delayed(run_batch)(batch) for batch in batches]
    scheduler = 'threads' if threads > 1 else 'synchronous'
    counts = sum(dask.compute(*tasks, scheduler=scheduler, num_workers=threads))

    _duration = round(time.perf_counter() - _start, 2)
    log.info(f"Permutation test took {_duration} seconds")

    if exhaustive:
        pvalues = counts / n_total
    else:
        pvalues = (1 + counts) / (n_total + 1)

    return BaselineResult(
        method=method,
        set_names=sets.set_names,
        set_sizes=sets.set_sizes,
        raw_stat=raw,
        restd_stat=restd,
        perm_pvalue=np.asarray(pvalues, dtype=np.float64),
        n_permutations=n_total,
        n_randomizations=randomized.n_randomizations if randomized is not None else 0,
        exhaustive=exhaustive,
    )
