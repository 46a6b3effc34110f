"""Random-partition simulations 1-6.

1: N(0,1) genes, N(0,1) shifts.
2: Gamma(a_g) genes with a_g ~ U(1, 3), N(0,1) shifts.
3: as 2 with shifts from 0.5 N(0, 0.25) + 0.5 N(0, 1).
4: as 3, plus a +2 shift on one gene in a third of the null sets.
5: as 2 with pairwise gene correlation through a Gaussian copula.
6: as 5, plus genes copied into extra sets.
"""
from __future__ import annotations

import logging

import numpy as np
from numpy.typing import NDArray
from scipy import special, stats

from bgsa.exceptions import ParameterDomainError
from bgsa.model import ExpressionDataset, GeneSetCollection
from .truth import Scenario, SimulatedData, SimulationTruth, gene_ids, sample_ids, set_names


log = logging.getLogger(__name__)

MIN_SET_SIZE = 5
SHIFT_PROBABILITY = 0.5
NULL_SHIFT = 2.0
COPY_RANGE = (10, 100)
COPY_TARGETS = (2, 4)
SIGNIFICANT_COPY_PROBABILITY = 0.05


def random_partition(n_genes: int, n_sets: int, rng: np.random.Generator) -> list[NDArray[np.intp]]:
    """Split the genes into `n_sets` disjoint sets of at least MIN_SET_SIZE genes each."""
    spare = n_genes - MIN_SET_SIZE * n_sets
    if spare < 0:
        raise ParameterDomainError(f"{n_genes} genes cannot fill {n_sets} sets of at least {MIN_SET_SIZE}")
    sizes = MIN_SET_SIZE + rng.multinomial(spare, np.full(n_sets, 1 / n_sets))
    order = rng.permutation(n_genes)
    return [np.sort(part) for part in np.split(order, np.cumsum(sizes)[:-1])]


def draw_shift(rng: np.random.Generator, mixture: bool) -> float:
    if mixture and rng.random() < 0.5:
        return float(rng.normal(0.0, 0.5))
    return float(rng.normal(0.0, 1.0))


def gamma_margins(latent: NDArray[np.float64], shape: NDArray[np.float64]) -> NDArray[np.float64]:
    """Map standard normal rows to Gamma(shape_g, 1) rows, preserving ranks."""
    a = shape[:, None]
    upper = stats.gamma.isf(special.ndtr(-latent), a)
    lower = stats.gamma.ppf(special.ndtr(latent), a)
    return np.where(latent > 0, upper, lower)


def couple_pairs(latent: NDArray[np.float64], n_pairs: int, rng: np.random.Generator) -> list[tuple[int, int, float]]:
    """Correlate random gene pairs in place: Z_j <- rho Z_i + sqrt(1 - rho^2) Z_j, rho ~ U(-1, 1)."""
    pairs = []
    for _ in range(n_pairs):
        i, j = rng.choice(len(latent), size=2, replace=False)
        rho = float(rng.uniform(-1.0, 1.0))
        latent[j] = rho * latent[i] + np.sqrt(1 - rho**2) * latent[j]
        pairs.append((int(i), int(j), rho))
    return pairs


def copy_genes(
    members: list[NDArray[np.intp]],
    significant: NDArray[np.intp],
    n_genes: int,
    rng: np.random.Generator,
) -> list[tuple[int, tuple[int, ...]]]:
    """Add randomly chosen genes to 2-4 extra sets each. Mostly non-significant genes are picked."""
    n_copies = int(rng.integers(COPY_RANGE[0], COPY_RANGE[1] + 1))
    others = np.setdiff1d(np.arange(n_genes), significant)
    copied = []
    for _ in range(n_copies):
        pool = significant if len(significant) and rng.random() < SIGNIFICANT_COPY_PROBABILITY else others
        gene = int(rng.choice(pool))
        candidates = [s for s, m in enumerate(members) if gene not in m]
        n_targets = min(int(rng.integers(COPY_TARGETS[0], COPY_TARGETS[1] + 1)), len(candidates))
        targets = tuple(sorted(int(s) for s in rng.choice(candidates, size=n_targets, replace=False)))
        for s in targets:
            members[s] = np.append(members[s], gene)
        copied.append((gene, targets))
    return copied


def gen_simulation(
    k: int,
    rng: np.random.Generator,
    *,
    n_genes: int = 1000,
    n_samples: int = 10,
    n_sets: int = 50,
    n_positive: int = 5,
    n_pairs: int | None = None,
    seed: int | None = None,
) -> SimulatedData:
    if k not in range(1, 7):
        raise ParameterDomainError(f"Simulation number must be in 1..6, got {k}")
    if n_samples < 4 or n_samples % 2:
        raise ParameterDomainError(f"n_samples must be even and at least 4, got {n_samples}")
    if not 0 <= n_positive <= n_sets:
        raise ParameterDomainError(f"n_positive must be in 0..{n_sets}, got {n_positive}")

    labels = np.r_[np.zeros(n_samples // 2, np.int8), np.ones(n_samples // 2, np.int8)]
    treated = labels.astype(bool)

    latent = rng.standard_normal((n_genes, n_samples))
    pairs: list[tuple[int, int, float]] = []
    if k >= 5:
        pairs = couple_pairs(latent, n_genes // 10 if n_pairs is None else n_pairs, rng)

    if k == 1:
        values = latent
    else:
        values = gamma_margins(latent, rng.uniform(1.0, 3.0, size=n_genes))

    members = random_partition(n_genes, n_sets, rng)

    shifted: dict[int, list[tuple[int, float]]] = {}
    mixture = k in (3, 4)
    for s in range(n_positive):
        genes = members[s][rng.random(len(members[s])) < SHIFT_PROBABILITY]
        if len(genes) == 0:
            genes = members[s][[rng.integers(len(members[s]))]]
        entries = [(int(g), draw_shift(rng, mixture)) for g in genes]
        for g, shift in entries:
            values[g, treated] += shift
        shifted[s] = entries

    if k == 4:
        n_null = n_sets - n_positive
        for s in np.sort(rng.choice(n_null, size=round(n_null / 3), replace=False)) + n_positive:
            g = int(rng.choice(members[s]))
            values[g, treated] += NULL_SHIFT
            shifted[int(s)] = [(g, NULL_SHIFT)]

    copied: list[tuple[int, tuple[int, ...]]] = []
    if k == 6:
        significant = np.array(sorted({g for s in range(n_positive) for g, _ in shifted.get(s, [])}), dtype=np.intp)
        copied = copy_genes(members, significant, n_genes, rng)

    log.debug(f"Simulation {k}: {n_genes} genes, {n_samples} samples, {sum(map(len, shifted.values()))} shifted genes")

    return SimulatedData(
        dataset=ExpressionDataset(values, gene_ids(n_genes), sample_ids(n_samples), labels),
        sets=GeneSetCollection(members, set_names(n_sets)),
        truth=SimulationTruth(
            scenario=Scenario(f"sim{k}"),
            positive_sets=tuple(range(n_positive)),
            shifted_genes=shifted,
            seed=seed,
            correlated_pairs=pairs,
            copied_genes=copied,
        ),
    )
