"""Block designs: consecutive non-overlapping blocks of genes form the sets, and fixed
numbers of genes per set are shifted in the treatment group."""
from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from bgsa.model import ExpressionDataset, GeneSetCollection
from .truth import Scenario, SimulatedData, SimulationTruth, gene_ids, sample_ids, set_names

ILLUSTRATIVE_SHIFTED_COUNTS = (20, 10, 5, 2)


def _block_design(
    *,
    scenario: Scenario,
    n_genes: int,
    n_control: int,
    n_treatment: int,
    block_size: int,
    shifted_counts: Sequence[int],
    shift: float,
    positive_sets: Sequence[int],
    rng: np.random.Generator,
    seed: int | None,
) -> SimulatedData:
    n_samples = n_control + n_treatment
    n_sets = n_genes // block_size
    values = rng.standard_normal((n_genes, n_samples))
    labels = np.r_[np.zeros(n_control, np.int8), np.ones(n_treatment, np.int8)]
    treated = labels.astype(bool)

    members = [np.arange(s * block_size, (s + 1) * block_size) for s in range(n_sets)]
    shifted: dict[int, list[tuple[int, float]]] = {}
    for s, count in enumerate(shifted_counts):
        if count == 0:
            continue
        genes = members[s][:count]
        values[np.ix_(genes, treated)] += shift
        shifted[s] = [(int(g), float(shift)) for g in genes]

    return SimulatedData(
        dataset=ExpressionDataset(values, gene_ids(n_genes), sample_ids(n_samples), labels),
        sets=GeneSetCollection(members, set_names(n_sets)),
        truth=SimulationTruth(
            scenario=scenario,
            positive_sets=tuple(positive_sets),
            shifted_genes=shifted,
            seed=seed,
        ),
    )


def gen_illustrative(rng: np.random.Generator, shift: float = 1.0, seed: int | None = None) -> SimulatedData:
    """1000 N(0,1) genes, 15 control + 15 treatment samples, 50 blocks of 20;
    the first 20, 10, 5 and 2 genes of sets 1-4 are shifted by `shift`."""
    return _block_design(
        scenario=Scenario.ILLUSTRATIVE,
        n_genes=1000, n_control=15, n_treatment=15, block_size=20,
        shifted_counts=ILLUSTRATIVE_SHIFTED_COUNTS,
        shift=shift,
        positive_sets=range(len(ILLUSTRATIVE_SHIFTED_COUNTS)),
        rng=rng, seed=seed,
    )


def gen_all_shifted(rng: np.random.Generator, seed: int | None = None) -> SimulatedData:
    """Illustrative frame with half of the genes of every set shifted by 1: no set stands out."""
    return _block_design(
        scenario=Scenario.ALL_SHIFTED,
        n_genes=1000, n_control=15, n_treatment=15, block_size=20,
        shifted_counts=[10] * 50,
        shift=1.0,
        positive_sets=(),
        rng=rng, seed=seed,
    )


def gen_efron_shifted(rng: np.random.Generator, seed: int | None = None) -> SimulatedData:
    """1000 genes, 25 + 25 samples, 50 blocks of 20; the first 10 genes of every set shifted by 2.5.

    Every set looks significant against label permutations alone; restandardization should remove that.
    """
    return _block_design(
        scenario=Scenario.EFRON_SHIFTED,
        n_genes=1000, n_control=25, n_treatment=25, block_size=20,
        shifted_counts=[10] * 50,
        shift=2.5,
        positive_sets=(),
        rng=rng, seed=seed,
    )
