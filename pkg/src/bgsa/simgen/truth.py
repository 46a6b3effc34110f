from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any, NamedTuple

import numpy as np
from numpy.typing import NDArray

from bgsa.exceptions import ParameterDomainError
from bgsa.model import ExpressionDataset, GeneSetCollection


class Scenario(StrEnum):
    ILLUSTRATIVE = 'illustrative'
    ALL_SHIFTED = 'all_shifted'
    EFRON_SHIFTED = 'efron_shifted'
    SIM1 = 'sim1'
    SIM2 = 'sim2'
    SIM3 = 'sim3'
    SIM4 = 'sim4'
    SIM5 = 'sim5'
    SIM6 = 'sim6'

    @classmethod
    def parse(cls, name: str) -> Scenario:
        key = name.strip().lower().replace('-', '_')
        try:
            return cls(key)
        except ValueError:
            raise ParameterDomainError(f"Unknown scenario '{name}'") from None

    @property
    def simulation_number(self) -> int | None:
        if self.value.startswith('sim'):
            return int(self.value[3:])
        return None


@dataclass
class SimulationTruth:
    """Ground truth of a generated dataset. Set and gene indices are 0-based."""
    scenario: Scenario
    positive_sets: tuple[int, ...]
    shifted_genes: dict[int, list[tuple[int, float]]]
    seed: int | None = None
    correlated_pairs: list[tuple[int, int, float]] = field(default_factory=list)
    copied_genes: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)

    def set_labels(self, n_sets: int) -> NDArray[np.bool_]:
        labels = np.zeros(n_sets, dtype=bool)
        labels[list(self.positive_sets)] = True
        return labels

    def n_shifted(self) -> int:
        return sum(len(v) for v in self.shifted_genes.values())

    def gene_shifts(self, n_genes: int) -> NDArray[np.float64]:
        """Total treatment shift applied to each gene."""
        total = np.zeros(n_genes)
        for entries in self.shifted_genes.values():
            for gene, shift in entries:
                total[gene] += shift
        return total

    def unshifted_values(self, data: ExpressionDataset) -> NDArray[np.float64]:
        """The expression matrix before any treatment shift."""
        treated = data.class_labels.astype(bool)
        values = data.values.copy()
        values[:, treated] -= self.gene_shifts(data.n_genes)[:, None]
        return values

    def to_dict(self) -> dict[str, Any]:
        return dict(
            scenario=str(self.scenario),
            seed=self.seed,
            positive_sets=list(self.positive_sets),
            shifted_genes={str(s): [[g, shift] for g, shift in entries] for s, entries in sorted(self.shifted_genes.items())},
            correlated_pairs=[list(p) for p in self.correlated_pairs],
            copied_genes=[[g, list(targets)] for g, targets in self.copied_genes],
        )

    @staticmethod
    def from_dict(raw: dict[str, Any]) -> SimulationTruth:
        return SimulationTruth(
            scenario=Scenario(raw['scenario']),
            positive_sets=tuple(raw['positive_sets']),
            shifted_genes={int(s): [(int(g), float(shift)) for g, shift in entries] for s, entries in raw['shifted_genes'].items()},
            seed=raw.get('seed'),
            correlated_pairs=[(int(i), int(j), float(r)) for i, j, r in raw.get('correlated_pairs', [])],
            copied_genes=[(int(g), tuple(targets)) for g, targets in raw.get('copied_genes', [])],
        )


class SimulatedData(NamedTuple):
    dataset: ExpressionDataset
    sets: GeneSetCollection
    truth: SimulationTruth


def gene_ids(n_genes: int) -> list[str]:
    return [f"gene{i + 1:04d}" for i in range(n_genes)]


def sample_ids(n_samples: int) -> list[str]:
    return [f"sample{i + 1:02d}" for i in range(n_samples)]


def set_names(n_sets: int) -> list[str]:
    return [f"set{i + 1:02d}" for i in range(n_sets)]
