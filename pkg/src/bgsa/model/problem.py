from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from bgsa.exceptions import InputError
from .data import MIN_CLASS_SIZE, MIN_SET_SIZE, ExpressionDataset, GeneSetCollection


@dataclass(frozen=True, eq=False)
class BoundProblem:
    """Dataset and gene sets flattened into (set, gene) slots.

    Slots of one set are contiguous and ordered as listed in the collection.
    A gene in several sets owns one slot per membership.
    """
    y: NDArray[np.float64]          # (M, n)
    x: NDArray[np.float64]          # (n,)
    slot_set: NDArray[np.intp]      # (M,)
    slot_gene: NDArray[np.intp]     # (M,)
    set_sizes: NDArray[np.intp]     # (K,)
    set_names: tuple[str, ...]
    gene_ids: tuple[str, ...]
    sample_ids: tuple[str, ...]

    @property
    def n_slots(self) -> int:
        return self.y.shape[0]

    @property
    def n_samples(self) -> int:
        return self.y.shape[1]

    @property
    def n_sets(self) -> int:
        return len(self.set_sizes)

    @property
    def n_treatment(self) -> float:
        return float(self.x.sum())

    @property
    def slot_gene_ids(self) -> list[str]:
        return [self.gene_ids[g] for g in self.slot_gene]

    def per_set_sum(self, slot_values: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.bincount(self.slot_set, weights=slot_values, minlength=self.n_sets)


def validate_and_bind(data: ExpressionDataset, sets: GeneSetCollection) -> BoundProblem:
    n_control, n_treatment = data.class_sizes
    if min(n_control, n_treatment) < MIN_CLASS_SIZE:
        raise InputError(f"Each class needs at least {MIN_CLASS_SIZE} samples")
    if len(sets) == 0:
        raise InputError("No gene sets to analyse")

    for name, members in zip(sets.set_names, sets.sets):
        if len(members) < MIN_SET_SIZE:
            raise InputError(f"Gene set '{name}' has fewer than {MIN_SET_SIZE} genes")
        out_of_range = members[(members < 0) | (members >= data.n_genes)]
        if out_of_range.size:
            raise InputError(
                f"Gene set '{name}' references gene index {int(out_of_range[0])}, "
                f"but the dataset has {data.n_genes} genes"
            )

    slot_gene = np.concatenate(sets.sets).astype(np.intp)
    slot_set = np.repeat(np.arange(len(sets), dtype=np.intp), sets.set_sizes)

    y = data.values[slot_gene]  # fancy indexing copies, one row per membership
    y.setflags(write=False)
    x = data.class_labels.astype(np.float64)
    x.setflags(write=False)

    return BoundProblem(
        y=y,
        x=x,
        slot_set=slot_set,
        slot_gene=slot_gene,
        set_sizes=sets.set_sizes,
        set_names=sets.set_names,
        gene_ids=data.gene_ids,
        sample_ids=data.sample_ids,
    )
