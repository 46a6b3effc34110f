"""Observed data: the expression matrix with class labels, and the gene set collection.

Expression values are expected to be normalized already; nothing here rescales them.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from bgsa.exceptions import InputError

MIN_CLASS_SIZE = 2
MIN_SET_SIZE = 2


@dataclass(frozen=True, eq=False)
class ExpressionDataset:
    """G x n expression matrix. `class_labels[i]` is 1 for treatment and 0 for control."""
    values: NDArray[np.float64]
    gene_ids: tuple[str, ...]
    sample_ids: tuple[str, ...]
    class_labels: NDArray[np.int8]

    def __init__(
        self,
        values: ArrayLike,
        gene_ids: Sequence[str],
        sample_ids: Sequence[str],
        class_labels: ArrayLike,
    ):
        values = np.array(values, dtype=np.float64)
        labels = np.asarray(class_labels)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'gene_ids', tuple(str(g) for g in gene_ids))
        object.__setattr__(self, 'sample_ids', tuple(str(s) for s in sample_ids))

        if values.ndim != 2:
            raise InputError(f"Expression matrix must be two-dimensional, got shape {values.shape}")
        if not np.all(np.isin(labels, (0, 1))):
            raise InputError("Class labels must be 0 (control) or 1 (treatment)")
        object.__setattr__(self, 'class_labels', labels.astype(np.int8))
        self.values.setflags(write=False)
        self.class_labels.setflags(write=False)
        self._validate()

    def _validate(self):
        n_genes, n_samples = self.values.shape
        if len(self.gene_ids) != n_genes:
            raise InputError(f"{len(self.gene_ids)} gene ids for {n_genes} matrix rows")
        if len(self.sample_ids) != n_samples or len(self.class_labels) != n_samples:
            raise InputError(
                f"{len(self.sample_ids)} sample ids and {len(self.class_labels)} labels for {n_samples} matrix columns"
            )
        if len(set(self.gene_ids)) != n_genes:
            seen: set[str] = set()
            dup = next(g for g in self.gene_ids if g in seen or seen.add(g))
            raise InputError(f"Duplicate gene id '{dup}'")
        if len(set(self.sample_ids)) != n_samples:
            raise InputError("Duplicate sample ids")
        bad = np.argwhere(~np.isfinite(self.values))
        if bad.size:
            row, col = bad[0]
            raise InputError(
                f"Non-finite expression value for gene '{self.gene_ids[row]}', sample '{self.sample_ids[col]}'"
            )
        n_treatment = int(self.class_labels.sum())
        n_control = n_samples - n_treatment
        if min(n_treatment, n_control) < MIN_CLASS_SIZE:
            raise InputError(
                f"Each class needs at least {MIN_CLASS_SIZE} samples, got {n_control} control and {n_treatment} treatment"
            )

    @property
    def n_genes(self) -> int:
        return self.values.shape[0]

    @property
    def n_samples(self) -> int:
        return self.values.shape[1]

    @property
    def class_sizes(self) -> tuple[int, int]:
        """(control, treatment)"""
        n_treatment = int(self.class_labels.sum())
        return self.n_samples - n_treatment, n_treatment

    def gene_index(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.gene_ids)}

    def with_labels(self, class_labels: ArrayLike) -> ExpressionDataset:
        return ExpressionDataset(self.values, self.gene_ids, self.sample_ids, class_labels)


@dataclass(frozen=True, eq=False)
class GeneSetCollection:
    """K gene sets given as row indices into an `ExpressionDataset`.

    Sets may overlap. `dropped_sets` and `dropped_memberships` record what a loader discarded.
    """
    sets: tuple[NDArray[np.intp], ...]
    set_names: tuple[str, ...]
    dropped_sets: tuple[str, ...] = field(default=())
    dropped_memberships: int = 0

    def __init__(
        self,
        sets: Sequence[ArrayLike],
        set_names: Sequence[str] | None = None,
        dropped_sets: Sequence[str] = (),
        dropped_memberships: int = 0,
    ):
        arrays = tuple(np.asarray(s, dtype=np.intp).ravel() for s in sets)
        if set_names is None:
            set_names = [f"set_{i + 1}" for i in range(len(arrays))]
        object.__setattr__(self, 'sets', arrays)
        object.__setattr__(self, 'set_names', tuple(str(n) for n in set_names))
        object.__setattr__(self, 'dropped_sets', tuple(dropped_sets))
        object.__setattr__(self, 'dropped_memberships', int(dropped_memberships))
        for a in arrays:
            a.setflags(write=False)
        self._validate()

    def _validate(self):
        if len(self.sets) != len(self.set_names):
            raise InputError(f"{len(self.set_names)} names for {len(self.sets)} gene sets")
        if len(set(self.set_names)) != len(self.set_names):
            raise InputError("Duplicate gene set names")
        for name, members in zip(self.set_names, self.sets):
            if len(members) < MIN_SET_SIZE:
                raise InputError(f"Gene set '{name}' has {len(members)} genes; at least {MIN_SET_SIZE} are required")
            if len(np.unique(members)) != len(members):
                raise InputError(f"Gene set '{name}' lists a gene more than once")
            if np.any(members < 0):
                raise InputError(f"Gene set '{name}' contains a negative gene index")

    def __len__(self) -> int:
        return len(self.sets)

    @property
    def set_sizes(self) -> NDArray[np.intp]:
        return np.array([len(s) for s in self.sets], dtype=np.intp)

    def membership_counts(self, n_genes: int) -> NDArray[np.intp]:
        """Number of sets each gene belongs to."""
        return np.bincount(np.concatenate(self.sets), minlength=n_genes)
