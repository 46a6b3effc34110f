from __future__ import annotations

import logging
from collections.abc import Sequence
from pathlib import Path

from bgsa.exceptions import InputError
from bgsa.model import MIN_SET_SIZE, ExpressionDataset, GeneSetCollection
from ._atomic import atomic_write


log = logging.getLogger(__name__)


def parse_gmt(path: str | Path, dataset: ExpressionDataset) -> GeneSetCollection:
    """Read `name<TAB>description<TAB>gene...` lines and map the genes onto `dataset`.

    Genes missing from the dataset are dropped, as are sets left with fewer than
    MIN_SET_SIZE genes. Repeated genes within a line count once.
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding='utf-8').splitlines()
    except FileNotFoundError:
        raise InputError(f"{path}: file not found") from None
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"{path}: {e}") from None

    index = dataset.gene_index()
    names: list[str] = []
    members: list[list[int]] = []
    dropped_sets: list[str] = []
    dropped_memberships = 0
    n_lines = 0

    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        n_lines += 1
        fields = line.rstrip('\r').split('\t')
        if len(fields) < 3:
            raise InputError(f"{path}: line {lineno} has {len(fields)} fields; a set needs a name, a description and genes")
        name = fields[0].strip()
        if name in names or name in dropped_sets:
            raise InputError(f"{path}: line {lineno} repeats gene set name '{name}'")

        genes = list(dict.fromkeys(g.strip() for g in fields[2:] if g.strip()))
        mapped = [index[g] for g in genes if g in index]
        dropped_memberships += len(genes) - len(mapped)
        if len(mapped) < MIN_SET_SIZE:
            dropped_sets.append(name)
            continue
        names.append(name)
        members.append(mapped)

    if n_lines == 0:
        raise InputError(f"{path}: file contains no gene sets")
    if dropped_memberships:
        log.warning(f"{dropped_memberships} gene memberships refer to genes absent from the matrix and were dropped")
    if dropped_sets:
        log.warning(f"{len(dropped_sets)} gene sets have fewer than {MIN_SET_SIZE} mapped genes and were dropped")
    if not names:
        raise InputError(f"{path}: no gene set has {MIN_SET_SIZE} or more genes present in the matrix")

    log.info(f"Loaded {len(names)} of {n_lines} gene sets from {path.name}")
    return GeneSetCollection(members, names, dropped_sets=dropped_sets, dropped_memberships=dropped_memberships)


def write_gmt(sets: GeneSetCollection, gene_ids: Sequence[str], path: str | Path, description: str = 'na'):
    with atomic_write(path) as f:
        for name, members in zip(sets.set_names, sets.sets):
            f.write('\t'.join([name, description, *(gene_ids[g] for g in members)]) + '\n')
