from pathlib import Path

import numpy as np
import pytest

from bgsa.model import ExpressionDataset, GeneSetCollection, McmcConfig, validate_and_bind
from bgsa.simgen import gen_illustrative


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def toy_dataset():
    """6 genes, 4 samples, labels (0, 0, 1, 1)."""
    values = np.array([
        [0.0, 2.0, 1.0, 3.0],
        [0.5, 0.1, 2.2, 1.9],
        [1.0, 1.2, 0.9, 1.1],
        [-0.3, 0.4, 0.2, -0.1],
        [2.0, 2.5, 4.0, 3.5],
        [0.0, 0.3, -0.2, 0.1],
    ])
    return ExpressionDataset(
        values,
        gene_ids=[f"g{i + 1}" for i in range(6)],
        sample_ids=['c1', 'c2', 't1', 't2'],
        class_labels=[0, 0, 1, 1],
    )


@pytest.fixture
def toy_sets():
    return GeneSetCollection([[0, 1, 2], [2, 3], [3, 4, 5]], ['setA', 'setB', 'setC'])


@pytest.fixture
def toy_problem(toy_dataset, toy_sets):
    return validate_and_bind(toy_dataset, toy_sets)


@pytest.fixture
def short_mcmc():
    return McmcConfig(n_iterations=60, burn_in=20, seed=11)


@pytest.fixture(scope='session')
def illustrative():
    return gen_illustrative(np.random.default_rng(7), seed=7)


@pytest.fixture
def toy_files(tmp_path: Path, toy_dataset):
    """Matrix, labels and GMT files for the toy dataset. Label rows are shuffled on purpose."""
    matrix = tmp_path / 'matrix.tsv'
    labels = tmp_path / 'labels.tsv'
    gmt = tmp_path / 'sets.gmt'

    rows = ['gene_id\t' + '\t'.join(toy_dataset.sample_ids)]
    for gene, values in zip(toy_dataset.gene_ids, toy_dataset.values):
        rows.append(gene + '\t' + '\t'.join(repr(float(v)) for v in values))
    matrix.write_text('\n'.join(rows) + '\n')
    labels.write_text('sample_id\tclass\nt2\t1\nc1\t0\nt1\t1\nc2\t0\n')
    gmt.write_text(
        'setA\tfirst\tg1\tg2\tg3\n'
        'setB\tsecond\tg3\tg4\n'
        'setC\tthird\tg4\tg5\tg6\n'
    )
    return dict(matrix=matrix, labels=labels, gmt=gmt, dir=tmp_path)
