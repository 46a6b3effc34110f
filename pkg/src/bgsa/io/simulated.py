from __future__ import annotations

from pathlib import Path

from bgsa.simgen import SimulatedData
from .gmt import parse_gmt, write_gmt
from .matrix import read_matrix, write_labels, write_matrix
from .truth import read_truth, write_truth

MATRIX = 'matrix.tsv'
LABELS = 'labels.tsv'
GMT = 'sets.gmt'
TRUTH = 'truth.json'


def write_simulated(simulated: SimulatedData, out_dir: str | Path) -> list[Path]:
    out_dir = Path(out_dir)
    paths = [out_dir / name for name in (MATRIX, LABELS, GMT, TRUTH)]
    write_matrix(simulated.dataset, paths[0])
    write_labels(simulated.dataset, paths[1])
    write_gmt(simulated.sets, simulated.dataset.gene_ids, paths[2], description=str(simulated.truth.scenario))
    write_truth(simulated.truth, paths[3])
    return paths


def read_simulated(directory: str | Path) -> SimulatedData:
    directory = Path(directory)
    dataset = read_matrix(directory / MATRIX, directory / LABELS)
    return SimulatedData(dataset, parse_gmt(directory / GMT, dataset), read_truth(directory / TRUTH))
