from __future__ import annotations

import json
import logging
from functools import singledispatch
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from bgsa.baselines import BaselineResult
from bgsa.evaluation import BenchmarkReport, paired_tests
from bgsa.sampler import ChainTrace, PosteriorSummary
from ._atomic import atomic_write


log = logging.getLogger(__name__)

REPORT_FLOAT_FORMAT = '%.4g'
SET_TABLE = 'sets.tsv'
GENE_TABLE = 'genes.tsv'
TRACE_TABLE = 'trace.tsv'
METADATA = 'run.json'


def write_table(frame: pd.DataFrame, path: Path, float_format: str = REPORT_FLOAT_FORMAT) -> Path:
    with atomic_write(path) as f:
        frame.to_csv(f, sep='\t', index=False, float_format=float_format, lineterminator='\n')
    return path


def write_json(payload: dict[str, Any], path: Path) -> Path:
    with atomic_write(path) as f:
        json.dump(payload, f, indent=2, default=_json_default)
        f.write('\n')
    return path


def _json_default(obj: Any) -> Any:
    match obj:
        case Path():
            return str(obj)
        case np.integer():
            return int(obj)
        case np.floating():
            return float(obj)
        case np.ndarray():
            return obj.tolist()
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def set_table(summary: PosteriorSummary, cutoff: float, only_flagged: bool = False) -> pd.DataFrame:
    """Sets ordered by P(v=0|D) ascending, then E[tau^2|D] descending."""
    sets = summary.sets.assign(flagged=summary.sets['prob_null'] <= cutoff)
    sets = sets.sort_values(
        ['prob_null', 'mean_tau_sq'], ascending=[True, False], kind='mergesort', na_position='last'
    ).reset_index(drop=True)
    if only_flagged:
        sets = sets[sets['flagged']].reset_index(drop=True)
    return sets[['set_name', 'n_genes', 'mean_tau_sq', 'prob_null', 'flagged']]


@singledispatch
def write_results(result, out_dir: str | Path, **kwargs) -> list[Path]:
    raise TypeError(f"No writer for {type(result).__name__}")


@write_results.register
def _(result: PosteriorSummary, out_dir: str | Path, *, cutoff: float = 0.1, only_flagged: bool = False) -> list[Path]:
    out_dir = Path(out_dir)
    paths = [
        write_table(set_table(result, cutoff, only_flagged), out_dir / SET_TABLE),
        write_table(result.genes, out_dir / GENE_TABLE),
    ]
    n_flagged = int((result.sets['prob_null'] <= cutoff).sum())
    log.info(f"{n_flagged} of {len(result.sets)} sets have P(v=0|D) <= {cutoff}")
    return paths


@write_results.register
def _(result: BaselineResult, out_dir: str | Path) -> list[Path]:
    frame = result.to_frame()
    stat = result.effective_stat
    frame['_order'] = np.abs(stat) if result.method.signed else stat
    frame = (
        frame.sort_values(['perm_pvalue', '_order'], ascending=[True, False], kind='mergesort')
        .drop(columns='_order')
        .reset_index(drop=True)
    )
    suffix = '_restd' if result.restandardized else ''
    return [write_table(frame, Path(out_dir) / f"baseline_{result.method}{suffix}.tsv")]


@write_results.register
def _(result: BenchmarkReport, out_dir: str | Path) -> list[Path]:
    out_dir = Path(out_dir)
    detail = dict(
        seed=result.seed,
        orientations=result.orientations,
        replicates=result.detail.to_dict(orient='records'),
    )
    return [
        write_table(result.summary, out_dir / 'benchmark.tsv'),
        write_table(paired_tests(result), out_dir / 'paired_tests.tsv'),
        write_table(result.roc, out_dir / 'roc_points.tsv', float_format='%.6g'),
        write_json(detail, out_dir / 'benchmark_detail.json'),
    ]


def write_trace(trace: ChainTrace, path: str | Path) -> Path:
    """Hyperparameter traces, one row per retained draw."""
    names = [n for n in ('nu', 'phi0_sq', 'phi1_sq', 'lambda') if n in trace.draws]
    frame = trace.draws[names].to_dataframe().reset_index()
    return write_table(frame, Path(path), float_format='%.6g')


def write_metadata(path: str | Path, config: dict[str, Any], meta: dict[str, Any]) -> Path:
    """Run record: the raw config sections plus a `meta` section. Loading it as a config reproduces the run."""
    return write_json({**config, 'meta': meta}, Path(path))
