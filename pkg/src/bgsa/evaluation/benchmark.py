from __future__ import annotations

import itertools
import logging
import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import dask
import numpy as np
import pandas as pd
from scipy import stats

from bgsa.exceptions import BenchmarkError, BgsaError, ParameterDomainError
from bgsa.model import McmcConfig
from bgsa import simgen
from bgsa.simgen import Scenario
from .methods import MethodSpec, run_method, score_adapter
from .roc import auc, roc_points


log = logging.getLogger(__name__)

MIN_REPLICATES = 2


@dataclass(eq=False)
class BenchmarkReport:
    """Per-replicate AUCs (`detail`) and ROC points (`roc`) for every scenario and method."""
    detail: pd.DataFrame
    roc: pd.DataFrame
    seed: int
    orientations: dict[str, str] = field(default_factory=dict)

    @property
    def summary(self) -> pd.DataFrame:
        """Mean AUC in percent with standard error sd / sqrt(n) per (scenario, method)."""
        grouped = self.detail.groupby(['scenario', 'method'], sort=False)['auc']
        out = grouped.agg(['mean', 'std', 'count']).reset_index()
        return pd.DataFrame(dict(
            scenario=out['scenario'],
            method=out['method'],
            mean_auc_pct=100 * out['mean'],
            se_pct=100 * out['std'] / np.sqrt(out['count']),
            n_replicates=out['count'],
        ))

    def auc_table(self) -> pd.DataFrame:
        """Scenario x method matrix of mean AUC (%)."""
        s = self.summary
        return s.pivot(index='scenario', columns='method', values='mean_auc_pct').loc[
            s['scenario'].unique(), s['method'].unique()
        ]


def paired_tests(report: BenchmarkReport) -> pd.DataFrame:
    """Paired t-test of per-replicate AUC for every method pair within a scenario."""
    rows = []
    for scenario, group in report.detail.groupby('scenario', sort=False):
        wide = group.pivot(index='replicate', columns='method', values='auc')
        methods = list(dict.fromkeys(group['method']))
        for a, b in itertools.combinations(methods, 2):
            diff = wide[a] - wide[b]
            if np.allclose(diff, diff.iloc[0]):
                t, p = np.nan, np.nan
            else:
                t, p = stats.ttest_rel(wide[a], wide[b])
            rows.append(dict(
                scenario=scenario,
                method_a=a,
                method_b=b,
                mean_diff_pct=100 * float(diff.mean()),
                t_stat=float(t),
                p_value=float(p),
            ))
    return pd.DataFrame(rows, columns=['scenario', 'method_a', 'method_b', 'mean_diff_pct', 't_stat', 'p_value'])


def _cell_seed(master: int, *key: int) -> int:
    return int(np.random.SeedSequence(master, spawn_key=key).generate_state(1, np.uint64)[0])


def _run_cell(
    scenario_idx: int,
    scenario: Scenario,
    replicate: int,
    methods: Sequence[MethodSpec],
    mcmc: McmcConfig,
    n_permutations: int,
    n_randomizations: int,
    seed: int,
    scenario_options: dict[str, Any],
) -> tuple[list[dict], list[pd.DataFrame]]:
    try:
        options = scenario_options if scenario.simulation_number is not None else {}
        simulated = simgen.generate(scenario, _cell_seed(seed, scenario_idx, replicate), **options)
    except BgsaError as e:
        raise BenchmarkError(str(scenario), replicate, 'simulate', e) from e

    rows, curves = [], []
    for method_idx, spec in enumerate(methods):
        try:
            output = run_method(
                spec, simulated,
                seed=_cell_seed(seed, scenario_idx, replicate, method_idx),
                mcmc=mcmc,
                n_permutations=n_permutations,
                n_randomizations=n_randomizations,
            )
            scores = score_adapter(spec, output)
            value = auc(scores, simulated.truth)
            curve = roc_points(scores, simulated.truth)
        except BgsaError as e:
            raise BenchmarkError(str(scenario), replicate, spec.name, e) from e
        rows.append(dict(scenario=str(scenario), replicate=replicate, method=spec.name, auc=value))
        curves.append(curve.assign(scenario=str(scenario), replicate=replicate, method=spec.name))
    log.debug(f"{scenario} replicate {replicate} done")
    return rows, curves


def run_benchmark(
    scenarios: Sequence[Scenario | str],
    methods: Sequence[MethodSpec | str],
    n_replicates: int,
    mcmc: McmcConfig,
    n_permutations: int,
    seed: int,
    n_randomizations: int = 200,
    threads: int = 1,
    scenario_options: dict[str, Any] | None = None,
) -> BenchmarkReport:
    """Generate `n_replicates` datasets per scenario and score every method against the truth.

    Cell (scenario i, replicate r) draws its data from a seed derived from (seed, i, r)
    and method m from (seed, i, r, m), so results do not depend on scheduling.
    """
    if n_replicates < MIN_REPLICATES:
        raise ParameterDomainError(f"n_replicates must be at least {MIN_REPLICATES}, got {n_replicates}")
    if not scenarios or not methods:
        raise ParameterDomainError("Benchmark needs at least one scenario and one method")
    scenarios = [Scenario.parse(s) if isinstance(s, str) else s for s in scenarios]
    methods = [MethodSpec.parse(m) if isinstance(m, str) else m for m in methods]
    scenario_options = scenario_options or {}

    log.info(
        f"Benchmark: {len(scenarios)} scenarios x {n_replicates} replicates x {len(methods)} methods"
    )
    _start = time.perf_counter()

    tasks = [
        dask.delayed(_run_cell)(
            i, scenario, r, methods, mcmc, n_permutations, n_randomizations, seed, scenario_options
        )
        for i, scenario in enumerate(scenarios)
        for r in range(n_replicates)
    ]
    scheduler = 'threads' if threads > 1 else 'synchronous'
    results = dask.compute(*tasks, scheduler=scheduler, num_workers=threads)

    _duration = round(time.perf_counter() - _start, 2)
    log.info(f"Benchmark took {_duration} seconds")

    rows = [row for cell_rows, _ in results for row in cell_rows]
    curves = [curve for _, cell_curves in results for curve in cell_curves]
    roc = pd.concat(curves, ignore_index=True)[['scenario', 'replicate', 'method', 'threshold', 'fpr', 'tpr']]
    return BenchmarkReport(
        detail=pd.DataFrame(rows, columns=['scenario', 'replicate', 'method', 'auc']),
        roc=roc,
        seed=seed,
        orientations={m.name: m.orientation for m in methods},
    )
