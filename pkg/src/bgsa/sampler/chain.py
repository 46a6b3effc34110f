from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import xarray as xr

from bgsa.exceptions import BgsaError, ChainError
from bgsa.model import BoundProblem, McmcConfig, init_state
from .updates import SweepDiagnostics, sweep


log = logging.getLogger(__name__)


@dataclass
class ChainTrace:
    """Retained post-burn-in draws.

    `draws` has dimensions `draw`, `set` and `slot` with variables
    tau_sq(draw, set), beta(draw, slot), nu / phi0_sq / phi1_sq / lambda (draw)
    and, for the mixture variant, v(draw, set) and p_alt(draw, set).
    """
    draws: xr.Dataset
    seed: int
    variant: str
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def n_retained(self) -> int:
        return self.draws.sizes['draw']

    @property
    def is_mixture(self) -> bool:
        return 'v' in self.draws


def run_chain(problem: BoundProblem, cfg: McmcConfig) -> ChainTrace:
    """Runs one chain. The result is a pure function of `problem` and `cfg`."""
    rng = np.random.default_rng(cfg.seed)
    state = init_state(problem, cfg, rng)
    state.validate(problem)

    n_keep = cfg.n_retained
    k, m = problem.n_sets, problem.n_slots
    tau_sq = np.empty((n_keep, k))
    beta = np.empty((n_keep, m))
    hyper = {name: np.empty(n_keep) for name in ('nu', 'phi0_sq', 'phi1_sq', 'lambda')}
    if cfg.is_mixture:
        v = np.empty((n_keep, k), dtype=np.int8)
        p_alt = np.empty((n_keep, k))

    diagnostics = SweepDiagnostics()
    report_every = max(cfg.n_iterations // 10, 1)

    log.info(
        f"Running {cfg.model_variant} chain: {cfg.n_iterations} iterations, {cfg.burn_in} burn-in, "
        f"{k} sets, {m} slots, seed {cfg.seed}"
    )
    _start = time.perf_counter()

    for it in range(cfg.n_iterations):
        try:
            p = sweep(state, problem, cfg, rng, diagnostics)
        except BgsaError as e:
            raise ChainError(it, e) from e

        j = it - cfg.burn_in
        if j >= 0:
            tau_sq[j] = state.tau_sq
            beta[j] = state.beta
            hyper['nu'][j] = state.nu
            hyper['phi0_sq'][j] = state.phi0_sq
            hyper['phi1_sq'][j] = state.phi1_sq
            hyper['lambda'][j] = state.lambda_
            if cfg.is_mixture:
                v[j] = state.v
                p_alt[j] = p

        if (it + 1) % report_every == 0:
            log.info(f"  iteration {it + 1}/{cfg.n_iterations}")

    _duration = round(time.perf_counter() - _start, 2)
    log.info(f"Chain finished in {_duration} seconds")

    data_vars: dict[str, Any] = {
        'tau_sq': (('draw', 'set'), tau_sq),
        'beta': (('draw', 'slot'), beta),
        **{name: ('draw', values) for name, values in hyper.items()},
    }
    if cfg.is_mixture:
        data_vars['v'] = (('draw', 'set'), v)
        data_vars['p_alt'] = (('draw', 'set'), p_alt)

    draws = xr.Dataset(
        data_vars=data_vars,
        coords=dict(
            draw=np.arange(cfg.burn_in, cfg.n_iterations),
            set=list(problem.set_names),
            slot=np.arange(m),
            slot_set=('slot', [problem.set_names[s] for s in problem.slot_set]),
            slot_gene=('slot', problem.slot_gene_ids),
        ),
    )

    return ChainTrace(
        draws=draws,
        seed=cfg.seed,
        variant=str(cfg.model_variant),
        diagnostics=dict(
            sigma_floor_hits=diagnostics.sigma_floor_hits,
            slice_evaluations=dict(diagnostics.slice_evaluations),
        ),
    )
