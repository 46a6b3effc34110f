"""Full-conditional updates of one Gibbs sweep.

Each `update_*` draws fresh values for one parameter block given the current state
and returns them; `sweep` applies all of them in the fixed order
sigma^2 -> alpha -> beta -> tau^2 -> v -> lambda -> (nu, phi0^2, phi1^2).
"""
from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from bgsa.exceptions import InvalidStateError
from bgsa.model import BoundProblem, McmcConfig, ModelState, StandInPrior
from bgsa.stats import ScaledInvChiSq, SliceStep, sinvchisq_logpdf, sinvchisq_sample, slice_step


log = logging.getLogger(__name__)

SIGMA_SCALE_FLOOR = 1e-12


@dataclass
class SweepDiagnostics:
    sigma_floor_hits: int = 0
    slice_evaluations: dict[str, int] = field(default_factory=dict)

    def count_slice(self, name: str, step: SliceStep):
        self.slice_evaluations[name] = self.slice_evaluations.get(name, 0) + step.evaluations


def residuals(state: ModelState, problem: BoundProblem) -> NDArray[np.float64]:
    return problem.y - state.alpha[:, None] - state.beta[:, None] * problem.x[None, :]


def update_sigma_sq(
    state: ModelState,
    problem: BoundProblem,
    rng: np.random.Generator,
    stand_in: StandInPrior | None = None,
    diagnostics: SweepDiagnostics | None = None,
) -> NDArray[np.float64]:
    """sigma^2_sg | . ~ Inv-chi2(n, sum_i (y - alpha - beta x)^2 / n)"""
    n = problem.n_samples
    ssr = (residuals(state, problem) ** 2).sum(axis=1)

    if stand_in is None:
        dof = float(n)
        scale_sq = ssr / n
    else:
        dof = stand_in.sigma_dof + n
        scale_sq = (stand_in.sigma_dof * stand_in.sigma_scale_sq + ssr) / dof

    floored = scale_sq < SIGMA_SCALE_FLOOR
    if np.any(floored):
        n_floored = int(np.count_nonzero(floored))
        log.debug(f"Residual scale floored at {SIGMA_SCALE_FLOOR} for {n_floored} slots")
        if diagnostics is not None:
            diagnostics.sigma_floor_hits += n_floored
        scale_sq = np.maximum(scale_sq, SIGMA_SCALE_FLOOR)

    return sinvchisq_sample(ScaledInvChiSq(dof, scale_sq), rng)


def update_alpha(
    state: ModelState,
    problem: BoundProblem,
    rng: np.random.Generator,
    stand_in: StandInPrior | None = None,
) -> NDArray[np.float64]:
    """alpha_sg | . ~ N(sum_i (y - beta x) / n, sigma^2 / n)"""
    n = problem.n_samples
    total = (problem.y - state.beta[:, None] * problem.x[None, :]).sum(axis=1)

    if stand_in is None:
        mean = total / n
        var = state.sigma_sq / n
    else:
        precision = n / state.sigma_sq + 1 / stand_in.alpha_var
        mean = (total / state.sigma_sq + stand_in.alpha_mean / stand_in.alpha_var) / precision
        var = 1 / precision

    return mean + np.sqrt(var) * rng.standard_normal(problem.n_slots)


def update_beta(state: ModelState, problem: BoundProblem, rng: np.random.Generator) -> NDArray[np.float64]:
    """beta_sg | . ~ N(m, 1/p) with p = 1/tau^2_s + sum_i x_i / sigma^2 and m = sum_i (y - alpha) x_i / sigma^2 / p.

    x is binary, so sum_i x_i^2 = sum_i x_i.
    """
    if not np.all(state.tau_sq > 0):
        raise InvalidStateError(f"tau^2 must be positive in the beta update, got minimum {state.tau_sq.min()}")
    tau_sq = state.tau_sq[problem.slot_set]
    precision = 1 / tau_sq + problem.n_treatment / state.sigma_sq
    weighted = ((problem.y - state.alpha[:, None]) * problem.x[None, :]).sum(axis=1) / state.sigma_sq
    mean = weighted / precision
    return mean + rng.standard_normal(problem.n_slots) / np.sqrt(precision)


def tau_sq_conditional(state: ModelState, problem: BoundProblem) -> ScaledInvChiSq:
    """tau^2_s | . ~ Inv-chi2(nu + l_s, (nu * scale_s + sum_g beta_sg^2) / (nu + l_s)),
    scale_s = phi0^2, or phi0^2 + phi1^2 when v_s = 1."""
    beta_ss = problem.per_set_sum(state.beta ** 2)
    dof = state.nu + problem.set_sizes
    scale_sq = (state.nu * state.set_scale_sq() + beta_ss) / dof
    return ScaledInvChiSq(dof, scale_sq)


def update_tau_sq(state: ModelState, problem: BoundProblem, rng: np.random.Generator) -> NDArray[np.float64]:
    return sinvchisq_sample(tau_sq_conditional(state, problem), rng)


def prob_alternative(state: ModelState) -> NDArray[np.float64]:
    """P(v_s = 1 | tau^2_s, nu, phi0^2, phi1^2, lambda), evaluated in log space."""
    log_f0 = sinvchisq_logpdf(state.tau_sq, ScaledInvChiSq(state.nu, state.phi0_sq))
    log_f1 = sinvchisq_logpdf(state.tau_sq, ScaledInvChiSq(state.nu, state.phi0_sq + state.phi1_sq))
    with np.errstate(divide='ignore'):
        log_p1 = np.log(state.lambda_) + log_f1
        log_p0 = np.log1p(-state.lambda_) + log_f0
    log_norm = np.logaddexp(log_p0, log_p1)
    bad = ~np.isfinite(log_norm)
    if np.any(bad):
        raise InvalidStateError(
            f"Both mixture component densities vanish at tau^2 = {np.asarray(state.tau_sq)[bad][0]}"
        )
    return np.exp(log_p1 - log_norm)


def update_v(state: ModelState, rng: np.random.Generator) -> tuple[NDArray[np.int8], NDArray[np.float64]]:
    """Returns the new indicators and the Bernoulli probabilities they were drawn with."""
    p1 = prob_alternative(state)
    v = (rng.random(len(p1)) < p1).astype(np.int8)
    return v, p1


def update_lambda(state: ModelState, cfg: McmcConfig, rng: np.random.Generator) -> float:
    """lambda | v ~ Beta(a + sum v, b + K - sum v)"""
    k = len(state.v)
    n_alt = int(state.v.sum())
    return float(rng.beta(cfg.beta_prior_a + n_alt, cfg.beta_prior_b + k - n_alt))


def _on_log_axis(log_density: Callable[[float], float]) -> Callable[[float], float]:
    """Density of u = log(x) given the density of x > 0 (adds the Jacobian term u)."""
    def target(u: float) -> float:
        if u > 700 or u < -700:
            return -math.inf
        x = math.exp(u)
        value = log_density(x)
        if math.isnan(value):
            return -math.inf
        return float(value) + u
    return target


def hyperparam_log_conditional(name: str, state: ModelState, cfg: McmcConfig) -> Callable[[float], float]:
    """Log full conditional of `name` in {'nu', 'phi0_sq', 'phi1_sq'} on the log-transformed axis,
    up to a constant, holding every other parameter at its value in `state`."""
    tau_sq = state.tau_sq
    v = state.v.astype(bool)

    match name:
        case 'nu':
            scale_sq = state.set_scale_sq()

            def log_density(x: float) -> float:
                return cfg.nu_prior.logpdf(x) + float(np.sum(sinvchisq_logpdf(tau_sq, ScaledInvChiSq(x, scale_sq))))
        case 'phi0_sq':
            extra = v * state.phi1_sq

            def log_density(x: float) -> float:
                return cfg.phi0_prior.logpdf(x) + float(np.sum(
                    sinvchisq_logpdf(tau_sq, ScaledInvChiSq(state.nu, x + extra))
                ))
        case 'phi1_sq':
            # sets in the null component do not depend on phi1^2
            tau_alt = tau_sq[v]

            def log_density(x: float) -> float:
                value = cfg.phi1_prior.logpdf(x)
                if tau_alt.size:
                    value += float(np.sum(sinvchisq_logpdf(tau_alt, ScaledInvChiSq(state.nu, state.phi0_sq + x))))
                return value
        case _:
            raise ValueError(f"Unknown hyperparameter '{name}'")

    return _on_log_axis(log_density)


@dataclass(frozen=True)
class HyperparamUpdate:
    nu: float
    phi0_sq: float
    phi1_sq: float
    steps: dict[str, SliceStep]


def update_hyperparams(
    state: ModelState,
    cfg: McmcConfig,
    rng: np.random.Generator,
    diagnostics: SweepDiagnostics | None = None,
) -> HyperparamUpdate:
    """One slice step per free hyperparameter, in the order nu, phi0^2, phi1^2.

    Each step conditions on the values already updated in this call. The simple
    variant has a single scale phi0^2 and leaves phi1^2 untouched.
    """
    work = ModelState(
        alpha=state.alpha, beta=state.beta, sigma_sq=state.sigma_sq,
        tau_sq=state.tau_sq, v=state.v, lambda_=state.lambda_,
        nu=state.nu, phi0_sq=state.phi0_sq, phi1_sq=state.phi1_sq,
    )
    names = ['nu', 'phi0_sq'] + (['phi1_sq'] if cfg.is_mixture else [])
    fixed = {'nu': cfg.fixed_nu, 'phi0_sq': cfg.fixed_phi0_sq, 'phi1_sq': cfg.fixed_phi1_sq}

    steps: dict[str, SliceStep] = {}
    for name in names:
        if fixed[name] is not None:
            continue
        target = hyperparam_log_conditional(name, work, cfg)
        step = slice_step(target, math.log(getattr(work, name)), cfg.slice, rng)
        setattr(work, name, math.exp(step.x))
        steps[name] = step
        if diagnostics is not None:
            diagnostics.count_slice(name, step)

    return HyperparamUpdate(nu=work.nu, phi0_sq=work.phi0_sq, phi1_sq=work.phi1_sq, steps=steps)


def sweep(
    state: ModelState,
    problem: BoundProblem,
    cfg: McmcConfig,
    rng: np.random.Generator,
    diagnostics: SweepDiagnostics | None = None,
) -> NDArray[np.float64] | None:
    """Advances `state` in place by one full Gibbs sweep.

    Returns the Bernoulli probabilities P(v_s = 1 | .) used in this sweep (mixture variant), else None.
    """
    stand_in = cfg.stand_in_prior
    state.sigma_sq = update_sigma_sq(state, problem, rng, stand_in, diagnostics)
    state.alpha = update_alpha(state, problem, rng, stand_in)
    state.beta = update_beta(state, problem, rng)
    state.tau_sq = update_tau_sq(state, problem, rng)

    p_alt = None
    if cfg.is_mixture:
        state.v, p_alt = update_v(state, rng)
        state.lambda_ = update_lambda(state, cfg, rng)

    hyper = update_hyperparams(state, cfg, rng, diagnostics)
    state.nu, state.phi0_sq, state.phi1_sq = hyper.nu, hyper.phi0_sq, hyper.phi1_sq
    return p_alt
