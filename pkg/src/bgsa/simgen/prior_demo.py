from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from bgsa.exceptions import ParameterDomainError
from bgsa.stats import ScaledInvChiSq, sinvchisq_sample

ETA_PRIOR = ScaledInvChiSq(1.0, 0.5)


@dataclass(frozen=True)
class PriorCorrelationDemo:
    """Correlations of |beta| for gene pairs sharing a set and for pairs from different sets."""
    r_within: NDArray[np.float64]
    r_between: NDArray[np.float64]


def _corr(a: NDArray[np.float64], b: NDArray[np.float64]) -> float:
    return float(np.clip(np.corrcoef(a, b)[0, 1], -1.0, 1.0))


def gen_prior_correlation_demo(rng: np.random.Generator, n_reps: int = 1000, n_draws: int = 100) -> PriorCorrelationDemo:
    """Per repetition, draw eta ~ Inv-chi2(1, 0.5) and then `n_draws` independent
    (tau_1, tau_2) ~ Inv-chi2(1, eta) with two genes in set 1 and one in set 2."""
    if n_reps < 1 or n_draws < 3:
        raise ParameterDomainError(f"Need n_reps >= 1 and n_draws >= 3, got {n_reps} and {n_draws}")
    within = np.empty(n_reps)
    between = np.empty(n_reps)
    for r in range(n_reps):
        eta = sinvchisq_sample(ETA_PRIOR, rng)
        tau = sinvchisq_sample(ScaledInvChiSq(1.0, eta), rng, size=(2, n_draws))
        sd_1, sd_2 = np.sqrt(tau)
        beta_1a = np.abs(rng.normal(0.0, sd_1))
        beta_1b = np.abs(rng.normal(0.0, sd_1))
        beta_2a = np.abs(rng.normal(0.0, sd_2))
        within[r] = _corr(beta_1a, beta_1b)
        between[r] = _corr(beta_1a, beta_2a)
    return PriorCorrelationDemo(within, between)
