"""Parameter state of the hierarchical model and the chain settings.

    y_sgi | alpha, beta, sigma^2   ~ N(alpha_sg + beta_sg x_i, sigma^2_sg)
    beta_sg | tau^2_s              ~ N(0, tau^2_s)
    tau^2_s | v_s, nu, phi^2       ~ Inv-chi2(nu, phi0^2 + v_s phi1^2)     (simple variant: v_s = 0)
    v_s | lambda                   ~ Bernoulli(lambda)
    lambda                         ~ Beta(a, b)
    nu, phi0^2, phi1^2             ~ Gamma(shape, rate), Exponential(1) by default
    p(alpha, sigma^2)              ∝ 1 / sigma^2

The improper prior on (alpha, sigma^2) is the flat-location, zero-dof limit of
alpha ~ N(m0, v0), sigma^2 ~ Inv-chi2(xi0, s0^2). `StandInPrior` makes that prior proper,
which forward simulation (e.g. joint-distribution tests) needs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import StrEnum

import numpy as np
from numpy.typing import NDArray

from bgsa.exceptions import InvalidStateError, ParameterDomainError
from bgsa.stats import SliceConfig
from .problem import BoundProblem


log = logging.getLogger(__name__)

SIGMA_SQ_INIT_FLOOR = 1e-8


class ModelVariant(StrEnum):
    SIMPLE = 'simple'
    MIXTURE = 'mixture'


@dataclass(frozen=True)
class GammaPrior:
    """Gamma(shape, rate) prior on a positive hyperparameter."""
    shape: float = 1.0
    rate: float = 1.0

    def __post_init__(self):
        if not (self.shape > 0 and self.rate > 0):
            raise ParameterDomainError(f"Gamma prior needs positive shape and rate, got {self.shape}, {self.rate}")

    def logpdf(self, x: float) -> float:
        """Unnormalized."""
        return (self.shape - 1) * np.log(x) - self.rate * x

    def sample(self, rng: np.random.Generator) -> float:
        return float(rng.gamma(self.shape, 1 / self.rate))


@dataclass(frozen=True)
class StandInPrior:
    """Proper conjugate prior alpha ~ N(alpha_mean, alpha_var), sigma^2 ~ Inv-chi2(sigma_dof, sigma_scale_sq)."""
    alpha_mean: float = 0.0
    alpha_var: float = 100.0
    sigma_dof: float = 2.0
    sigma_scale_sq: float = 1.0


@dataclass(frozen=True)
class McmcConfig:
    n_iterations: int
    burn_in: int
    seed: int
    model_variant: ModelVariant = ModelVariant.MIXTURE
    beta_prior_a: float = 1.0
    beta_prior_b: float = 1.0
    slice: SliceConfig = field(default_factory=SliceConfig)
    rao_blackwell: bool = False
    nu_prior: GammaPrior = field(default_factory=GammaPrior)
    phi0_prior: GammaPrior = field(default_factory=GammaPrior)
    phi1_prior: GammaPrior = field(default_factory=GammaPrior)
    fixed_nu: float | None = None
    fixed_phi0_sq: float | None = None
    fixed_phi1_sq: float | None = None
    stand_in_prior: StandInPrior | None = None

    def __post_init__(self):
        object.__setattr__(self, 'model_variant', ModelVariant(self.model_variant))
        if self.n_iterations < 1:
            raise ParameterDomainError(f"n_iterations must be positive, got {self.n_iterations}")
        if self.burn_in < 0:
            raise ParameterDomainError(f"burn_in must be non-negative, got {self.burn_in}")
        if not self.burn_in < self.n_iterations:
            raise ParameterDomainError(
                f"burn_in ({self.burn_in}) must be smaller than n_iterations ({self.n_iterations})"
            )
        if not 0 <= self.seed < 2**64:
            raise ParameterDomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not (self.beta_prior_a > 0 and self.beta_prior_b > 0):
            raise ParameterDomainError("Beta prior parameters must be positive")
        for name in ('fixed_nu', 'fixed_phi0_sq', 'fixed_phi1_sq'):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ParameterDomainError(f"{name} must be positive, got {value}")

    @property
    def n_retained(self) -> int:
        return self.n_iterations - self.burn_in

    @property
    def is_mixture(self) -> bool:
        return self.model_variant is ModelVariant.MIXTURE

    def with_seed(self, seed: int) -> McmcConfig:
        return replace(self, seed=seed)


@dataclass
class ModelState:
    """All model parameters at one MCMC step. Slot arrays follow `BoundProblem` order."""
    alpha: NDArray[np.float64]
    beta: NDArray[np.float64]
    sigma_sq: NDArray[np.float64]
    tau_sq: NDArray[np.float64]
    v: NDArray[np.int8]
    lambda_: float
    nu: float
    phi0_sq: float
    phi1_sq: float

    def copy(self) -> ModelState:
        return ModelState(
            alpha=self.alpha.copy(),
            beta=self.beta.copy(),
            sigma_sq=self.sigma_sq.copy(),
            tau_sq=self.tau_sq.copy(),
            v=self.v.copy(),
            lambda_=self.lambda_,
            nu=self.nu,
            phi0_sq=self.phi0_sq,
            phi1_sq=self.phi1_sq,
        )

    def set_scale_sq(self) -> NDArray[np.float64]:
        """Scale of each set's Inv-chi2 prior: phi0^2, or phi0^2 + phi1^2 in the alternative component."""
        return self.phi0_sq + self.v * self.phi1_sq

    def validate(self, problem: BoundProblem | None = None):
        for name in ('sigma_sq', 'tau_sq'):
            a = getattr(self, name)
            if not np.all(a > 0):
                raise InvalidStateError(f"{name} must be strictly positive; got minimum {np.nanmin(a)}")
        for name in ('alpha', 'beta'):
            if not np.all(np.isfinite(getattr(self, name))):
                raise InvalidStateError(f"{name} contains non-finite values")
        for name in ('nu', 'phi0_sq', 'phi1_sq'):
            if not getattr(self, name) > 0:
                raise InvalidStateError(f"{name} must be strictly positive, got {getattr(self, name)}")
        if not 0 < self.lambda_ < 1:
            raise InvalidStateError(f"lambda must lie strictly inside (0, 1), got {self.lambda_}")
        if problem is not None:
            if self.alpha.shape != (problem.n_slots,) or self.tau_sq.shape != (problem.n_sets,):
                raise InvalidStateError("State shapes do not match the bound problem")


def init_state(problem: BoundProblem, cfg: McmcConfig, rng: np.random.Generator) -> ModelState:
    """Data-driven starting point: group means, pooled variance, unit hyperparameters."""
    y, x = problem.y, problem.x
    n = problem.n_samples
    n1 = problem.n_treatment
    n0 = n - n1

    treated = x.astype(bool)
    mean1 = y[:, treated].mean(axis=1)
    mean0 = y[:, ~treated].mean(axis=1)

    alpha = y.mean(axis=1)
    beta = mean1 - mean0

    fitted = np.where(treated, mean1[:, None], mean0[:, None])
    pooled = ((y - fitted) ** 2).sum(axis=1) / (n0 + n1 - 2)
    n_floored = int(np.count_nonzero(pooled < SIGMA_SQ_INIT_FLOOR))
    if n_floored:
        log.debug(f"Initial sigma^2 floored for {n_floored} slots")
    sigma_sq = np.maximum(pooled, SIGMA_SQ_INIT_FLOOR)

    if cfg.is_mixture:
        v = (rng.random(problem.n_sets) < 0.5).astype(np.int8)
    else:
        v = np.zeros(problem.n_sets, dtype=np.int8)

    return ModelState(
        alpha=alpha,
        beta=beta,
        sigma_sq=sigma_sq,
        tau_sq=np.ones(problem.n_sets),
        v=v,
        lambda_=0.5,
        nu=cfg.fixed_nu if cfg.fixed_nu is not None else 1.0,
        phi0_sq=cfg.fixed_phi0_sq if cfg.fixed_phi0_sq is not None else 1.0,
        phi1_sq=cfg.fixed_phi1_sq if cfg.fixed_phi1_sq is not None else 1.0,
    )
