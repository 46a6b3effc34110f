from __future__ import annotations

from typing import Any

from bgsa.exceptions import ConfigError, ParameterDomainError
from bgsa.model import GammaPrior, McmcConfig, ModelVariant
from bgsa.stats import SliceConfig
from ..seeds import resolve_seed
from ._abstract import Section

HYPERPARAMETERS = ('nu', 'phi0_sq', 'phi1_sq')


class McmcSection(Section):
    name = 'mcmc'

    iterations: int
    burn_in: int
    seed: int
    variant: ModelVariant
    beta_prior: tuple[float, float]
    slice: SliceConfig
    rao_blackwell: bool
    hyperpriors: dict[str, GammaPrior]
    fixed: dict[str, float]

    def __init__(self, raw: dict[str, Any], default_iterations: int = 2000, default_burn_in: int = 500) -> None:
        super().__init__(raw)

        self.iterations = self._int('iterations', default_iterations, minimum=1)
        self.burn_in = self._int('burn_in', default_burn_in, minimum=0)
        self.seed = resolve_seed(raw, self.name)
        self.variant = parse_variant(raw.get('variant', 'mixture'))
        self.rao_blackwell = self._bool('rao_blackwell', False)

        beta_prior = raw.get('beta_prior', [1.0, 1.0])
        if not (isinstance(beta_prior, list) and len(beta_prior) == 2):
            raise ConfigError(f"[mcmc] beta_prior must be a pair [a, b], got {beta_prior!r}")
        self.beta_prior = (float(beta_prior[0]), float(beta_prior[1]))

        slice_raw = raw.get('slice', {})
        hyper_raw = raw.get('hyperpriors', {})
        fixed_raw = raw.get('fixed', {})
        for key, table in (('slice', slice_raw), ('hyperpriors', hyper_raw), ('fixed', fixed_raw)):
            if not isinstance(table, dict):
                raise ConfigError(f"[mcmc] {key} must be a table")
        if unknown := (set(hyper_raw) | set(fixed_raw)) - set(HYPERPARAMETERS):
            raise ConfigError(f"[mcmc] unknown hyperparameter(s): {', '.join(sorted(unknown))}")

        try:
            self.slice = SliceConfig(
                initial_width=float(slice_raw.get('width', 1.0)),
                max_step_out=int(slice_raw.get('max_steps', 100)),
            )
            self.hyperpriors = {
                name: GammaPrior(*map(float, hyper_raw.get(name, [1.0, 1.0])))
                for name in HYPERPARAMETERS
            }
            self.fixed = {name: float(value) for name, value in fixed_raw.items()}
            self.config = self.to_mcmc_config()
        except (ParameterDomainError, TypeError, ValueError) as e:
            raise ConfigError(f"[mcmc] {e}") from None

    def to_mcmc_config(self) -> McmcConfig:
        return McmcConfig(
            n_iterations=self.iterations,
            burn_in=self.burn_in,
            seed=self.seed,
            model_variant=self.variant,
            beta_prior_a=self.beta_prior[0],
            beta_prior_b=self.beta_prior[1],
            slice=self.slice,
            rao_blackwell=self.rao_blackwell,
            nu_prior=self.hyperpriors['nu'],
            phi0_prior=self.hyperpriors['phi0_sq'],
            phi1_prior=self.hyperpriors['phi1_sq'],
            fixed_nu=self.fixed.get('nu'),
            fixed_phi0_sq=self.fixed.get('phi0_sq'),
            fixed_phi1_sq=self.fixed.get('phi1_sq'),
        )


def parse_variant(raw) -> ModelVariant:
    match raw:
        case 'simple' | 'mixture':
            return ModelVariant(raw)
        case _:
            raise ConfigError(f"[mcmc] variant must be 'simple' or 'mixture', got {raw!r}")
