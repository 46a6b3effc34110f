from __future__ import annotations

from typing import Any

from bgsa.evaluation import MethodSpec
from bgsa.exceptions import ConfigError, ParameterDomainError
from bgsa.simgen import Scenario
from ..seeds import resolve_seed
from ._abstract import Section
from .mcmc import McmcSection

DESK_SCENARIOS = ['sim1', 'sim2']
FULL_SCENARIOS = [f"sim{k}" for k in range(1, 7)]
DEFAULT_METHODS = ['bgsa', 'maxmean', 'mean_z', 'mean_abs_z', 'ks']


class BenchmarkSection(Section):
    """Desk scale by default: 20 replicates of 2000/500 iterations.
    `full_scale` switches the defaults to 100 replicates of 4000/500 over all six simulations."""
    name = 'benchmark'

    scenarios: list[Scenario]
    methods: list[MethodSpec]
    n_replicates: int
    full_scale: bool
    n_permutations: int
    n_randomizations: int
    seed: int
    mcmc: McmcSection

    def __init__(self, raw: dict[str, Any], mcmc_raw: dict[str, Any]) -> None:
        super().__init__(raw)

        self.full_scale = self._bool('full_scale', False)
        try:
            self.scenarios = [
                Scenario.parse(s)
                for s in self._list('scenarios', FULL_SCENARIOS if self.full_scale else DESK_SCENARIOS)
            ]
            self.methods = [MethodSpec.parse(m) for m in self._list('methods', DEFAULT_METHODS)]
        except ParameterDomainError as e:
            raise ConfigError(f"[benchmark] {e}") from None
        self.n_replicates = self._int('replicates', 100 if self.full_scale else 20, minimum=2)
        self.n_permutations = self._int('n_permutations', 200, minimum=100)
        self.n_randomizations = self._int('n_randomizations', 200, minimum=100)
        self.seed = resolve_seed(raw, self.name)
        self.mcmc = McmcSection(mcmc_raw, default_iterations=4000 if self.full_scale else 2000)
