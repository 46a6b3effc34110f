from __future__ import annotations

from typing import Any

from bgsa.baselines import SetStatistic
from bgsa.exceptions import ConfigError, ParameterDomainError
from ..seeds import resolve_seed
from ._abstract import Section

MIN_PERMUTATIONS = 100
MIN_RANDOMIZATIONS = 100


class BaselineSection(Section):
    name = 'baseline'

    methods: list[SetStatistic]
    n_permutations: int
    n_randomizations: int
    restandardize: bool | None
    exhaustive: bool
    seed: int

    def __init__(self, raw: dict[str, Any]) -> None:
        super().__init__(raw)

        try:
            self.methods = [SetStatistic.parse(m) for m in self._list('methods', ['maxmean'])]
        except ParameterDomainError as e:
            raise ConfigError(f"[baseline] {e}") from None
        self.exhaustive = self._bool('exhaustive', False)
        self.n_permutations = self._int('n_permutations', 1000, minimum=1 if self.exhaustive else MIN_PERMUTATIONS)
        self.n_randomizations = self._int('n_randomizations', 200, minimum=MIN_RANDOMIZATIONS)
        # unset: restandardize maxmean only
        restandardize = raw.get('restandardize')
        if restandardize is not None and not isinstance(restandardize, bool):
            raise ConfigError(f"[baseline] restandardize must be true or false, got {restandardize!r}")
        self.restandardize = restandardize
        self.seed = resolve_seed(raw, self.name)

    def restandardized(self, method: SetStatistic) -> bool:
        if self.restandardize is None:
            return method is SetStatistic.MAXMEAN
        return self.restandardize
