from __future__ import annotations

import os
from typing import Any

from bgsa.exceptions import ConfigError, ParameterDomainError
from bgsa.simgen import Scenario
from .. import thread_specs
from ..seeds import resolve_seed
from ._abstract import Section

THREADS_ENV = 'BGSA_THREADS'


class ReportSection(Section):
    name = 'report'

    cutoff: float
    only_flagged: bool

    def __init__(self, raw: dict[str, Any]) -> None:
        super().__init__(raw)

        self.cutoff = self._float('cutoff', 0.1)
        if not 0 < self.cutoff < 1:
            raise ConfigError(f"[report] cutoff must lie in (0, 1), got {self.cutoff}")
        self.only_flagged = self._bool('only_flagged', False)


class ComputationSection(Section):
    name = 'computation'

    threads: thread_specs.ThreadSpecification

    def __init__(self, raw: dict[str, Any]) -> None:
        super().__init__(raw)

        self.threads = parse_threads(raw.get('threads', os.environ.get(THREADS_ENV, 1)))

    @property
    def n_threads(self) -> int:
        match self.threads:
            case thread_specs.Fixed(value=n):
                return n
            case thread_specs.Auto():
                return os.cpu_count() or 1
        raise AssertionError(self.threads)


def parse_threads(raw) -> thread_specs.ThreadSpecification:
    match raw:
        case bool():
            pass
        case int() if raw >= 1:
            return thread_specs.Fixed(raw)
        case 'auto':
            return thread_specs.Auto()
        case str() if raw.strip().isdigit() and int(raw) >= 1:
            return thread_specs.Fixed(int(raw))
    raise ConfigError(f"[computation] threads must be a positive integer or 'auto', got {raw!r}")


class SimulateSection(Section):
    name = 'simulate'

    scenario: Scenario
    seed: int
    shift: float
    n_samples: int | None

    def __init__(self, raw: dict[str, Any]) -> None:
        super().__init__(raw)

        try:
            self.scenario = Scenario.parse(str(raw.get('scenario', 'illustrative')))
        except ParameterDomainError as e:
            raise ConfigError(f"[simulate] {e}") from None
        self.seed = resolve_seed(raw, self.name)
        self.shift = self._float('shift', 1.0)
        self.n_samples = self._int('n_samples', minimum=4) if 'n_samples' in raw else None

    def generator_options(self) -> dict[str, Any]:
        if self.scenario is Scenario.ILLUSTRATIVE:
            return dict(shift=self.shift)
        if self.scenario.simulation_number is not None and self.n_samples is not None:
            return dict(n_samples=self.n_samples)
        return {}


class DemoSection(Section):
    """Prior-correlation and density demonstrations."""
    name = 'demo'

    n_reps: int
    n_draws: int
    seed: int
    dof: float
    scales_sq: list[float]
    grid_max: float
    grid_points: int

    def __init__(self, raw: dict[str, Any]) -> None:
        super().__init__(raw)

        self.n_reps = self._int('reps', 1000, minimum=1)
        self.n_draws = self._int('draws', 100, minimum=3)
        self.seed = resolve_seed(raw, self.name)
        self.dof = self._float('dof', 4.0)
        scales = raw.get('scales_sq', [0.5, 1.0, 2.0])
        if not isinstance(scales, list) or not scales:
            raise ConfigError(f"[demo] scales_sq must be a non-empty list, got {scales!r}")
        self.scales_sq = [float(s) for s in scales]
        self.grid_max = self._float('grid_max', 5.0)
        self.grid_points = self._int('grid_points', 200, minimum=2)
        if not (self.dof > 0 and self.grid_max > 0 and all(s > 0 for s in self.scales_sq)):
            raise ConfigError("[demo] dof, scales_sq and grid_max must be positive")
