from __future__ import annotations

import numpy as np

from .truth import Scenario, SimulatedData, SimulationTruth
from .designs import gen_all_shifted, gen_efron_shifted, gen_illustrative
from .scenarios import gen_simulation, random_partition
from .prior_demo import PriorCorrelationDemo, gen_prior_correlation_demo


def generate(scenario: Scenario | str, seed: int, **kwargs) -> SimulatedData:
    """Generate `scenario` from a fresh stream seeded by `seed`.

    Extra keyword arguments go to the scenario generator (e.g. `shift` for the
    illustrative design, `n_samples` for the simulations).
    """
    scenario = Scenario.parse(scenario) if isinstance(scenario, str) else scenario
    rng = np.random.default_rng(seed)
    match scenario:
        case Scenario.ILLUSTRATIVE:
            return gen_illustrative(rng, seed=seed, **kwargs)
        case Scenario.ALL_SHIFTED:
            return gen_all_shifted(rng, seed=seed)
        case Scenario.EFRON_SHIFTED:
            return gen_efron_shifted(rng, seed=seed)
        case _:
            return gen_simulation(scenario.simulation_number, rng, seed=seed, **kwargs)
