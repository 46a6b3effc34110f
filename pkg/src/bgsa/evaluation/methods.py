"""Method tags and the adapters turning analysis outputs into comparable scores.

Tags: `bgsa` / `bgsa-mixture`, `bgsa-simple`, and any set statistic name with an
optional `-restd` or `-raw` suffix. Maxmean is restandardized unless `-raw` is given.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from bgsa.baselines import BaselineResult, SetStatistic, permutation_pvalues
from bgsa.baselines.permutation import MAX_EXHAUSTIVE_SAMPLES
from bgsa.exceptions import ParameterDomainError
from bgsa.model import McmcConfig, ModelVariant, validate_and_bind
from bgsa.sampler import PosteriorSummary, run_chain, summarize
from bgsa.simgen import SimulatedData
from .roc import MethodScores


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MethodSpec:
    variant: ModelVariant | None = None
    statistic: SetStatistic | None = None
    restandardized: bool = False

    @property
    def is_bgsa(self) -> bool:
        return self.variant is not None

    @property
    def name(self) -> str:
        if self.variant is not None:
            return f"bgsa-{self.variant}"
        return f"{self.statistic}{'-restd' if self.restandardized else ''}"

    @property
    def orientation(self) -> str:
        match self:
            case MethodSpec(variant=ModelVariant.MIXTURE):
                return "P(v=1|D), ties by E[tau^2|D]"
            case MethodSpec(variant=ModelVariant.SIMPLE):
                return "E[tau^2|D]"
            case _:
                return "1 - permutation p-value"

    @staticmethod
    def parse(tag: str) -> MethodSpec:
        key = tag.strip().lower().replace('_', '-')
        match key:
            case 'bgsa' | 'bgsa-mixture':
                return MethodSpec(variant=ModelVariant.MIXTURE)
            case 'bgsa-simple':
                return MethodSpec(variant=ModelVariant.SIMPLE)
        restandardized = None
        for suffix, flag in (('-restd', True), ('-raw', False)):
            if key.endswith(suffix):
                key, restandardized = key.removesuffix(suffix), flag
        try:
            statistic = SetStatistic.parse(key)
        except ParameterDomainError:
            raise ParameterDomainError(f"Unknown method tag '{tag}'") from None
        if restandardized is None:
            restandardized = statistic is SetStatistic.MAXMEAN
        return MethodSpec(statistic=statistic, restandardized=restandardized)


def score_adapter(method: MethodSpec | str, output: PosteriorSummary | BaselineResult) -> MethodScores:
    spec = MethodSpec.parse(method) if isinstance(method, str) else method
    match spec, output:
        case MethodSpec(variant=ModelVariant.MIXTURE), PosteriorSummary() if output.is_mixture:
            sets = output.sets
            return MethodScores(
                method=spec.name,
                scores=1 - sets['prob_null'].to_numpy(),
                orientation=spec.orientation,
                tiebreak=sets['mean_tau_sq'].to_numpy(),
            )
        case MethodSpec(variant=ModelVariant.SIMPLE), PosteriorSummary():
            return MethodScores(spec.name, output.sets['mean_tau_sq'].to_numpy(), spec.orientation)
        case MethodSpec(statistic=SetStatistic()), BaselineResult():
            # p-value ties are left unbroken
            return MethodScores(spec.name, 1 - output.perm_pvalue, spec.orientation)
    raise ParameterDomainError(f"Method '{spec.name}' cannot score a {type(output).__name__}")


def run_method(
    spec: MethodSpec,
    simulated: SimulatedData,
    seed: int,
    mcmc: McmcConfig,
    n_permutations: int,
    n_randomizations: int,
) -> PosteriorSummary | BaselineResult:
    """Run one method on one simulated dataset with its own seed."""
    data, sets = simulated.dataset, simulated.sets
    if spec.is_bgsa:
        problem = validate_and_bind(data, sets)
        cfg = replace(mcmc, seed=seed, model_variant=spec.variant)
        return summarize(run_chain(problem, cfg), problem, rao_blackwell=cfg.rao_blackwell)

    n_distinct = math.comb(data.n_samples, data.class_sizes[1])
    exhaustive = n_permutations > n_distinct - 1 and data.n_samples <= MAX_EXHAUSTIVE_SAMPLES
    if exhaustive:
        log.debug(f"Only {n_distinct} labellings exist; enumerating all of them")
    return permutation_pvalues(
        data, sets, spec.statistic,
        n_permutations=n_permutations,
        restandardized=spec.restandardized,
        rng=np.random.default_rng(seed),
        n_randomizations=n_randomizations,
        exhaustive=exhaustive,
    )
