from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
import pandas as pd

from bgsa.exceptions import InvalidStateError
from bgsa.model import BoundProblem
from .chain import ChainTrace


@dataclass
class PosteriorSummary:
    """Posterior readouts of one chain.

    sets:  set_name, n_genes, mean_tau_sq, prob_null (NaN for the simple variant)
    genes: set_name, gene_id, mean_beta, tail_prob
    """
    sets: pd.DataFrame
    genes: pd.DataFrame
    n_retained: int
    seed: int
    variant: str
    diagnostics: dict[str, Any] = field(default_factory=dict)

    @property
    def is_mixture(self) -> bool:
        return self.variant == 'mixture'


def beta_tail_probability(beta_draws: np.ndarray) -> np.ndarray:
    """2 * min(Pr(beta > 0), Pr(beta < 0)) along the draw axis."""
    positive = (beta_draws > 0).mean(axis=0)
    negative = (beta_draws < 0).mean(axis=0)
    return np.minimum(2 * np.minimum(positive, negative), 1.0)


def summarize(trace: ChainTrace, problem: BoundProblem, rao_blackwell: bool = False) -> PosteriorSummary:
    """Posterior means and probabilities from the retained draws.

    P(v_s = 0 | D) is the frequency of v_s = 0, or with `rao_blackwell` the average
    of the per-sweep Bernoulli probabilities 1 - P(v_s = 1 | .).
    """
    if trace.n_retained == 0:
        raise InvalidStateError("Cannot summarize an empty trace")
    draws = trace.draws

    mean_tau_sq = draws['tau_sq'].mean('draw').to_numpy()
    if trace.is_mixture:
        if rao_blackwell:
            prob_null = 1 - draws['p_alt'].mean('draw').to_numpy()
        else:
            prob_null = (draws['v'] == 0).mean('draw').to_numpy()
    else:
        prob_null = np.full(problem.n_sets, np.nan)

    sets = pd.DataFrame(dict(
        set_name=list(problem.set_names),
        n_genes=problem.set_sizes,
        mean_tau_sq=mean_tau_sq,
        prob_null=prob_null,
    ))

    beta = draws['beta'].to_numpy()
    genes = pd.DataFrame(dict(
        set_name=[problem.set_names[s] for s in problem.slot_set],
        gene_id=problem.slot_gene_ids,
        mean_beta=beta.mean(axis=0),
        tail_prob=beta_tail_probability(beta),
    ))

    return PosteriorSummary(
        sets=sets,
        genes=genes,
        n_retained=trace.n_retained,
        seed=trace.seed,
        variant=trace.variant,
        diagnostics=dict(trace.diagnostics, rao_blackwell=rao_blackwell),
    )
