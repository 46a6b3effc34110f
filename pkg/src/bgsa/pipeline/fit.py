import logging
from dataclasses import dataclass
from pathlib import Path
from typing import override

from planner import Asset, DataAsset, Recipe, inject

from bgsa.config import ConfigAsset
from bgsa.io import METADATA, TRACE_TABLE, write_metadata, write_results, write_trace
from bgsa.sampler import (
    ChainTrace,
    PosteriorSummary,
    chain_diagnostics,
    run_chain,
    size_significance_correlation,
    summarize,
)
from .data import ProblemAsset
from .meta import run_meta


log = logging.getLogger(__name__)


class ChainAsset(DataAsset[ChainTrace]):
    pass


class ChainRecipe(Recipe[ChainAsset]):
    _makes = ChainAsset

    config: ConfigAsset = inject()
    problem: ProblemAsset = inject()

    @override
    def make(self):
        return ChainAsset(run_chain(self.problem.d, self.config.d.mcmc.config))


class SummaryAsset(DataAsset[PosteriorSummary]):
    pass


class SummaryRecipe(Recipe[SummaryAsset]):
    _makes = SummaryAsset

    config: ConfigAsset = inject()
    problem: ProblemAsset = inject()
    chain: ChainAsset = inject()

    @override
    def make(self):
        conf = self.config.d
        summary = summarize(self.chain.d, self.problem.d, rao_blackwell=conf.mcmc.rao_blackwell)
        summary.diagnostics.update(chain_diagnostics(self.chain.d))
        summary.diagnostics['size_prob_null_correlation'] = size_significance_correlation(summary)
        return SummaryAsset(summary)


@dataclass
class FitOutputAsset(Asset):
    summary: PosteriorSummary
    files: list[Path]


class FitOutputRecipe(Recipe[FitOutputAsset]):
    _makes = FitOutputAsset

    config: ConfigAsset = inject()
    problem: ProblemAsset = inject()
    chain: ChainAsset = inject()
    summary: SummaryAsset = inject()

    @override
    def make(self):
        conf = self.config.d
        conf.paths.require('out')
        out = conf.paths.out
        summary = self.summary.d

        log.info(f"Writing results to {out}")
        files = write_results(summary, out, cutoff=conf.report.cutoff, only_flagged=conf.report.only_flagged)
        files.append(write_trace(self.chain.d, out / TRACE_TABLE))
        files.append(write_metadata(
            out / METADATA,
            conf.raw,
            run_meta(
                'fit',
                seed=summary.seed,
                variant=summary.variant,
                n_retained=summary.n_retained,
                n_sets=self.problem.d.n_sets,
                n_slots=self.problem.d.n_slots,
                diagnostics=summary.diagnostics,
            ),
        ))
        return FitOutputAsset(summary, files)
