import logging
from dataclasses import dataclass
from pathlib import Path
from typing import override

import numpy as np
from planner import Asset, DataAsset, Recipe, inject

from bgsa.baselines import BaselineResult, permutation_pvalues
from bgsa.config import ConfigAsset
from bgsa.io import METADATA, write_metadata, write_results
from .data import DatasetAsset, GeneSetsAsset
from .meta import run_meta


log = logging.getLogger(__name__)


class BaselineAsset(DataAsset[list[BaselineResult]]):
    pass


class BaselineRecipe(Recipe[BaselineAsset]):
    _makes = BaselineAsset

    config: ConfigAsset = inject()
    dataset: DatasetAsset = inject()
    sets: GeneSetsAsset = inject()

    @override
    def make(self):
        conf = self.config.d
        section = conf.baseline
        # one stream per method, derived from the section seed
        streams = np.random.SeedSequence(section.seed).spawn(len(section.methods))
        results = [
            permutation_pvalues(
                self.dataset.d,
                self.sets.d,
                method,
                n_permutations=section.n_permutations,
                restandardized=section.restandardized(method),
                rng=np.random.default_rng(stream),
                n_randomizations=section.n_randomizations,
                exhaustive=section.exhaustive,
                threads=conf.computation.n_threads,
            )
            for method, stream in zip(section.methods, streams)
        ]
        return BaselineAsset(results)


@dataclass
class BaselineOutputAsset(Asset):
    results: list[BaselineResult]
    files: list[Path]


class BaselineOutputRecipe(Recipe[BaselineOutputAsset]):
    _makes = BaselineOutputAsset

    config: ConfigAsset = inject()
    baseline: BaselineAsset = inject()

    @override
    def make(self):
        conf = self.config.d
        conf.paths.require('out')
        out = conf.paths.out

        files = [path for result in self.baseline.d for path in write_results(result, out)]
        files.append(write_metadata(
            out / METADATA,
            conf.raw,
            run_meta(
                'baseline',
                seed=conf.baseline.seed,
                methods=[
                    dict(
                        method=str(r.method),
                        restandardized=r.restandardized,
                        n_permutations=r.n_permutations,
                        exhaustive=r.exhaustive,
                    )
                    for r in self.baseline.d
                ],
            ),
        ))
        return BaselineOutputAsset(self.baseline.d, files)
