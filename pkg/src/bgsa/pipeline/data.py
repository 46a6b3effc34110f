import logging
from typing import override

from planner import DataAsset, Recipe, inject

from bgsa.config import ConfigAsset
from bgsa.io import parse_gmt, read_matrix
from bgsa.model import BoundProblem, ExpressionDataset, GeneSetCollection, validate_and_bind


log = logging.getLogger(__name__)


class DatasetAsset(DataAsset[ExpressionDataset]):
    pass


class DatasetRecipe(Recipe[DatasetAsset]):
    _makes = DatasetAsset

    config: ConfigAsset = inject()

    @override
    def make(self):
        paths = self.config.d.paths
        paths.require('matrix', 'labels')
        return DatasetAsset(read_matrix(paths.matrix, paths.labels))


class GeneSetsAsset(DataAsset[GeneSetCollection]):
    pass


class GeneSetsRecipe(Recipe[GeneSetsAsset]):
    _makes = GeneSetsAsset

    config: ConfigAsset = inject()
    dataset: DatasetAsset = inject()

    @override
    def make(self):
        paths = self.config.d.paths
        paths.require('gmt')
        return GeneSetsAsset(parse_gmt(paths.gmt, self.dataset.d))


class ProblemAsset(DataAsset[BoundProblem]):
    pass


class ProblemRecipe(Recipe[ProblemAsset]):
    _makes = ProblemAsset

    dataset: DatasetAsset = inject()
    sets: GeneSetsAsset = inject()

    @override
    def make(self):
        problem = validate_and_bind(self.dataset.d, self.sets.d)
        log.debug(f"  Bound {problem.n_sets} sets onto {problem.n_slots} gene slots")
        return ProblemAsset(problem)
