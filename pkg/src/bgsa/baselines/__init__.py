from .scores import GeneScores, class_tstats, gene_zscores
from .statistics import (
    SetStatistic,
    ks_from_masks,
    ks_signed,
    maxmean,
    mean_abs_z,
    mean_z,
    score_sets,
    set_statistics,
)
from .restandardize import (
    RandomizedSets,
    Restandardized,
    draw_random_subsets,
    randomization_moments,
    restandardize,
)
from .permutation import BaselineResult, permutation_pvalues
