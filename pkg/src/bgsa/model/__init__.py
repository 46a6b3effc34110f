from .data import ExpressionDataset, GeneSetCollection, MIN_CLASS_SIZE, MIN_SET_SIZE
from .problem import BoundProblem, validate_and_bind
from .state import (
    GammaPrior,
    McmcConfig,
    ModelState,
    ModelVariant,
    StandInPrior,
    init_state,
)
