from .data import DatasetRecipe as Dataset
from .data import GeneSetsRecipe as GeneSets
from .data import ProblemRecipe as Problem
from .fit import ChainRecipe as Chain
from .fit import SummaryRecipe as Summary
from .fit import FitOutputRecipe as FitOutput
from .baseline import BaselineRecipe as Baseline
from .baseline import BaselineOutputRecipe as BaselineOutput
