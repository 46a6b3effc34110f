from bgsa.config import ConfigAsset as Config
from .data import DatasetAsset as Dataset
from .data import GeneSetsAsset as GeneSets
from .data import ProblemAsset as Problem
from .fit import ChainAsset as Chain
from .fit import SummaryAsset as Summary
from .fit import FitOutputAsset as FitOutput
from .baseline import BaselineAsset as Baseline
from .baseline import BaselineOutputAsset as BaselineOutput
