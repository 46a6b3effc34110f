from . import _assets as assets
from . import _recipes as recipes
from .plans import run_baseline, run_fit
