from planner import Planner, RecipeBundle, StaticRecipe

from bgsa.config import ConfigData
from . import _assets as assets, _recipes as recipes


FIT_BUNDLE = RecipeBundle([
    recipes.Dataset,
    recipes.GeneSets,
    recipes.Problem,
    recipes.Chain,
    recipes.Summary,
    recipes.FitOutput,
])

BASELINE_BUNDLE = RecipeBundle([
    recipes.Dataset,
    recipes.GeneSets,
    recipes.Baseline,
    recipes.BaselineOutput,
])


def run_fit(config: ConfigData) -> assets.FitOutput:
    """Reads the inputs, runs the chain and writes the set and gene tables."""
    plan = (
        Planner()
        .add(FIT_BUNDLE)
        .add(StaticRecipe(assets.Config(config)))
        .plan(assets.FitOutput)
    )
    with plan.run() as asset:
        return asset


def run_baseline(config: ConfigData) -> assets.BaselineOutput:
    plan = (
        Planner()
        .add(BASELINE_BUNDLE)
        .add(StaticRecipe(assets.Config(config)))
        .plan(assets.BaselineOutput)
    )
    with plan.run() as asset:
        return asset
