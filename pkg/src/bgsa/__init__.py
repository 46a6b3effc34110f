"""Bayesian gene set analysis: a hierarchical model of set-level differential expression
sampled by Gibbs and slice updates, with permutation baselines and a simulation benchmark."""

__version__ = "1.0.0"
