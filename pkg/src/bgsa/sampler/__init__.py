from .updates import (
    HyperparamUpdate,
    SweepDiagnostics,
    hyperparam_log_conditional,
    prob_alternative,
    sweep,
    tau_sq_conditional,
    update_alpha,
    update_beta,
    update_hyperparams,
    update_lambda,
    update_sigma_sq,
    update_tau_sq,
    update_v,
)
from .chain import ChainTrace, run_chain
from .summary import PosteriorSummary, beta_tail_probability, summarize
from .diagnostics import chain_diagnostics, effective_sample_size, size_significance_correlation
