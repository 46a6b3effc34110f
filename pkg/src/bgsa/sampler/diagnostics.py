"""Convergence readouts for a single chain."""
from __future__ import annotations

from typing import Any

import numpy as np
from scipy import stats

from .chain import ChainTrace
from .summary import PosteriorSummary


def autocorrelation(x: np.ndarray) -> np.ndarray:
    """Normalized autocorrelation at all lags, via FFT."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    centered = x - x.mean()
    size = 1 << (2 * n - 1).bit_length()
    spectrum = np.fft.rfft(centered, size)
    acov = np.fft.irfft(spectrum * np.conjugate(spectrum), size)[:n]
    if acov[0] <= 0:
        return np.ones(n)
    return acov / acov[0]


def effective_sample_size(x: np.ndarray) -> float:
    """Geyer's initial monotone positive sequence estimator."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    if n < 4:
        return float(n)
    if np.ptp(x) == 0:
        return float(n)
    rho = autocorrelation(x)

    # sums of adjacent pairs, truncated at the first non-positive pair
    n_pairs = (n - 1) // 2
    pairs = rho[0:2 * n_pairs:2] + rho[1:2 * n_pairs + 1:2]
    stop = np.flatnonzero(pairs <= 0)
    if stop.size:
        pairs = pairs[:stop[0]]
    pairs = np.minimum.accumulate(pairs)
    tau = -1 + 2 * pairs.sum()
    return float(n / max(tau, 1 / np.log10(max(n, 10))))


def chain_diagnostics(trace: ChainTrace) -> dict[str, Any]:
    draws = trace.draws
    names = ['nu', 'phi0_sq'] + (['phi1_sq', 'lambda'] if trace.is_mixture else [])
    ess = {name: round(effective_sample_size(draws[name].to_numpy()), 1) for name in names}
    tau_ess = [effective_sample_size(col) for col in draws['tau_sq'].to_numpy().T]
    return dict(
        ess=ess,
        min_tau_sq_ess=round(float(min(tau_ess)), 1),
        sigma_floor_hits=trace.diagnostics.get('sigma_floor_hits', 0),
        slice_evaluations=trace.diagnostics.get('slice_evaluations', {}),
    )


def size_significance_correlation(summary: PosteriorSummary) -> float | None:
    """Pearson correlation between set size and P(v = 0 | D); None when undefined."""
    if not summary.is_mixture or len(summary.sets) < 3:
        return None
    sizes = summary.sets['n_genes'].to_numpy(dtype=float)
    prob_null = summary.sets['prob_null'].to_numpy(dtype=float)
    if np.ptp(sizes) == 0 or np.ptp(prob_null) == 0:
        return None
    return float(stats.pearsonr(sizes, prob_null).statistic)
