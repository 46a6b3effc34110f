"""Scaled inverse chi-squared distribution.

Parameterization: x = dof * scale_sq / c with c ~ chi-squared(dof), i.e. the density

    f(x; dof, s^2) = (dof/2)^(dof/2) / Gamma(dof/2) * s^dof * x^-(dof/2 + 1) * exp(-dof s^2 / (2x))

for x > 0. Parameters may be scalars or broadcastable arrays, so one object describes
the per-set priors of a whole collection.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from bgsa.exceptions import ParameterDomainError


@dataclass(frozen=True)
class ScaledInvChiSq:
    dof: ArrayLike
    scale_sq: ArrayLike

    def __post_init__(self):
        dof = np.asarray(self.dof, dtype=float)
        scale_sq = np.asarray(self.scale_sq, dtype=float)
        if not (np.all(np.isfinite(dof)) and np.all(np.isfinite(scale_sq))):
            raise ParameterDomainError(f"Non-finite scaled-inv-chi2 parameters: dof={self.dof}, scale_sq={self.scale_sq}")
        if not (np.all(dof > 0) and np.all(scale_sq > 0)):
            raise ParameterDomainError(f"Scaled-inv-chi2 parameters must be positive: dof={self.dof}, scale_sq={self.scale_sq}")

    @property
    def mean(self) -> NDArray[np.float64] | float:
        dof = np.asarray(self.dof, dtype=float)
        if np.any(dof <= 2):
            raise ParameterDomainError("Mean exists only for dof > 2")
        return dof * np.asarray(self.scale_sq, dtype=float) / (dof - 2)

    @property
    def mode(self) -> NDArray[np.float64] | float:
        dof = np.asarray(self.dof, dtype=float)
        return dof * np.asarray(self.scale_sq, dtype=float) / (dof + 2)


def sinvchisq_sample(
    dist: ScaledInvChiSq,
    rng: np.random.Generator,
    size: int | tuple[int, ...] | None = None,
) -> NDArray[np.float64] | float:
    """Draws from `dist`. With array parameters, one draw per broadcast element."""
    dof = np.asarray(dist.dof, dtype=float)
    scale_sq = np.asarray(dist.scale_sq, dtype=float)
    if size is None:
        size = np.broadcast_shapes(dof.shape, scale_sq.shape) or None
    c = rng.chisquare(dof, size=size)
    # chi2 draws with tiny dof can underflow to 0
    c = np.maximum(c, np.finfo(float).tiny)
    out = dof * scale_sq / c
    return float(out) if np.ndim(out) == 0 else out


def sinvchisq_logpdf(x: ArrayLike, dist: ScaledInvChiSq) -> NDArray[np.float64] | float:
    """Normalized log-density of `dist` at `x`."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise ParameterDomainError(f"Scaled-inv-chi2 log-density is defined for x > 0 only, got {x}")
    dof = np.asarray(dist.dof, dtype=float)
    scale_sq = np.asarray(dist.scale_sq, dtype=float)
    half = dof / 2
    out = (
        half * np.log(half)
        - special.gammaln(half)
        + half * np.log(scale_sq)
        - (half + 1) * np.log(x)
        - dof * scale_sq / (2 * x)
    )
    return float(out) if np.ndim(out) == 0 else out


def density_curves(dof: float, scales_sq: ArrayLike, grid: ArrayLike) -> NDArray[np.float64]:
    """Densities of Inv-chi2(dof, s^2) for several scales on a common grid, shape (len(grid), len(scales))."""
    grid = np.asarray(grid, dtype=float)
    scales_sq = np.atleast_1d(np.asarray(scales_sq, dtype=float))
    dist = ScaledInvChiSq(dof, scales_sq[None, :])
    return np.exp(sinvchisq_logpdf(grid[:, None], dist))
