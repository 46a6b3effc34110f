from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from bgsa.exceptions import DegenerateDensityError, InvalidStateError, ParameterDomainError

MIN_INTERVAL_WIDTH = 1e-12


@dataclass(frozen=True)
class SliceConfig:
    initial_width: float = 1.0
    max_step_out: int = 100

    def __post_init__(self):
        if not self.initial_width > 0:
            raise ParameterDomainError(f"Slice initial_width must be positive, got {self.initial_width}")
        if self.max_step_out < 1:
            raise ParameterDomainError(f"Slice max_step_out must be at least 1, got {self.max_step_out}")


@dataclass(frozen=True)
class SliceStep:
    x: float
    log_density: float
    level: float
    evaluations: int


def slice_step(
    log_density: Callable[[float], float],
    x0: float,
    cfg: SliceConfig,
    rng: np.random.Generator,
    log_density_x0: float | None = None,
) -> SliceStep:
    """One univariate slice sampling update with stepping out and shrinkage.

    `log_density` may be unnormalized and may return -inf outside its support.
    """
    f0 = log_density(x0) if log_density_x0 is None else log_density_x0
    if math.isnan(f0):
        raise InvalidStateError(f"Log-density is NaN at the current point {x0}")
    if not math.isfinite(f0):
        raise InvalidStateError(f"Log-density is not finite at the current point {x0}: {f0}")
    evaluations = 1 if log_density_x0 is None else 0

    level = f0 - rng.exponential()
    w = cfg.initial_width

    # stepping out
    left = x0 - w * rng.random()
    right = left + w
    j = math.floor(cfg.max_step_out * rng.random())
    k = cfg.max_step_out - 1 - j
    while j > 0 and log_density(left) > level:
        left -= w
        j -= 1
        evaluations += 1
    while k > 0 and log_density(right) > level:
        right += w
        k -= 1
        evaluations += 1

    # shrinkage
    while True:
        if right - left < MIN_INTERVAL_WIDTH:
            raise DegenerateDensityError(
                f"Slice interval around {x0} shrank below {MIN_INTERVAL_WIDTH} without acceptance"
            )
        x1 = left + (right - left) * rng.random()
        f1 = log_density(x1)
        evaluations += 1
        if f1 >= level and not math.isnan(f1):
            return SliceStep(x=x1, log_density=f1, level=level, evaluations=evaluations)
        if x1 < x0:
            left = x1
        else:
            right = x1


def slice_sample_step(
    log_density: Callable[[float], float],
    x0: float,
    cfg: SliceConfig,
    rng: np.random.Generator,
) -> float:
    return slice_step(log_density, x0, cfg, rng).x
