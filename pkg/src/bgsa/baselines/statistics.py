"""Set-level summaries of gene scores.

All statistics reduce over the last axis, so a (R, l) matrix of randomized sets is
scored in one call.
"""
from __future__ import annotations

from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from bgsa.exceptions import ParameterDomainError
from bgsa.model import GeneSetCollection


class SetStatistic(StrEnum):
    MAXMEAN = 'maxmean'
    MEAN_Z = 'mean_z'
    MEAN_ABS_Z = 'mean_abs_z'
    KS_SIGNED = 'ks_signed'

    @property
    def signed(self) -> bool:
        """Signed statistics are extreme in both directions; the others only upwards."""
        return self in (SetStatistic.MEAN_Z, SetStatistic.KS_SIGNED)

    @property
    def label(self) -> str:
        match self:
            case SetStatistic.MAXMEAN:
                return 'Maxmean'
            case SetStatistic.MEAN_Z:
                return 'Mean.z'
            case SetStatistic.MEAN_ABS_Z:
                return 'Mean.abs.z'
            case SetStatistic.KS_SIGNED:
                return 'GSEA-KS (simplified)'

    @classmethod
    def parse(cls, name: str) -> SetStatistic:
        key = name.strip().lower().replace('-', '_').replace('.', '_')
        aliases = {'ks': cls.KS_SIGNED, 'gsea': cls.KS_SIGNED}
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise ParameterDomainError(f"Unknown set statistic '{name}'") from None


def _nonempty(z: ArrayLike) -> NDArray[np.float64]:
    z = np.asarray(z, dtype=np.float64)
    if z.shape[-1] == 0:
        raise ParameterDomainError("Set statistics need at least one gene score")
    return z


def maxmean(z: ArrayLike) -> NDArray[np.float64] | float:
    """max(|mean(min(z, 0))|, |mean(max(z, 0))|), zeros included in both means."""
    z = _nonempty(z)
    lower = np.minimum(z, 0).mean(axis=-1)
    upper = np.maximum(z, 0).mean(axis=-1)
    out = np.maximum(np.abs(lower), np.abs(upper))
    return float(out) if np.ndim(out) == 0 else out


def mean_z(z: ArrayLike) -> NDArray[np.float64] | float:
    out = _nonempty(z).mean(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def mean_abs_z(z: ArrayLike) -> NDArray[np.float64] | float:
    out = np.abs(_nonempty(z)).mean(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def ks_from_masks(z_sorted: NDArray[np.float64], in_set: NDArray[np.bool_]) -> NDArray[np.float64]:
    """Signed KS statistic of each row of `in_set` against its complement.

    `z_sorted` holds all scores in ascending order and `in_set` (R, G) marks set members
    in that order. The empirical CDFs are compared at the distinct score values only;
    the sign is that of F_complement - F_set at the maximizing point. A row covering
    every gene has no complement and scores 0.
    """
    in_set = np.atleast_2d(in_set)
    n_in = in_set.sum(axis=1, keepdims=True)
    n_out = in_set.shape[1] - n_in
    if np.any(n_in == 0):
        raise ParameterDomainError("KS statistic needs a non-empty set")

    # last position of every run of tied scores
    ends = np.flatnonzero(np.r_[z_sorted[1:] != z_sorted[:-1], True])
    cdf_in = np.cumsum(in_set, axis=1)[:, ends] / n_in
    cdf_out = np.cumsum(~in_set, axis=1)[:, ends] / np.maximum(n_out, 1)
    diff = np.where(n_out > 0, cdf_out - cdf_in, 0.0)
    best = np.abs(diff).argmax(axis=1)
    return diff[np.arange(len(diff)), best]


def ks_signed(z_set: ArrayLike, z_complement: ArrayLike) -> float:
    z_set = np.asarray(z_set, dtype=np.float64).ravel()
    z_complement = np.asarray(z_complement, dtype=np.float64).ravel()
    if z_set.size == 0 or z_complement.size == 0:
        raise ParameterDomainError("KS statistic needs a non-empty set and a non-empty complement")
    pooled = np.concatenate([z_set, z_complement])
    membership = np.r_[np.ones(z_set.size, bool), np.zeros(z_complement.size, bool)]
    order = np.argsort(pooled, kind='stable')
    return float(ks_from_masks(pooled[order], membership[order])[0])


def membership_masks(n_genes: int, members: list[NDArray[np.intp]] | NDArray[np.intp]) -> NDArray[np.bool_]:
    masks = np.zeros((len(members), n_genes), dtype=bool)
    if isinstance(members, np.ndarray) and members.ndim == 2:
        masks[np.arange(len(members))[:, None], members] = True
        return masks
    for i, m in enumerate(members):
        masks[i, m] = True
    return masks


def score_sets(z: NDArray[np.float64], members: list[NDArray[np.intp]] | NDArray[np.intp], method: SetStatistic) -> NDArray[np.float64]:
    """Statistic of every index list in `members` (a list of arrays or an (R, l) matrix)."""
    match method:
        case SetStatistic.KS_SIGNED:
            order = np.argsort(z, kind='stable')
            masks = membership_masks(len(z), members)[:, order]
            return ks_from_masks(z[order], masks)
        case _:
            fn = {
                SetStatistic.MAXMEAN: maxmean,
                SetStatistic.MEAN_Z: mean_z,
                SetStatistic.MEAN_ABS_Z: mean_abs_z,
            }[method]
            if isinstance(members, np.ndarray) and members.ndim == 2:
                return np.asarray(fn(z[members]), dtype=np.float64)
            return np.array([fn(z[m]) for m in members], dtype=np.float64)


def set_statistics(z: NDArray[np.float64], sets: GeneSetCollection, method: SetStatistic) -> NDArray[np.float64]:
    return score_sets(z, list(sets.sets), method)
