from .distributions import (
    ScaledInvChiSq,
    density_curves,
    sinvchisq_logpdf,
    sinvchisq_sample,
)
from .slice import SliceConfig, SliceStep, slice_sample_step, slice_step
