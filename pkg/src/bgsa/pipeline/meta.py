from __future__ import annotations

from typing import Any

import numpy as np
import pandas as pd
import scipy
import xarray as xr

import bgsa


def versions() -> dict[str, str]:
    return dict(
        bgsa=bgsa.__version__,
        numpy=np.__version__,
        scipy=scipy.__version__,
        pandas=pd.__version__,
        xarray=xr.__version__,
    )


def run_meta(command: str, **entries: Any) -> dict[str, Any]:
    """The `meta` section of a run record. Holds no timestamps, so reruns write identical files."""
    return dict(command=command, versions=versions(), **entries)
