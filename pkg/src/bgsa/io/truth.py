from __future__ import annotations

import json
from pathlib import Path

from bgsa.exceptions import InputError
from bgsa.simgen import SimulationTruth
from ._atomic import atomic_write


def write_truth(truth: SimulationTruth, path: str | Path):
    with atomic_write(path) as f:
        json.dump(truth.to_dict(), f, indent=2)
        f.write('\n')


def read_truth(path: str | Path) -> SimulationTruth:
    path = Path(path)
    try:
        with open(path, 'rb') as f:
            return SimulationTruth.from_dict(json.load(f))
    except FileNotFoundError:
        raise InputError(f"{path}: file not found") from None
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise InputError(f"{path}: not a valid truth file ({e})") from None
