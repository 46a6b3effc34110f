from __future__ import annotations

from dataclasses import dataclass


class ThreadSpecification:
    pass


@dataclass
class Fixed(ThreadSpecification):
    value: int


@dataclass
class Auto(ThreadSpecification):
    pass
