from __future__ import annotations

from functools import cached_property
from typing import Any

from ._abstract import Section
from .baseline import BaselineSection
from .benchmark import BenchmarkSection
from .mcmc import McmcSection
from .misc import ComputationSection, DemoSection, ReportSection, SimulateSection
from .paths import PathsSection


class ConfigData(Section):
    """The root section. Subsections are parsed on first access; missing ones use defaults
    and are added to the raw dict, so the raw dict records what was actually used."""
    name = 'root'

    def __init__(self, raw: dict[str, Any]) -> None:
        super().__init__(raw)

    def _section(self, name: str) -> dict[str, Any]:
        return self._raw.setdefault(name, {})

    def parse(self, *names: str) -> None:
        """Parse the named sections now, so their errors surface before any work starts."""
        for name in names:
            getattr(self, name)

    @property
    def raw(self) -> dict[str, Any]:
        return {k: v for k, v in self._raw.items() if k != 'meta'}

    @cached_property
    def paths(self) -> PathsSection:
        return PathsSection(self._section('paths'))

    @cached_property
    def mcmc(self) -> McmcSection:
        return McmcSection(self._section('mcmc'))

    @cached_property
    def baseline(self) -> BaselineSection:
        return BaselineSection(self._section('baseline'))

    @cached_property
    def benchmark(self) -> BenchmarkSection:
        return BenchmarkSection(self._section('benchmark'), self._section('mcmc'))

    @cached_property
    def report(self) -> ReportSection:
        return ReportSection(self._section('report'))

    @cached_property
    def computation(self) -> ComputationSection:
        return ComputationSection(self._section('computation'))

    @cached_property
    def simulate(self) -> SimulateSection:
        return SimulateSection(self._section('simulate'))

    @cached_property
    def demo(self) -> DemoSection:
        return DemoSection(self._section('demo'))
