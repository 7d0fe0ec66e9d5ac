"""Support-level contextuality by exhaustive search over global assignments."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .model import EmpiricalModel
from .scenario import Scenario, global_assignments


class Classification(str, enum.Enum):
    NONCONTEXTUAL = "non-contextual-possibilistically"
    POSSIBILISTIC = "possibilistically-contextual"
    STRONG = "strongly-contextual"


@dataclass(frozen=True)
class SupportModel:
    scenario: Scenario
    supports: Mapping  # context -> frozenset of outcome tuples

    def __post_init__(self):
        for c in self.scenario.contexts:
            if not self.supports.get(c):
                raise ValueError(f"context {list(c)} has empty support")

    def allows(self, g: Mapping) -> bool:
        return all(tuple(g[x] for x in c) in self.supports[c] for c in self.scenario.contexts)


def support_of(model: EmpiricalModel) -> SupportModel:
    return SupportModel(model.scenario, {c: d.support() for c, d in model.distributions.items()})


def consistent_globals(sm: SupportModel) -> list[dict]:
    """Global assignments whose every restriction lies in the support."""
    return [g for g in global_assignments(sm.scenario) if sm.allows(g)]


def unexplained(sm: SupportModel) -> list[tuple]:
    """Supported ``(C, s)`` pairs that no consistent global assignment restricts to."""
    reached = {c: set() for c in sm.scenario.contexts}
    for g in consistent_globals(sm):
        for c in sm.scenario.contexts:
            reached[c].add(tuple(g[x] for x in c))
    return [(c, s) for c in sm.scenario.contexts for s in sorted(sm.supports[c], key=str)
            if s not in reached[c]]


def witnesses(sm: SupportModel) -> dict:
    """For each supported ``(C, s)``, the first consistent global assignment extending it."""
    out = {}
    globals_ = consistent_globals(sm)
    for c in sm.scenario.contexts:
        for s in sm.supports[c]:
            for g in globals_:
                if tuple(g[x] for x in c) == s:
                    out[(c, s)] = g
                    break
    return out


def classify(sm: SupportModel | EmpiricalModel) -> Classification:
    if isinstance(sm, EmpiricalModel):
        sm = support_of(sm)
    if not consistent_globals(sm):
        return Classification.STRONG
    if unexplained(sm):
        return Classification.POSSIBILISTIC
    return Classification.NONCONTEXTUAL
