"""Born-rule models from pure multi-qubit states and planar spin measurements.

This is the only floating-point module.  :func:`rationalize` turns its output
into an exact :class:`~contextuality.model.EmpiricalModel`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .model import EmpiricalModel, make_model
from .scenario import Scenario, make_scenario

NORM_TOL = 1e-12


@dataclass(frozen=True)
class PlanarMeasurement:
    """The observable ``cos(angle) X + sin(angle) Y`` on one party's qubit.

    Outcome 0 is the +1 eigenvalue, outcome 1 the -1 eigenvalue.
    """

    party: int
    label: str
    angle: float

    def eigenvectors(self) -> tuple[np.ndarray, np.ndarray]:
        phase = np.exp(1j * self.angle)
        plus = np.array([1.0, phase]) / np.sqrt(2)
        minus = np.array([1.0, -phase]) / np.sqrt(2)
        return plus, minus


@dataclass(frozen=True)
class ApproximateModel:
    """Floating-point tables keyed by context, entries in canonical outcome order."""

    scenario: Scenario
    tables: Mapping  # context -> np.ndarray

    def row_sums(self) -> dict:
        return {c: float(np.sum(p)) for c, p in self.tables.items()}

    def max_signalling(self) -> float:
        """Largest overlap-marginal discrepancy between any two contexts."""
        worst = 0.0
        ctx = self.scenario.contexts
        for i, c in enumerate(ctx):
            for d in ctx[i + 1:]:
                shared = [x for x in c if x in d]
                if shared:
                    diff = self._marginal(c, shared) - self._marginal(d, shared)
                    worst = max(worst, float(np.max(np.abs(diff))))
        return worst

    def _marginal(self, context, shared) -> np.ndarray:
        k = len(self.scenario.outcomes)
        p = np.asarray(self.tables[context]).reshape((k,) * len(context))
        drop = tuple(i for i, x in enumerate(context) if x not in shared)
        return p.sum(axis=drop).ravel() if drop else p.ravel()


def bell_state() -> np.ndarray:
    return np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


PRESETS = {"bell": bell_state}


def born_model(state: Sequence[complex], settings: Sequence[Sequence[PlanarMeasurement]]) -> ApproximateModel:
    """Joint outcome probabilities for every choice of one setting per party.

    ``settings[p]`` lists party ``p``'s measurements.  Qubit 0 of ``state`` is
    the most significant tensor factor.
    """
    psi = np.asarray(state, dtype=complex)
    parties = len(settings)
    if psi.ndim != 1 or psi.size != 2 ** parties:
        raise ValueError(f"a {parties}-party state needs {2 ** parties} amplitudes, got {psi.size}")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalised (norm^2 = {norm!r})")
    for p, ms in enumerate(settings):
        if not ms:
            raise ValueError(f"party {p} has no measurements")
        for m in ms:
            if m.party != p:
                raise ValueError(f"measurement {m.label!r} listed under party {p} but tagged {m.party}")

    labels = [m.label for ms in settings for m in ms]
    scenario = make_scenario(labels, ([m.label for m in choice] for choice in itertools.product(*settings)),
                             (0, 1))
    by_label = {m.label: m for ms in settings for m in ms}
    tables = {}
    for context in scenario.contexts:
        bases = [by_label[x].eigenvectors() for x in context]
        probs = []
        for outcome in scenario.assignments(context):
            vec = np.array([1.0 + 0j])
            for basis, o in zip(bases, outcome):
                vec = np.kron(vec, basis[o])
            probs.append(abs(np.vdot(vec, psi)) ** 2)
        tables[context] = np.clip(np.array(probs), 0.0, 1.0)
    return ApproximateModel(scenario, tables)


def rationalize(approx: ApproximateModel, max_denominator: int) -> EmpiricalModel:
    """Snap every probability to the closest fraction with denominator <= D.

    Each row is then made to sum to exactly 1 by moving the residue onto its
    largest entry.  No-signalling is re-checked exactly;
    :class:`~contextuality.model.SignallingError` is raised if it fails.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be at least 1")
    tables = {}
    for context in approx.scenario.contexts:
        row = [Fraction(float(min(max(p, 0.0), 1.0))).limit_denominator(max_denominator)
               for p in approx.tables[context]]
        residue = 1 - sum(row)
        if residue:
            top = max(range(len(row)), key=lambda i: (row[i], -i))
            row[top] += residue
            if row[top] < 0:
                raise ValueError(f"cannot renormalise row {list(context)} at denominator {max_denominator}")
        tables[context] = row
    return make_model(approx.scenario, tables)
