"""Non-contextual fraction, decomposition and witnessing Bell inequalities.

The non-contextual fraction of a model ``e`` is the optimum of

    maximise 1.b  subject to  M b <= v^e,  b >= 0

with ``M`` the incidence matrix.  Its dual, ``minimise v^e.y`` subject to
``M^T y >= 1, y >= 0``, yields the witnessing inequality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import lp
from .inequality import BellInequality, is_bell_inequality
from .model import EmpiricalModel, incidence_matrix, model_from_vector, vectorize
from .rational import ONE, ZERO, Vector, matvec
from .scenario import global_assignments

__all__ = [
    "FractionResult", "Decomposition", "NotContextualError", "Membership",
    "noncontextual_fraction", "contextual_fraction", "membership_nc", "decompose",
    "witness_inequality",
]


class NotContextualError(ValueError):
    pass


@dataclass(frozen=True)
class FractionResult:
    model: EmpiricalModel
    ncf: Fraction
    weights: Vector  # optimal global subprobability b*, one entry per global assignment
    dual: Vector  # optimal dual y*, one entry per local assignment

    @property
    def cf(self) -> Fraction:
        return ONE - self.ncf

    def marginal(self) -> Vector:
        """``M b*``: the non-contextual part before renormalisation."""
        return matvec(incidence_matrix(self.model.scenario), self.weights)


@dataclass(frozen=True)
class Decomposition:
    """``e = ncf * noncontextual + cf * contextual``; absent parts are ``None``."""

    ncf: Fraction
    noncontextual: Optional[EmpiricalModel]
    contextual: Optional[EmpiricalModel]


@dataclass(frozen=True)
class Membership:
    member: bool
    distribution: Optional[Vector]  # weights on global assignments when a member
    cf: Fraction  # refutation certificate when not a member


def noncontextual_fraction(model: EmpiricalModel) -> FractionResult:
    scenario = model.scenario
    M = incidence_matrix(scenario)
    v = vectorize(model)
    sol = lp.maximize([ONE] * scenario.num_global, M, v)
    if not sol.optimal:  # b = 0 is feasible and 1.b <= 1, so this cannot happen
        raise RuntimeError(f"fraction LP ended {sol.status.value}")
    return FractionResult(model, sol.value, sol.x, sol.y)


def contextual_fraction(model: EmpiricalModel) -> Fraction:
    return noncontextual_fraction(model).cf


def membership_nc(model: EmpiricalModel) -> Membership:
    """Decide membership of the non-contextual polytope.

    A fraction of 1 means ``b*`` has weight 1 with ``M b* <= v``; both sides
    sum to 1 per context, so ``M b* = v`` and ``b*`` is the distribution.
    """
    res = noncontextual_fraction(model)
    if res.ncf == ONE:
        return Membership(True, res.weights, ZERO)
    return Membership(False, None, res.cf)


def decompose(model: EmpiricalModel, result: FractionResult | None = None) -> Decomposition:
    if result is None:
        result = noncontextual_fraction(model)
    scenario = model.scenario
    if result.ncf == ONE:
        return Decomposition(ONE, model, None)
    if result.ncf == ZERO:
        return Decomposition(ZERO, None, model)
    nc_part = result.marginal()
    v = vectorize(model)
    e_nc = model_from_vector(scenario, [p / result.ncf for p in nc_part])
    e_sc = model_from_vector(scenario, [(a - b) / result.cf for a, b in zip(v, nc_part)])
    return Decomposition(result.ncf, e_nc, e_sc)


def witness_inequality(model: EmpiricalModel, result: FractionResult | None = None) -> BellInequality:
    """A Bell inequality whose normalised violation by ``model`` equals its CF.

    From an optimal dual ``y`` take ``a[<C,s>] = 1/|M| - y[<C,s>]`` with bound
    0.  Dual feasibility gives ``a.delta^g <= 0`` for every ``g``, and
    ``a.v^e = 1 - NCF``.  Because some ``y`` entry in every context is zero at
    the optimum, ``||a|| = 1``.  The result is checked before it is returned.
    """
    if result is None:
        result = noncontextual_fraction(model)
    if result.cf == ZERO:
        raise NotContextualError("a non-contextual model violates no Bell inequality")
    scenario = model.scenario
    share = Fraction(1, len(scenario.contexts))
    ineq = BellInequality(scenario, [share - y for y in result.dual], ZERO).normalized()
    if not is_bell_inequality(ineq):
        raise RuntimeError("witness construction produced an invalid Bell inequality")
    if ineq.normalized_violation(model) != result.cf:
        raise RuntimeError("witness violation does not match the contextual fraction")
    return ineq


def optimal_support(result: FractionResult) -> list[dict]:
    """Global assignments carrying positive weight in ``b*``."""
    gs = global_assignments(result.model.scenario)
    return [g for g, w in zip(gs, result.weights) if w > 0]
