"""Standard two-party, two-setting models and formula families.

All models live on :func:`chsh_scenario`, whose measurements are ``a, a'``
(Alice) and ``b, b'`` (Bob) with outcomes 0 and 1.  Rows list the outcomes
``(0,0), (0,1), (1,0), (1,1)``, Alice's outcome first.
"""

from __future__ import annotations

import functools

from .logic import ContextualizedFormula, parse
from .model import EmpiricalModel, make_model
from .scenario import Scenario, make_scenario

A, A2, B, B2 = "a", "a'", "b", "b'"


@functools.lru_cache(maxsize=None)
def chsh_scenario() -> Scenario:
    return make_scenario([A, A2, B, B2], [[A, B], [A, B2], [A2, B], [A2, B2]], [0, 1])


def _model(rows) -> EmpiricalModel:
    s = chsh_scenario()
    return make_model(s, dict(zip(s.contexts, rows)))


def bell_table() -> EmpiricalModel:
    """Bell-state statistics for planar measurements at relative angle pi/3."""
    return _model([
        ["1/2", 0, 0, "1/2"],
        ["3/8", "1/8", "1/8", "3/8"],
        ["3/8", "1/8", "1/8", "3/8"],
        ["1/8", "3/8", "3/8", "1/8"],
    ])


def pr_box() -> EmpiricalModel:
    """Perfect correlation on three contexts, perfect anticorrelation on ``a', b'``."""
    return _model([
        ["1/2", 0, 0, "1/2"],
        ["1/2", 0, 0, "1/2"],
        ["1/2", 0, 0, "1/2"],
        [0, "1/2", "1/2", 0],
    ])


def hardy_model() -> EmpiricalModel:
    """A rational no-signalling model with Hardy's zero pattern.

    ``p(a=0, b=0) > 0`` while ``a=0`` forces ``b'=1``, ``b=0`` forces
    ``a'=1`` and ``a'=1, b'=1`` never happens.
    """
    return _model([
        ["1/8", "1/8", "1/8", "5/8"],
        [0, "1/4", "3/4", 0],
        [0, "3/4", "1/4", 0],
        ["1/2", "1/4", "1/4", 0],
    ])


def uniform_model() -> EmpiricalModel:
    return _model([["1/4"] * 4] * 4)


def bell_formulas() -> list[ContextualizedFormula]:
    """The three correlation formulas and one anticorrelation formula."""
    return [
        ContextualizedFormula(parse("a <-> b"), [A, B]),
        ContextualizedFormula(parse("a <-> b'"), [A, B2]),
        ContextualizedFormula(parse("a' <-> b"), [A2, B]),
        ContextualizedFormula(parse("a' (+) b'"), [A2, B2]),
    ]
