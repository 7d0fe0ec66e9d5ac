"""Empirical models: per-context probability tables over a scenario."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rational import ONE, ZERO, RationalLike, Vector, as_rational, format_rational
from .scenario import Assignment, Context, LocalIndex, Scenario, ScenarioError, global_assignments

__all__ = [
    "ModelError",
    "SignallingError",
    "Violation",
    "ContextDistribution",
    "EmpiricalModel",
    "make_model",
    "marginalize",
    "check_compatibility",
    "deterministic_model",
    "mix",
    "vectorize",
    "model_from_vector",
    "incidence_matrix",
    "local_index",
]


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    """Disagreeing marginals of two contexts on their overlap.

    ``outcome`` is the first overlap assignment where they differ, with
    ``lhs``/``rhs`` the two marginal probabilities there.
    """

    context: Context
    other: Context
    overlap: tuple
    outcome: Assignment
    lhs: Fraction
    rhs: Fraction

    def __str__(self) -> str:
        where = ", ".join(f"{x}={o}" for x, o in zip(self.overlap, self.outcome))
        return (f"contexts {list(self.context)} and {list(self.other)} disagree on "
                f"{list(self.overlap)}: p({where}) = {format_rational(self.lhs)} vs "
                f"{format_rational(self.rhs)}")


class SignallingError(ModelError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        super().__init__("no-signalling violated: " + "; ".join(map(str, self.violations)))


@dataclass(frozen=True)
class ContextDistribution:
    context: Context
    probs: Mapping  # Assignment -> Fraction, one entry per element of O^C

    def __getitem__(self, assignment: Assignment) -> Fraction:
        return self.probs[tuple(assignment)]

    def support(self) -> frozenset:
        return frozenset(s for s, p in self.probs.items() if p > 0)


def marginalize(dist: ContextDistribution, labels: Iterable) -> dict:
    """Marginal of ``dist`` on the measurements ``labels``.

    The result is keyed by outcome tuples aligned with ``labels`` in the order
    they appear in the context.  ``labels = ()`` gives ``{(): 1}``.
    """
    wanted = set(labels)
    unknown = wanted.difference(dist.context)
    if unknown:
        raise ModelError(f"{sorted(map(str, unknown))} not in context {list(dist.context)}")
    keep = [i for i, x in enumerate(dist.context) if x in wanted]
    out: dict = {}
    for s, p in dist.probs.items():
        t = tuple(s[i] for i in keep)
        out[t] = out.get(t, ZERO) + p
    return out


class EmpiricalModel:
    """A family of distributions, one per context of ``scenario``.

    Construct with :func:`make_model`.  Instances are treated as immutable.
    """

    def __init__(self, scenario: Scenario, distributions: Mapping[Context, ContextDistribution]):
        self.scenario = scenario
        self.distributions = dict(distributions)

    def __getitem__(self, context) -> ContextDistribution:
        return self.distributions[self.scenario.find_context(context)]

    def __iter__(self):
        return iter(self.distributions.values())

    def __eq__(self, other):
        if not isinstance(other, EmpiricalModel):
            return NotImplemented
        return self.scenario == other.scenario and vectorize(self) == vectorize(other)

    def __hash__(self):
        return hash((self.scenario, vectorize(self)))

    def __repr__(self):
        return f"EmpiricalModel({len(self.distributions)} contexts)"

    def table(self) -> str:
        """Plain-text table, one row per context."""
        lines = []
        for c, dist in self.distributions.items():
            cells = " ".join(f"{format_rational(p):>7}" for p in dist.probs.values())
            lines.append(f"{','.join(map(str, c)):<16} {cells}")
        return "\n".join(lines)

    def to_json(self, scenario_ref=None) -> dict:
        return {
            "scenario": scenario_ref if scenario_ref is not None else self.scenario.to_json(),
            "tables": {
                ",".join(map(str, c)): {
                    ",".join(map(str, s)): format_rational(p) for s, p in d.probs.items()
                }
                for c, d in self.distributions.items()
            },
        }

    @classmethod
    def from_json(cls, data: Mapping, scenario: Scenario | None = None,
                  check: bool = True) -> "EmpiricalModel":
        if scenario is None:
            scenario = Scenario.from_json(data["scenario"])
        if "tables" not in data:
            raise ModelError("model JSON lacks 'tables'")
        tables = {}
        for ckey, row in data["tables"].items():
            labels = [_measurement_key(scenario, x) for x in ckey.split(",")]
            context = scenario.find_context(labels)
            order = [labels.index(x) for x in context]
            entries = {}
            for skey, p in row.items():
                raw = skey.split(",")
                if len(raw) != len(labels):
                    raise ModelError(f"assignment {skey!r} does not fit context {ckey!r}")
                outcome = [scenario.outcome_key(v) for v in raw]
                entries[tuple(outcome[i] for i in order)] = p
            tables[context] = entries
        return make_model(scenario, tables, check=check)


def _measurement_key(scenario: Scenario, text: str):
    for x in scenario.measurements:
        if str(x) == text:
            return x
    raise ScenarioError(f"unknown measurement {text!r}")


def make_model(scenario: Scenario, tables, check: bool = True) -> EmpiricalModel:
    """Validate per-context tables into a model.

    ``tables`` maps each context (any iterable of its labels) either to a
    mapping ``assignment -> probability`` or to a sequence of probabilities in
    canonical assignment order.  Missing assignments count as zero.  With
    ``check=False`` the no-signalling test is skipped (rows must still be
    distributions).
    """
    given = {}
    for key, row in tables.items():
        given[scenario.find_context(key)] = row
    missing = [c for c in scenario.contexts if c not in given]
    if missing:
        raise ModelError(f"no table for contexts {[list(c) for c in missing]}")

    dists = {}
    for c in scenario.contexts:
        row = given[c]
        outcomes = list(scenario.assignments(c))
        if isinstance(row, Mapping):
            probs = {s: ZERO for s in outcomes}
            for s, p in row.items():
                s = tuple(s) if isinstance(s, (tuple, list)) else (s,)
                if s not in probs:
                    raise ModelError(f"{s} is not an outcome of context {list(c)}")
                probs[s] = as_rational(p)
        else:
            values = list(row)
            if len(values) != len(outcomes):
                raise ModelError(f"context {list(c)} needs {len(outcomes)} entries, got {len(values)}")
            probs = dict(zip(outcomes, (as_rational(p) for p in values)))
        for s, p in probs.items():
            if p < 0:
                raise ModelError(f"negative probability {p} at {list(c)}={s}")
        total = sum(probs.values(), ZERO)
        if total != ONE:
            raise ModelError(f"row {list(c)} sums to {format_rational(total)}, not 1")
        dists[c] = ContextDistribution(c, probs)

    model = EmpiricalModel(scenario, dists)
    if check:
        violations = check_compatibility(model)
        if violations:
            raise SignallingError(violations)
    return model


def check_compatibility(model: EmpiricalModel) -> list[Violation]:
    """Pairwise overlap-marginal comparison; an empty list means compatible."""
    out = []
    contexts = model.scenario.contexts
    for i, c in enumerate(contexts):
        for d in contexts[i + 1:]:
            overlap = tuple(x for x in c if x in d)
            if not overlap:
                continue
            left = marginalize(model.distributions[c], overlap)
            right = marginalize(model.distributions[d], overlap)
            for t in model.scenario.assignments(overlap):
                if left[t] != right[t]:
                    out.append(Violation(c, d, overlap, t, left[t], right[t]))
                    break
    return out


def deterministic_model(scenario: Scenario, assignment: Mapping) -> EmpiricalModel:
    missing = [x for x in scenario.measurements if x not in assignment]
    if missing:
        raise ModelError(f"assignment is not total: missing {missing}")
    tables = {}
    for c in scenario.contexts:
        hit = tuple(assignment[x] for x in c)
        tables[c] = {s: (ONE if s == hit else ZERO) for s in scenario.assignments(c)}
    return make_model(scenario, tables, check=False)


def mix(models: Sequence[EmpiricalModel], weights: Sequence[RationalLike]) -> EmpiricalModel:
    """Context-wise convex combination."""
    if not models or len(models) != len(weights):
        raise ModelError("need one weight per model")
    ws = [as_rational(w) for w in weights]
    if any(w < 0 for w in ws) or sum(ws, ZERO) != ONE:
        raise ModelError("weights must be non-negative and sum to 1")
    scenario = models[0].scenario
    if any(m.scenario != scenario for m in models[1:]):
        raise ModelError("cannot mix models over different scenarios")
    vec = [ZERO] * scenario.num_local
    for m, w in zip(models, ws):
        if w:
            for k, p in enumerate(vectorize(m)):
                vec[k] += w * p
    return model_from_vector(scenario, vec, check=False)


@functools.lru_cache(maxsize=64)
def local_index(scenario: Scenario) -> LocalIndex:
    return LocalIndex(scenario)


def vectorize(model: EmpiricalModel) -> Vector:
    """The flattened table ``v[<C,s>] = e_C(s)`` in local-index order."""
    return tuple(p for c in model.scenario.contexts for p in model.distributions[c].probs.values())


def model_from_vector(scenario: Scenario, vec: Sequence[RationalLike], check: bool = True) -> EmpiricalModel:
    idx = local_index(scenario)
    if len(vec) != len(idx):
        raise ModelError(f"expected a vector of length {len(idx)}, got {len(vec)}")
    tables = {c: [vec[k] for k in idx.block(c)] for c in scenario.contexts}
    return make_model(scenario, tables, check=check)


@functools.lru_cache(maxsize=64)
def incidence_matrix(scenario: Scenario) -> tuple:
    """The m x n 0/1 matrix with ``M[<C,s>, g] = 1`` iff ``g|_C = s``."""
    idx = local_index(scenario)
    gs = global_assignments(scenario)
    rows = [[0] * len(gs) for _ in range(len(idx))]
    for j, g in enumerate(gs):
        for c in scenario.contexts:
            rows[idx.index(c, tuple(g[x] for x in c))][j] = 1
    return tuple(tuple(Fraction(v) for v in r) for r in rows)
