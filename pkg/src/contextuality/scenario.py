"""Measurement scenarios: measurements, contexts, outcomes and assignment enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

Label = Hashable
Context = tuple  # measurement labels, in scenario measurement order
Assignment = tuple  # outcome labels aligned with a context (or with all measurements)


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    """A measurement scenario.

    ``contexts`` holds each context as a tuple of measurement labels listed in
    the order of ``measurements``; the contexts themselves are sorted
    lexicographically by measurement position.  Build instances through
    :func:`make_scenario`, which does the validation and ordering.
    """

    measurements: tuple
    contexts: tuple
    outcomes: tuple
    _position: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_position", {x: i for i, x in enumerate(self.measurements)})

    def position(self, measurement: Label) -> int:
        try:
            return self._position[measurement]
        except KeyError:
            raise ScenarioError(f"unknown measurement {measurement!r}") from None

    def sort_measurements(self, labels: Iterable[Label]) -> tuple:
        return tuple(sorted(set(labels), key=self.position))

    def find_context(self, labels: Iterable[Label]) -> Context:
        """Return the stored context equal (as a set) to ``labels``."""
        key = self.sort_measurements(labels)
        if key not in self.contexts:
            raise ScenarioError(f"{list(key)} is not a context of this scenario")
        return key

    def assignments(self, measurements: Sequence[Label]) -> Iterator[Assignment]:
        """All outcome tuples for ``measurements``, first label most significant."""
        return itertools.product(self.outcomes, repeat=len(measurements))

    def outcome_key(self, text: str) -> Label:
        """Map the string form of an outcome back to the outcome label."""
        for o in self.outcomes:
            if str(o) == text:
                return o
        raise ScenarioError(f"unknown outcome {text!r}")

    @property
    def num_global(self) -> int:
        return len(self.outcomes) ** len(self.measurements)

    @property
    def num_local(self) -> int:
        return sum(len(self.outcomes) ** len(c) for c in self.contexts)

    def to_json(self) -> dict:
        return {
            "measurements": list(self.measurements),
            "outcomes": list(self.outcomes),
            "contexts": [list(c) for c in self.contexts],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Scenario":
        try:
            return make_scenario(data["measurements"], data["contexts"], data["outcomes"])
        except KeyError as exc:
            raise ScenarioError(f"scenario JSON lacks key {exc}") from None


def make_scenario(measurements: Iterable[Label], contexts: Iterable[Iterable[Label]],
                  outcomes: Iterable[Label]) -> Scenario:
    xs = tuple(measurements)
    os_ = tuple(outcomes)
    if not xs:
        raise ScenarioError("a scenario needs at least one measurement")
    if not os_:
        raise ScenarioError("a scenario needs at least one outcome")
    if len(set(xs)) != len(xs):
        raise ScenarioError("duplicate measurement labels")
    if len(set(map(str, os_))) != len(os_):
        raise ScenarioError("duplicate outcome labels")
    pos = {x: i for i, x in enumerate(xs)}

    cs = []
    for raw in contexts:
        raw = list(raw)
        if not raw:
            raise ScenarioError("empty context")
        for x in raw:
            if x not in pos:
                raise ScenarioError(f"context mentions unknown measurement {x!r}")
        if len(set(raw)) != len(raw):
            raise ScenarioError(f"context {raw} repeats a measurement")
        cs.append(tuple(sorted(raw, key=pos.__getitem__)))
    if len(set(cs)) != len(cs):
        raise ScenarioError("duplicate contexts")
    covered = {x for c in cs for x in c}
    missing = [x for x in xs if x not in covered]
    if missing:
        raise ScenarioError(f"measurements {missing} belong to no context")
    cs.sort(key=lambda c: [pos[x] for x in c])
    return Scenario(xs, tuple(cs), os_)


def bell_scenario(parties: int, settings: int, outcomes: int = 2) -> Scenario:
    """The (n, k, o) Bell scenario.

    Party ``p`` owns measurements ``"p:0" .. "p:k-1"``; a context picks one
    setting per party.  Outcomes are ``0 .. o-1``.
    """
    if parties < 1 or settings < 1 or outcomes < 1:
        raise ScenarioError("parties, settings and outcomes must all be positive")
    labels = [[f"{p}:{s}" for s in range(settings)] for p in range(parties)]
    xs = [x for row in labels for x in row]
    contexts = itertools.product(*labels)
    return make_scenario(xs, contexts, range(outcomes))


def restrict(assignment: Mapping[Label, Label], labels: Sequence[Label]) -> Assignment:
    """Restriction ``g|_U`` as an outcome tuple aligned with ``labels``."""
    return tuple(assignment[x] for x in labels)


def global_assignments(scenario: Scenario) -> list[dict]:
    """Every global assignment, in mixed-radix order over the measurement order."""
    xs = scenario.measurements
    return [dict(zip(xs, values)) for values in scenario.assignments(xs)]


class LocalIndex(Sequence):
    """Canonical enumeration of the local assignments ``<C, s>``.

    Contexts follow scenario order; within a context, outcome tuples follow
    :meth:`Scenario.assignments`.
    """

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self._pairs = [(c, s) for c in scenario.contexts for s in scenario.assignments(c)]
        self._index = {p: i for i, p in enumerate(self._pairs)}
        self._blocks = {}
        start = 0
        for c in scenario.contexts:
            size = len(scenario.outcomes) ** len(c)
            self._blocks[c] = range(start, start + size)
            start += size

    def __len__(self) -> int:
        return len(self._pairs)

    def __getitem__(self, i):
        return self._pairs[i]

    def index(self, context: Context, assignment: Assignment) -> int:  # type: ignore[override]
        try:
            return self._index[(tuple(context), tuple(assignment))]
        except KeyError:
            raise ScenarioError(f"no local assignment {assignment} on {context}") from None

    def block(self, context: Context) -> range:
        """Positions of the local assignments belonging to ``context``."""
        return self._blocks[tuple(context)]

    def key(self, i: int) -> str:
        c, s = self._pairs[i]
        return ",".join(map(str, c)) + "|" + ",".join(map(str, s))


def local_index(scenario: Scenario) -> LocalIndex:
    return LocalIndex(scenario)
