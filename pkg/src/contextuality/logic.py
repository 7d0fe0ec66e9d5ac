"""Propositional formulas over measurement outcomes and logical Bell inequalities.

An atom ``a=0`` is the event "measurement ``a`` yields outcome ``0``".  A
family of formulas whose largest jointly satisfiable subfamily has size K
gives the inequality ``sum_i p(phi_i) <= K`` on every non-contextual model.

Text syntax, loosest binding first::

    f <-> g     f -> g (right associative)     f | g     f (+) g     f & g     !f

A bare label ``a`` abbreviates ``a=0``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .inequality import BellInequality
from .model import EmpiricalModel, local_index
from .rational import ZERO
from .scenario import Scenario

__all__ = [
    "LogicError", "Formula", "Atom", "Not", "And", "Or", "Implies", "Iff", "Xor",
    "parse", "evaluate", "ContextualizedFormula", "k_consistency", "event_probability",
    "logical_bell_inequality", "check_logical_bell", "LogicalBellReport", "logical_bell_report",
]


class LogicError(ValueError):
    pass


class Formula:
    def variables(self) -> frozenset:
        raise NotImplementedError

    def evaluate(self, t: Mapping) -> bool:
        raise NotImplementedError

    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __xor__(self, other):
        return Xor(self, other)

    def implies(self, other):
        return Implies(self, other)

    def iff(self, other):
        return Iff(self, other)


@dataclass(frozen=True)
class Atom(Formula):
    measurement: object
    value: str = "0"

    def __post_init__(self):
        object.__setattr__(self, "value", str(self.value))

    def variables(self):
        return frozenset([self.measurement])

    def evaluate(self, t):
        try:
            return str(t[self.measurement]) == self.value
        except KeyError:
            raise LogicError(f"unbound variable {self.measurement!r}") from None

    def __str__(self):
        return f"{self.measurement}={self.value}"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def variables(self):
        return self.arg.variables()

    def evaluate(self, t):
        return not self.arg.evaluate(t)

    def __str__(self):
        return f"!{_wrap(self.arg)}"


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula
    symbol = "?"

    def variables(self):
        return self.left.variables() | self.right.variables()

    def evaluate(self, t):
        return self.combine(self.left.evaluate(t), self.right.evaluate(t))

    @staticmethod
    def combine(x: bool, y: bool) -> bool:
        raise NotImplementedError

    def __str__(self):
        return f"{_wrap(self.left)} {self.symbol} {_wrap(self.right)}"


class And(_Binary):
    symbol = "&"
    combine = staticmethod(lambda x, y: x and y)


class Or(_Binary):
    symbol = "|"
    combine = staticmethod(lambda x, y: x or y)


class Xor(_Binary):
    symbol = "(+)"
    combine = staticmethod(lambda x, y: x != y)


class Implies(_Binary):
    symbol = "->"
    combine = staticmethod(lambda x, y: (not x) or y)


class Iff(_Binary):
    symbol = "<->"
    combine = staticmethod(lambda x, y: x == y)


def _wrap(f: Formula) -> str:
    return f"({f})" if isinstance(f, _Binary) else str(f)


def evaluate(formula: Formula, assignment: Mapping) -> bool:
    return formula.evaluate(assignment)


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(<->|->|\(\+\)|[!&|()~^])|([\w][\w':]*)(?:\s*=\s*([\w+\-.]+))?)")


def _tokenize(text: str) -> list:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise LogicError(f"cannot parse formula at {text[pos:]!r}")
        op, name, value = m.groups()
        out.append(("op", {"~": "!", "^": "(+)"}.get(op, op)) if op else ("atom", name, value))
        pos = m.end()
    return out


def parse(text: str, default_value: str = "0") -> Formula:
    """Parse the text syntax described in the module docstring."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(op):
        nonlocal pos
        tok = peek()
        if tok and tok[0] == "op" and tok[1] == op:
            pos += 1
            return True
        return False

    def binary(next_level, op, node, right_assoc=False):
        def level():
            left = next_level()
            while take(op):
                right = level() if right_assoc else next_level()
                left = node(left, right)
                if right_assoc:
                    break
            return left
        return level

    def unary():
        nonlocal pos
        if take("!"):
            return Not(unary())
        if take("("):
            inner = iff()
            if not take(")"):
                raise LogicError(f"missing ')' in {text!r}")
            return inner
        tok = peek()
        if tok is None or tok[0] != "atom":
            raise LogicError(f"expected an atom in {text!r}")
        pos += 1
        return Atom(tok[1], tok[2] if tok[2] is not None else default_value)

    conj = binary(unary, "&", And)
    xor = binary(conj, "(+)", Xor)
    disj = binary(xor, "|", Or)
    impl = binary(disj, "->", Implies, right_assoc=True)
    iff = binary(impl, "<->", Iff)

    result = iff()
    if pos != len(tokens):
        raise LogicError(f"trailing input in {text!r}")
    return result


# -- K-consistency and probabilities ----------------------------------------

def k_consistency(formulas: Sequence[Formula], outcomes: Sequence = (0, 1),
                  variables: Iterable | None = None) -> int:
    """Largest number of formulas (with multiplicity) satisfied by one assignment.

    Exhaustive over ``outcomes ** len(variables)``; ``variables`` defaults to
    every variable mentioned, in first-appearance order.
    """
    if not formulas:
        raise LogicError("K-consistency of an empty family is undefined")
    if variables is None:
        seen: dict = {}
        for f in formulas:
            for v in sorted(f.variables(), key=str):
                seen.setdefault(v, None)
        variables = list(seen)
    else:
        variables = list(variables)
    best = 0
    for values in itertools.product(outcomes, repeat=len(variables)):
        t = dict(zip(variables, values))
        hits = sum(1 for f in formulas if f.evaluate(t))
        if hits > best:
            best = hits
            if best == len(formulas):
                break
    return best


@dataclass(frozen=True)
class ContextualizedFormula:
    """A formula evaluated in one declared context."""

    formula: Formula
    context: tuple

    def __init__(self, formula: Formula | str, context: Iterable):
        if isinstance(formula, str):
            formula = parse(formula)
        context = tuple(context)
        stray = formula.variables().difference(context)
        if stray:
            raise LogicError(f"formula {formula} mentions {sorted(map(str, stray))} outside "
                             f"its context {list(context)}")
        object.__setattr__(self, "formula", formula)
        object.__setattr__(self, "context", context)

    def to_json(self) -> dict:
        return {"context": list(self.context), "formula": str(self.formula)}

    @classmethod
    def from_json(cls, data: Mapping) -> "ContextualizedFormula":
        return cls(parse(data["formula"]), data["context"])


def _resolve(scenario: Scenario, cf: ContextualizedFormula) -> tuple:
    try:
        return scenario.find_context(cf.context)
    except ValueError as exc:
        raise LogicError(str(exc)) from None


def event_probability(model: EmpiricalModel, cf: ContextualizedFormula) -> Fraction:
    context = _resolve(model.scenario, cf)
    dist = model.distributions[context]
    return sum((p for s, p in dist.probs.items() if cf.formula.evaluate(dict(zip(context, s)))), ZERO)


def logical_bell_inequality(scenario: Scenario, cfs: Sequence[ContextualizedFormula]) -> BellInequality:
    """``sum_i p(phi_i) <= K`` as an inequality on model vectors.

    The coefficient of ``<C,s>`` counts the formulas declared in context ``C``
    that ``s`` satisfies.
    """
    if not cfs:
        raise LogicError("empty formula family")
    idx = local_index(scenario)
    a = [0] * len(idx)
    for cf in cfs:
        context = _resolve(scenario, cf)
        for k in idx.block(context):
            if cf.formula.evaluate(dict(zip(context, idx[k][1]))):
                a[k] += 1
    K = k_consistency([cf.formula for cf in cfs], scenario.outcomes)
    return BellInequality(scenario, a, K, allow_trivial=True)


def check_logical_bell(model: EmpiricalModel, cfs: Sequence[ContextualizedFormula]) -> Fraction:
    """Violation ``max(0, sum_i p(phi_i) - K)``."""
    return logical_bell_report(model, cfs).violation


@dataclass(frozen=True)
class LogicalBellReport:
    probabilities: tuple
    total: Fraction
    K: int
    violation: Fraction


def logical_bell_report(model: EmpiricalModel, cfs: Sequence[ContextualizedFormula]) -> LogicalBellReport:
    if not cfs:
        raise LogicError("empty formula family")
    probs = tuple(event_probability(model, cf) for cf in cfs)
    total = sum(probs, ZERO)
    K = k_consistency([cf.formula for cf in cfs], model.scenario.outcomes)
    return LogicalBellReport(probs, total, K, max(ZERO, total - K))
