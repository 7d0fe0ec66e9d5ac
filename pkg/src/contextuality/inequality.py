"""Linear inequalities ``a . v <= R`` on flattened empirical models."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .model import EmpiricalModel, incidence_matrix, local_index, vectorize
from .rational import ZERO, RationalLike, Vector, as_rational, dot, format_rational, primitive
from .scenario import Scenario


class TrivialInequalityError(ValueError):
    """Raised for an inequality with ``R >= ||a||``, which every model satisfies."""


class BellInequality:
    """Coefficients indexed by local assignments ``<C,s>`` plus a bound ``R``.

    A negative bound is shifted to zero on construction by adding ``-R/|M|``
    to every coefficient; each context block of a model sums to 1, so
    ``a.v - R`` is unchanged on all models.  Inequalities with ``R >= ||a||`` are refused
    unless ``allow_trivial`` is set; logical inequalities of satisfiable
    families legitimately have that form.
    """

    def __init__(self, scenario: Scenario, coefficients: Sequence[RationalLike],
                 bound: RationalLike, *, allow_trivial: bool = False):
        idx = local_index(scenario)
        a = [as_rational(v) for v in coefficients]
        if len(a) != len(idx):
            raise ValueError(f"expected {len(idx)} coefficients, got {len(a)}")
        R = as_rational(bound)
        if R < 0:
            shift = -R / len(scenario.contexts)
            a = [v + shift for v in a]
            R = ZERO
        self.scenario = scenario
        self.coefficients: Vector = tuple(a)
        self.bound: Fraction = R
        if not allow_trivial and self.bound >= self.algebraic_bound():
            raise TrivialInequalityError(
                f"bound {format_rational(R)} is not below the algebraic bound "
                f"{format_rational(self.algebraic_bound())}")

    def algebraic_bound(self) -> Fraction:
        """``||a||``: the sum over contexts of the largest coefficient."""
        idx = local_index(self.scenario)
        return sum((max(self.coefficients[k] for k in idx.block(c)) for c in self.scenario.contexts), ZERO)

    @property
    def is_trivial(self) -> bool:
        return self.bound >= self.algebraic_bound()

    def value(self, model: EmpiricalModel | Sequence[Fraction]) -> Fraction:
        v = vectorize(model) if isinstance(model, EmpiricalModel) else model
        return dot(self.coefficients, v)

    def violation(self, model) -> Fraction:
        return max(ZERO, self.value(model) - self.bound)

    def normalized_violation(self, model) -> Fraction:
        norm = self.algebraic_bound()
        if self.bound >= norm:
            raise TrivialInequalityError("normalised violation is undefined when R >= ||a||")
        return self.violation(model) / (norm - self.bound)

    def normalized(self) -> "BellInequality":
        """Positive rescaling so the largest coefficient magnitude is 1."""
        top = max((abs(v) for v in self.coefficients), default=ZERO)
        if not top:
            return self
        return BellInequality(self.scenario, [v / top for v in self.coefficients],
                              self.bound / top, allow_trivial=True)

    def integral(self) -> "BellInequality":
        """Positive rescaling to coprime integer coefficients and bound."""
        *a, R = primitive(self.coefficients + (self.bound,))
        return BellInequality(self.scenario, a, R, allow_trivial=True)

    def deterministic_values(self) -> list[Fraction]:
        """``a . delta^g`` for every global assignment ``g``, in canonical order."""
        M = incidence_matrix(self.scenario)
        out = [ZERO] * self.scenario.num_global
        for a, row in zip(self.coefficients, M):
            if a:
                for j, hit in enumerate(row):
                    if hit:
                        out[j] += a
        return out

    def saturating(self) -> frozenset:
        """Indices of the deterministic models attaining the bound."""
        return frozenset(i for i, val in enumerate(self.deterministic_values()) if val == self.bound)

    def __eq__(self, other):
        if not isinstance(other, BellInequality):
            return NotImplemented
        return (self.scenario == other.scenario and self.coefficients == other.coefficients
                and self.bound == other.bound)

    def __hash__(self):
        return hash((self.scenario, self.coefficients, self.bound))

    def __repr__(self):
        return f"BellInequality(bound={format_rational(self.bound)}, nonzero={sum(1 for v in self.coefficients if v)})"

    def __str__(self) -> str:
        idx = local_index(self.scenario)
        terms = []
        for k, v in enumerate(self.coefficients):
            if v:
                terms.append(f"{format_rational(v)}*p({idx.key(k)})")
        lhs = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"{lhs} <= {format_rational(self.bound)}"

    def to_json(self) -> dict:
        idx = local_index(self.scenario)
        return {
            "coefficients": {idx.key(k): format_rational(v) for k, v in enumerate(self.coefficients) if v},
            "bound": format_rational(self.bound),
        }

    @classmethod
    def from_json(cls, scenario: Scenario, data: Mapping, allow_trivial: bool = True) -> "BellInequality":
        idx = local_index(scenario)
        keys = {idx.key(k): k for k in range(len(idx))}
        a = [ZERO] * len(idx)
        for key, val in data.get("coefficients", {}).items():
            if key not in keys:
                raise ValueError(f"unknown local assignment {key!r}")
            a[keys[key]] = as_rational(val)
        return cls(scenario, a, as_rational(data["bound"]), allow_trivial=allow_trivial)


def is_bell_inequality(ineq: BellInequality, scenario: Scenario | None = None) -> bool:
    """True iff every deterministic model, hence every non-contextual one, satisfies it."""
    _check_scenario(ineq, scenario)
    return max(ineq.deterministic_values()) <= ineq.bound


def is_tight(ineq: BellInequality, scenario: Scenario | None = None) -> bool:
    """A Bell inequality saturated by some deterministic model."""
    _check_scenario(ineq, scenario)
    return max(ineq.deterministic_values()) == ineq.bound


def _check_scenario(ineq: BellInequality, scenario: Scenario | None) -> None:
    if scenario is not None and scenario != ineq.scenario:
        raise ValueError("inequality belongs to a different scenario")


def algebraic_bound(ineq: BellInequality) -> Fraction:
    return ineq.algebraic_bound()


def normalized_violation(ineq: BellInequality, model: EmpiricalModel) -> Fraction:
    return ineq.normalized_violation(model)


def positivity_inequality(scenario: Scenario, k: int) -> BellInequality:
    """``-p(<C,s>) <= 0`` for local index ``k``."""
    a = [ZERO] * scenario.num_local
    a[k] = Fraction(-1)
    return BellInequality(scenario, a, 0, allow_trivial=True)
