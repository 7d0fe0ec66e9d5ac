"""Facets of non-contextual polytopes and correlation-polytope membership.

Facets come from projecting ``{(v, d) : v = M d, 1.d = 1, d >= 0}`` onto
``v`` by Fourier-Motzkin elimination, with LP-based redundancy removal after
every step to keep the intermediate systems small.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import lp
from .inequality import BellInequality, positivity_inequality
from .logic import Formula
from .model import incidence_matrix
from .rational import ONE, ZERO, Vector, affine_rank, as_rational, dot, primitive
from .scenario import Scenario

log = logging.getLogger(__name__)

Row = tuple  # (coefficients, bound)

__all__ = [
    "LinearSystem", "ResourceLimitError", "fm_eliminate", "remove_redundant",
    "nc_polytope_facets", "nontrivial_facets", "facet_inequalities", "satisfies",
    "CorrelationPolytopeSpec", "CorrelationMembership", "correlation_membership",
]


class ResourceLimitError(RuntimeError):
    """Elimination would exceed the configured row limit."""

    def __init__(self, rows: int, limit: int, step: int):
        self.rows, self.limit, self.step = rows, limit, step
        super().__init__(f"elimination step {step} would create {rows} rows (limit {limit})")


def _row(coeffs, bound) -> Row:
    *a, b = primitive(tuple(coeffs) + (as_rational(bound),))
    return tuple(a), b


@dataclass(frozen=True)
class LinearSystem:
    """``a.x <= b`` for each inequality row and ``a.x == b`` for each equality row."""

    dim: int
    inequalities: tuple = ()
    equalities: tuple = ()

    def __post_init__(self):
        for coeffs, _ in self.inequalities + self.equalities:
            if len(coeffs) != self.dim:
                raise ValueError(f"row of length {len(coeffs)} in a system of dimension {self.dim}")

    @classmethod
    def build(cls, dim: int, inequalities=(), equalities=()) -> "LinearSystem":
        ineq = tuple(_row(a, b) for a, b in inequalities)
        eq = tuple((tuple(map(as_rational, a)), as_rational(b)) for a, b in equalities)
        return cls(dim, ineq, eq)

    def contains(self, x: Sequence[Fraction]) -> bool:
        return (all(dot(a, x) <= b for a, b in self.inequalities)
                and all(dot(a, x) == b for a, b in self.equalities))

    def drop_columns(self, keep: Sequence[int]) -> "LinearSystem":
        """Restrict to the columns ``keep``; the dropped columns must be zero."""
        keep = list(keep)
        dropped = set(range(self.dim)).difference(keep)

        def cut(rows):
            out = []
            for a, b in rows:
                if any(a[j] for j in dropped):
                    raise ValueError("cannot drop a column that is still in use")
                out.append((tuple(a[j] for j in keep), b))
            return tuple(out)

        return LinearSystem(len(keep), cut(self.inequalities), cut(self.equalities))


def _infeasible(dim: int) -> LinearSystem:
    return LinearSystem(dim, (((ZERO,) * dim, Fraction(-1)),), ())


def fm_eliminate(system: LinearSystem, var: int) -> LinearSystem:
    """Project out variable ``var``.

    An equality mentioning ``var`` is used to substitute it away, which is
    exact.  Otherwise every positive row is paired with every negative row.
    The column is kept (now zero) so indices stay stable.
    """
    if not 0 <= var < system.dim:
        raise IndexError(f"variable {var} out of range for dimension {system.dim}")
    pivot = next((k for k, (a, _) in enumerate(system.equalities) if a[var]), None)
    if pivot is not None:
        pa, pb = system.equalities[pivot]

        def substitute(a, b):
            f = a[var] / pa[var]
            if not f:
                return a, b
            return tuple(x - f * y for x, y in zip(a, pa)), b - f * pb

        ineq = [_row(*substitute(a, b)) for a, b in system.inequalities]
        eq = []
        for k, (a, b) in enumerate(system.equalities):
            if k == pivot:
                continue
            a, b = substitute(a, b)
            if not any(a):
                if b:
                    return _infeasible(system.dim)
                continue
            eq.append(_row(a, b))
        return LinearSystem(system.dim, tuple(_dedupe(ineq)), tuple(_dedupe(eq)))

    zero, pos, neg = [], [], []
    for a, b in system.inequalities:
        (pos if a[var] > 0 else neg if a[var] < 0 else zero).append((a, b))
    rows = list(zero)
    for (pa, pb), (na, nb) in itertools.product(pos, neg):
        s, t = -na[var], pa[var]
        rows.append(_row((s * x + t * y for x, y in zip(pa, na)), s * pb + t * nb))
    return LinearSystem(system.dim, tuple(_dedupe(rows)), system.equalities)


def _dedupe(rows):
    seen = set()
    for r in rows:
        if r not in seen:
            seen.add(r)
            yield r


def _maximize_free(objective, inequalities, equalities, columns) -> lp.LPSolution:
    """Maximise over free variables restricted to ``columns`` by splitting x = x+ - x-."""
    def split(a):
        part = [a[j] for j in columns]
        return part + [-v for v in part]

    A = [split(a) for a, _ in inequalities] + [split(a) for a, _ in equalities]
    b = [r for _, r in inequalities] + [r for _, r in equalities]
    senses = ["<="] * len(inequalities) + ["=="] * len(equalities)
    return lp.maximize(split(objective), A, b, senses)


def remove_redundant(system: LinearSystem) -> LinearSystem:
    """Drop every inequality implied by the remaining rows.

    Rows are examined in order; a row is implied when maximising its
    left-hand side over the other surviving rows cannot exceed its bound.
    """
    rows = []
    for a, b in _dedupe(system.inequalities):
        if not any(a):
            if b < 0:
                return _infeasible(system.dim)
            continue
        rows.append((a, b))

    columns = [j for j in range(system.dim)
               if any(a[j] for a, _ in rows) or any(a[j] for a, _ in system.equalities)]
    keep = [True] * len(rows)
    for i, (a, b) in enumerate(rows):
        others = [r for k, r in enumerate(rows) if keep[k] and k != i]
        sol = _maximize_free(a, others, system.equalities, columns)
        if sol.status is lp.Status.INFEASIBLE:
            return _infeasible(system.dim)
        if sol.optimal and sol.value <= b:
            keep[i] = False
    return LinearSystem(system.dim, tuple(r for r, k in zip(rows, keep) if k), system.equalities)


def nc_polytope_facets(scenario: Scenario, limit: int = 20000) -> LinearSystem:
    """H-representation of the non-contextual polytope in model-vector coordinates.

    Returns equalities spanning its affine hull (normalisation and
    no-signalling) and an irredundant list of facet inequalities.  Raises
    :class:`ResourceLimitError` if a pairing step would create more than
    ``limit`` rows.
    """
    M = incidence_matrix(scenario)
    m, n = scenario.num_local, scenario.num_global
    dim = m + n
    equalities = []
    for k in range(m):
        a = [ZERO] * dim
        a[k] = ONE
        for g in range(n):
            if M[k][g]:
                a[m + g] = -ONE
        equalities.append((a, ZERO))
    equalities.append(([ZERO] * m + [ONE] * n, ONE))
    inequalities = []
    for g in range(n):
        a = [ZERO] * dim
        a[m + g] = -ONE
        inequalities.append((a, ZERO))
    system = LinearSystem.build(dim, inequalities, equalities)
    # Every intermediate projection is the hull of the images of the
    # deterministic points, so facets can be recognised by rank alone.
    points = [tuple(M[k][g] for k in range(m)) + tuple(ONE if h == g else ZERO for h in range(n))
              for g in range(n)]

    remaining = set(range(m, dim))
    step = 0
    while remaining:
        # Substituting through an equality is exact and adds no redundancy,
        # so use up the equalities first.  Otherwise pair on the variable
        # that creates the fewest rows; only pairing needs the facet filter.
        g = next((j for j in sorted(remaining) if any(a[j] for a, _ in system.equalities)), None)
        paired = g is None
        if paired:
            g, projected = min(((j, _pair_count(system, j)) for j in sorted(remaining)), key=lambda t: t[1])
            if projected > limit:
                raise ResourceLimitError(projected, limit, step)
        system = fm_eliminate(system, g)
        remaining.discard(g)
        if paired:
            system = _keep_facets(system, points, [k for k in range(dim) if k < m or k in remaining])
        log.debug("eliminated column %d (%s): %d inequalities, %d equalities", g,
                  "paired" if paired else "substituted", len(system.inequalities), len(system.equalities))
        step += 1

    system = system.drop_columns(range(m))
    return LinearSystem(m, system.inequalities, _echelon(system.equalities, m))


def _keep_facets(system: LinearSystem, points, coords) -> LinearSystem:
    """Drop rows of a valid description of ``conv(points)`` that are not facets.

    A valid row is a facet iff the points it saturates span an affine space
    one dimension below the hull.  Rows with the same saturating set describe
    the same facet, so only the first is kept.
    """
    hull = affine_rank([tuple(p[k] for k in coords) for p in points])
    kept, seen = [], set()
    for a, b in system.inequalities:
        tight = frozenset(i for i, p in enumerate(points) if dot(a, p) == b)
        if tight in seen or len(tight) == len(points):
            continue
        if affine_rank([tuple(points[i][k] for k in coords) for i in tight]) == hull - 1:
            seen.add(tight)
            kept.append((a, b))
    return LinearSystem(system.dim, tuple(kept), system.equalities)


def _pair_count(system: LinearSystem, var: int) -> int:
    p = sum(1 for a, _ in system.inequalities if a[var] > 0)
    q = sum(1 for a, _ in system.inequalities if a[var] < 0)
    return len(system.inequalities) - p - q + p * q


def _echelon(rows, dim) -> tuple:
    """Reduced row echelon form of an equality system, zero rows removed."""
    work = [list(a) + [b] for a, b in rows]
    out = []
    r = 0
    for col in range(dim):
        pivot = next((i for i in range(r, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r][col]
        work[r] = [v / p for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
    for row in work[:r]:
        out.append(_row(row[:-1], row[-1]))
    return tuple(out)


def facet_inequalities(scenario: Scenario, system: LinearSystem) -> list[BellInequality]:
    """Every facet row as a Bell inequality, in integral form."""
    return [BellInequality(scenario, a, b, allow_trivial=True).integral() for a, b in system.inequalities]


def nontrivial_facets(scenario: Scenario, system: LinearSystem | None = None) -> list[BellInequality]:
    """Facets other than positivity ``p(<C,s>) >= 0``.

    Two facet inequalities of one polytope agree iff the same deterministic
    vertices saturate them, so positivity rows are recognised by their
    saturating sets regardless of how FM happened to write them.
    """
    if system is None:
        system = nc_polytope_facets(scenario)
    trivial = {positivity_inequality(scenario, k).saturating() for k in range(scenario.num_local)}
    return [f for f in facet_inequalities(scenario, system) if f.saturating() not in trivial]


def satisfies(system: LinearSystem, v: Sequence[Fraction]) -> bool:
    return system.contains(v)


# -- correlation polytopes -------------------------------------------------

@dataclass(frozen=True)
class CorrelationPolytopeSpec:
    """Basic events (binary measurements; ``E_i`` is "``events[i]`` = 0") and formulas over them."""

    events: tuple
    formulas: tuple
    true_value: str = "0"
    false_value: str = "1"

    def __init__(self, events: Sequence, formulas: Sequence[Formula],
                 true_value="0", false_value="1"):
        events = tuple(events)
        for f in formulas:
            stray = f.variables().difference(events)
            if stray:
                raise ValueError(f"formula {f} uses undeclared events {sorted(map(str, stray))}")
        object.__setattr__(self, "events", events)
        object.__setattr__(self, "formulas", tuple(formulas))
        object.__setattr__(self, "true_value", str(true_value))
        object.__setattr__(self, "false_value", str(false_value))

    @property
    def dim(self) -> int:
        return len(self.events) + len(self.formulas)

    def vertices(self) -> list[Vector]:
        """``v_s`` for each truth assignment ``s``, events true first."""
        out = []
        for bits in itertools.product((1, 0), repeat=len(self.events)):
            t = {e: (self.true_value if bit else self.false_value) for e, bit in zip(self.events, bits)}
            row = [Fraction(bit) for bit in bits]
            row += [ONE if f.evaluate(t) else ZERO for f in self.formulas]
            out.append(tuple(row))
        return out


@dataclass(frozen=True)
class CorrelationMembership:
    member: bool
    weights: Optional[Vector] = None  # convex weights on vertices() when a member
    normal: Optional[Vector] = None  # h with h.v > offset >= h.v_s for all vertices
    offset: Optional[Fraction] = None
    vertices: tuple = field(default=(), repr=False)

    def verify(self, v: Sequence[Fraction]) -> bool:
        """Re-check the certificate exactly."""
        if self.member:
            if any(w < 0 for w in self.weights) or sum(self.weights, ZERO) != ONE:
                return False
            comb = [sum((w * p[i] for w, p in zip(self.weights, self.vertices)), ZERO)
                    for i in range(len(v))]
            return tuple(comb) == tuple(v)
        return (dot(self.normal, v) > self.offset
                and all(dot(self.normal, p) <= self.offset for p in self.vertices))


def correlation_membership(spec: CorrelationPolytopeSpec, v: Sequence) -> CorrelationMembership:
    """Is ``v`` in the convex hull of the ``2^n`` vertices of ``spec``?

    Members get convex weights.  Non-members get a hyperplane ``(h, h0)``
    maximising ``h.v - h0`` over ``h.v_s <= h0`` with ``|h_i| <= 1``.
    """
    v = tuple(as_rational(x) for x in v)
    if len(v) != spec.dim:
        raise ValueError(f"expected a vector of length {spec.dim}, got {len(v)}")
    verts = spec.vertices()
    A = [[p[i] for p in verts] for i in range(spec.dim)] + [[ONE] * len(verts)]
    sol = lp.maximize([ZERO] * len(verts), A, list(v) + [ONE], ["=="] * (spec.dim + 1))
    if sol.optimal:
        return CorrelationMembership(True, weights=sol.x, vertices=tuple(verts))

    # variables: h+ (dim), h- (dim), h0+, h0-
    d = spec.dim
    c = list(v) + [-x for x in v] + [-ONE, ONE]
    rows, rhs = [], []
    for p in verts:
        rows.append(list(p) + [-x for x in p] + [-ONE, ONE])
        rhs.append(ZERO)
    for i in range(d):
        for sign in (1, -1):
            row = [ZERO] * (2 * d + 2)
            row[i], row[d + i] = Fraction(sign), Fraction(-sign)
            rows.append(row)
            rhs.append(ONE)
    sep = lp.maximize(c, rows, rhs)
    if not sep.optimal or sep.value <= 0:
        raise RuntimeError("membership LP infeasible but no separating hyperplane found")
    x = sep.x
    normal = tuple(x[i] - x[d + i] for i in range(d))
    offset = x[2 * d] - x[2 * d + 1]
    return CorrelationMembership(False, normal=normal, offset=offset, vertices=tuple(verts))
