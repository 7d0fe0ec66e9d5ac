"""Exact two-phase simplex over the rationals.

Problems are maximisations ``max c.x`` subject to ``A x (<=|==|>=) b`` and
``x >= 0``.  Pivoting uses Bland's rule, so the method terminates on every
input.  Dual values are read off the final tableau: the reduced cost of the
unit column that opened each row is that row's dual value.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .rational import ZERO, RationalLike, Vector, as_rational, dot, format_rational

log = logging.getLogger(__name__)

SENSES = ("<=", "==", ">=")


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPProblem:
    c: Vector
    A: tuple
    b: Vector
    senses: tuple

    def __init__(self, c: Sequence[RationalLike], A: Sequence[Sequence[RationalLike]],
                 b: Sequence[RationalLike], senses: Optional[Sequence[str]] = None):
        c = tuple(as_rational(v) for v in c)
        A = tuple(tuple(as_rational(v) for v in row) for row in A)
        b = tuple(as_rational(v) for v in b)
        senses = tuple(senses) if senses is not None else ("<=",) * len(b)
        if len(A) != len(b) or len(senses) != len(b):
            raise ValueError("A, b and senses must have the same number of rows")
        for row in A:
            if len(row) != len(c):
                raise ValueError(f"row of length {len(row)} does not match {len(c)} variables")
        for s in senses:
            if s not in SENSES:
                raise ValueError(f"unknown constraint sense {s!r}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "senses", senses)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.b), len(self.c)


@dataclass(frozen=True)
class LPSolution:
    status: Status
    x: Optional[Vector] = None
    y: Optional[Vector] = None
    value: Optional[Fraction] = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class Tableau:
    """Dense simplex tableau; ``z`` is the reduced-cost row ``c_B B^-1 A - c``."""

    def __init__(self, rows: list, rhs: list, basis: list, cost: list):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = len(cost)
        self.set_cost(cost)
        self.pivots = 0

    def set_cost(self, cost: list) -> None:
        self.cost = cost
        z = [-cj for cj in cost]
        zval = ZERO
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if cb:
                row = self.rows[i]
                for j in range(self.ncols):
                    if row[j]:
                        z[j] += cb * row[j]
                zval += cb * self.rhs[i]
        self.z = z
        self.zval = zval

    def pivot(self, r: int, col: int) -> None:
        row = self.rows[r]
        p = row[col]
        if p != 1:
            row = [v / p for v in row]
            self.rows[r] = row
            self.rhs[r] = self.rhs[r] / p
        nz = [j for j, v in enumerate(row) if v]
        br = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[col]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[i] -= f * br
        f = self.z[col]
        if f:
            for j in nz:
                self.z[j] -= f * row[j]
            self.zval -= f * br
        self.basis[r] = col
        self.pivots += 1
        if log.isEnabledFor(logging.DEBUG):
            log.debug("pivot row %d col %d\n%s", r, col, self)

    def run(self, allowed: int) -> Status:
        """Bland's rule until optimal or unbounded; columns ``>= allowed`` never enter."""
        while True:
            col = next((j for j in range(allowed) if self.z[j] < 0), None)
            if col is None:
                return Status.OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return Status.UNBOUNDED
            self.pivot(best[1], col)

    def __str__(self) -> str:
        lines = []
        for bi, row, r in zip(self.basis, self.rows, self.rhs):
            cells = " ".join(f"{format_rational(v):>6}" for v in row)
            lines.append(f"x{bi:<4}| {cells} | {format_rational(r)}")
        cells = " ".join(f"{format_rational(v):>6}" for v in self.z)
        lines.append(f"z    | {cells} | {format_rational(self.zval)}")
        return "\n".join(lines)


def solve(problem: LPProblem) -> LPSolution:
    """Solve ``problem`` exactly.

    On an optimal result ``x`` is a basic optimal solution and ``y`` an optimal
    dual vector for ``min b.y`` s.t. ``A^T y >= c`` (``y_i >= 0`` on ``<=``
    rows, ``<= 0`` on ``>=`` rows, free on ``==`` rows), so that
    ``c.x == b.y``.
    """
    nrows, nvars = problem.shape
    flipped = []
    rows, rhs, senses = [], [], []
    for a, bi, sense in zip(problem.A, problem.b, problem.senses):
        a = list(a)
        if bi < 0:
            a = [-v for v in a]
            bi = -bi
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
            flipped.append(True)
        else:
            flipped.append(False)
        rows.append(a)
        rhs.append(bi)
        senses.append(sense)

    n_slack = sum(s != "==" for s in senses)
    n_art = sum(s != "<=" for s in senses)
    first_art = nvars + n_slack
    ncols = first_art + n_art

    table = []
    basis = []
    unit_col = []
    slack = nvars
    art = first_art
    for a, sense in zip(rows, senses):
        row = a + [ZERO] * (ncols - nvars)
        if sense == "<=":
            row[slack] = Fraction(1)
            basis.append(slack)
            unit_col.append(slack)
            slack += 1
        else:
            if sense == ">=":
                row[slack] = Fraction(-1)
                slack += 1
            row[art] = Fraction(1)
            basis.append(art)
            unit_col.append(art)
            art += 1
        table.append(row)

    if n_art:
        phase1 = [ZERO] * first_art + [Fraction(-1)] * n_art
        tab = Tableau(table, rhs, basis, phase1)
        tab.run(ncols)
        if tab.zval < 0:
            return LPSolution(Status.INFEASIBLE, pivots=tab.pivots)
        # Drive zero-level artificials out of the basis where possible; a row
        # with no structural/slack entry left is redundant and stays inert.
        for i in range(nrows):
            if tab.basis[i] >= first_art:
                col = next((j for j in range(first_art) if tab.rows[i][j]), None)
                if col is not None:
                    tab.pivot(i, col)
        tab.set_cost(list(problem.c) + [ZERO] * (ncols - nvars))
    else:
        tab = Tableau(table, rhs, basis, list(problem.c) + [ZERO] * (ncols - nvars))

    status = tab.run(first_art)
    if status is Status.UNBOUNDED:
        return LPSolution(Status.UNBOUNDED, pivots=tab.pivots)

    x = [ZERO] * nvars
    for i, bi in enumerate(tab.basis):
        if bi < nvars:
            x[bi] = tab.rhs[i]
    y = []
    for i in range(nrows):
        yi = tab.z[unit_col[i]]
        y.append(-yi if flipped[i] else yi)
    value = dot(problem.c, x)
    return LPSolution(Status.OPTIMAL, tuple(x), tuple(y), value, tab.pivots)


def maximize(c, A, b, senses=None) -> LPSolution:
    return solve(LPProblem(c, A, b, senses))


def minimize(c, A, b, senses=None) -> LPSolution:
    """Minimise ``c.x``; the reported value and duals refer to the minimisation."""
    sol = solve(LPProblem([-v for v in map(as_rational, c)], A, b, senses))
    if not sol.optimal:
        return sol
    return LPSolution(sol.status, sol.x, tuple(-v for v in sol.y), -sol.value, sol.pivots)
