"""Shared fixtures and independent oracles for the test-suite.

Nothing here calls the LP engine: these are the brute-force references the
library is checked against.
"""

import itertools
import random
from fractions import Fraction

from contextuality import catalog
from contextuality.model import deterministic_model, incidence_matrix, mix, model_from_vector
from contextuality.scenario import global_assignments


def random_weights(rng: random.Random, n: int, scale: int = 12, zeros: float = 0.0):
    """Random rational probability vector with small denominators."""
    while True:
        raw = [0 if rng.random() < zeros else rng.randint(0, scale) for _ in range(n)]
        total = sum(raw)
        if total:
            return [Fraction(r, total) for r in raw]


def pr_variants():
    """The eight PR boxes: outcome parity x^y = i*j ^ alpha*i ^ beta*j ^ gamma."""
    s = catalog.chsh_scenario()
    out = []
    for alpha, beta, gamma in itertools.product((0, 1), repeat=3):
        tables = {}
        for c in s.contexts:
            i = 0 if c[0] == "a" else 1
            j = 0 if c[1] == "b" else 1
            parity = (i * j) ^ (alpha * i) ^ (beta * j) ^ gamma
            tables[c] = [Fraction(1, 2) if (x ^ y) == parity else 0 for x, y in s.assignments(c)]
        out.append(model_from_vector(s, [p for c in s.contexts for p in tables[c]]))
    return out


def deterministic_models(scenario):
    return [deterministic_model(scenario, g) for g in global_assignments(scenario)]


def random_ns_model(rng: random.Random, pr_bias: float = 0.5):
    """A random point of the (2,2,2) no-signalling polytope.

    Mixes the 16 deterministic and 8 PR-box vertices; with probability
    ``1 - pr_bias`` no PR box takes part, so the model is local.
    """
    s = catalog.chsh_scenario()
    vertices = deterministic_models(s)
    if rng.random() < pr_bias:
        vertices = vertices + pr_variants()
    w = random_weights(rng, len(vertices), zeros=0.5)
    return mix(vertices, w)


def local_model_from(scenario, d):
    """``M d`` reshaped, computed without the LP code path."""
    M = incidence_matrix(scenario)
    vec = [sum((M[k][g] * d[g] for g in range(len(d))), Fraction(0)) for k in range(len(M))]
    return model_from_vector(scenario, vec)


def solve_exact(A, b):
    """Unique solution of a square system by Gauss-Jordan, or None if singular."""
    n = len(A)
    work = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(A, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if work[i][col]), None)
        if piv is None:
            return None
        work[col], work[piv] = work[piv], work[col]
        p = work[col][col]
        work[col] = [v / p for v in work[col]]
        for i in range(n):
            if i != col and work[i][col]:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    return [row[-1] for row in work]


def brute_force_lp(c, A, b):
    """Max of c.x over {A x <= b, x >= 0} by enumerating every basic solution.

    Returns None when the region is empty.  Assumes the region is bounded.
    """
    q = len(c)
    rows = [list(map(Fraction, r)) for r in A] + [[Fraction(-1 if j == k else 0) for k in range(q)] for j in range(q)]
    rhs = [Fraction(v) for v in b] + [Fraction(0)] * q
    best = None
    for active in itertools.combinations(range(len(rows)), q):
        x = solve_exact([rows[i] for i in active], [rhs[i] for i in active])
        if x is None:
            continue
        if all(sum(a * xi for a, xi in zip(r, x)) <= bi for r, bi in zip(rows, rhs)):
            val = sum(ci * xi for ci, xi in zip(c, x))
            if best is None or val > best:
                best = val
    return best
