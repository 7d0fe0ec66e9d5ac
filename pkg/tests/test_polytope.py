import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from contextuality import catalog
from contextuality.fraction import membership_nc
from contextuality.inequality import is_bell_inequality, is_tight
from contextuality.logic import logical_bell_inequality, parse
from contextuality.model import vectorize
from contextuality.polytope import (CorrelationPolytopeSpec, LinearSystem, ResourceLimitError,
                                    correlation_membership, fm_eliminate, nc_polytope_facets,
                                    nontrivial_facets, remove_redundant, satisfies)
from contextuality.scenario import bell_scenario, make_scenario

from helpers import random_ns_model


def test_fm_triangle():
    # x >= 0, y >= 0, x + y <= 1; eliminating y leaves 0 <= x <= 1.
    s = LinearSystem.build(2, [([-1, 0], 0), ([0, -1], 0), ([1, 1], 1)])
    out = remove_redundant(fm_eliminate(s, 1))
    assert set(out.inequalities) == {((-1, 0), 0), ((1, 0), 1)}


def test_fm_equality_substitution():
    # x = 2y, y <= 3  ->  x <= 6
    s = LinearSystem.build(2, [([0, 1], 3)], [([1, -2], 0)])
    out = fm_eliminate(s, 1)
    assert out.equalities == ()
    assert [(tuple(a), b) for a, b in out.inequalities] == [((1, 0), 6)]


def _grid_projection_oracle(system, var, points):
    """x is in the projection iff some grid value of ``var`` completes it."""
    lifted = [F(k, 4) for k in range(-12, 13)]
    out = []
    for p in points:
        ok = False
        for t in lifted:
            full = list(p)
            full[var] = t
            if system.contains(full):
                ok = True
                break
        out.append(ok)
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_fm_against_grid(seed):
    rng = random.Random(seed)
    rows = [([rng.choice([-2, -1, 0, 1, 2]) for _ in range(3)], rng.randint(0, 3)) for _ in range(5)]
    rows += [([1 if j == k else 0 for j in range(3)], 2) for k in range(3)]
    rows += [([-1 if j == k else 0 for j in range(3)], 2) for k in range(3)]
    system = LinearSystem.build(3, rows)
    projected = remove_redundant(fm_eliminate(system, 2))
    assert all(a[2] == 0 for a, _ in projected.inequalities)
    grid = [F(k, 2) for k in range(-5, 6)]
    points = [(x, y, F(0)) for x in grid for y in grid]
    oracle = _grid_projection_oracle(system, 2, points)
    for p, inside in zip(points, oracle):
        if inside:
            assert projected.contains(p)
    # the grid is coarse, so only check the other direction on points with slack
    for p in points:
        if projected.contains(p) and all(sum(a * x for a, x in zip(r, p)) < b for r, b in projected.inequalities):
            assert any(system.contains((p[0], p[1], F(k, 32))) for k in range(-64, 65))


def test_redundancy_removal_preserves_set():
    rows = [([1, 0], 1), ([0, 1], 1), ([-1, 0], 0), ([0, -1], 0), ([1, 1], 2), ([1, 1], 5)]
    s = LinearSystem.build(2, rows)
    r = remove_redundant(s)
    assert len(r.inequalities) == 4
    for x, y in itertools.product([F(k, 3) for k in range(-2, 6)], repeat=2):
        assert s.contains((x, y)) == r.contains((x, y))


def test_chsh_facet_counts(chsh_facets):
    s = catalog.chsh_scenario()
    facets = nontrivial_facets(s, chsh_facets)
    assert len(facets) == 8
    assert len(chsh_facets.inequalities) == 24
    assert all(is_bell_inequality(f) and is_tight(f) for f in facets)
    assert len({f.saturating() for f in facets}) == 8


def test_chsh_facet_matches_logical_inequality(chsh_facets):
    s = catalog.chsh_scenario()
    logical = logical_bell_inequality(s, catalog.bell_formulas())
    violated = [f for f in nontrivial_facets(s, chsh_facets) if f.violation(catalog.bell_table()) > 0]
    assert len(violated) == 1
    f = violated[0]
    assert f.saturating() == logical.saturating()
    gap = lambda m: f.value(m) - f.bound  # noqa: E731
    assert gap(catalog.bell_table()) / gap(catalog.pr_box()) == F(1, 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_facets_agree_with_lp(chsh_facets, seed):
    m = random_ns_model(random.Random(seed))
    assert satisfies(chsh_facets, vectorize(m)) == membership_nc(m).member


def test_resource_limit():
    with pytest.raises(ResourceLimitError) as info:
        nc_polytope_facets(bell_scenario(2, 3, 2), limit=10)
    assert info.value.limit == 10


def test_single_context_polytope_is_simplex():
    s = make_scenario(["x"], [["x"]], [0, 1])
    system = nc_polytope_facets(s)
    assert system.contains((F(1, 3), F(2, 3)))
    assert not system.contains((F(4, 3), F(-1, 3)))


def _bell_spec():
    events = ["a", "b", "a'", "b'"]
    formulas = [parse("a <-> b"), parse("a <-> b'"), parse("a' <-> b"), parse("a' (+) b'")]
    return CorrelationPolytopeSpec(events, formulas)


def test_correlation_vertices():
    spec = _bell_spec()
    verts = spec.vertices()
    assert len(verts) == 16 and len(set(verts)) == 16
    assert verts[0] == (1, 1, 1, 1, 1, 1, 1, 0)
    for v in verts:
        mem = correlation_membership(spec, v)
        assert mem.member and mem.verify(v)


def test_correlation_rejects_bell_vector():
    spec = _bell_spec()
    v = [F(1, 2)] * 4 + [1, F(3, 4), F(3, 4), F(3, 4)]
    mem = correlation_membership(spec, v)
    assert not mem.member
    assert mem.verify(v)


def test_correlation_interior_point():
    spec = _bell_spec()
    verts = spec.vertices()
    centroid = [sum(p[i] for p in verts) / len(verts) for i in range(spec.dim)]
    mem = correlation_membership(spec, centroid)
    assert mem.member and mem.verify(centroid)


def test_correlation_bad_input():
    with pytest.raises(ValueError):
        correlation_membership(_bell_spec(), [0, 1])
    with pytest.raises(ValueError):
        CorrelationPolytopeSpec(["a"], [parse("b")])


def test_facets_have_full_rank_saturating_sets(chsh_facets):
    # independent of FM: a facet of an 8-dimensional polytope is saturated by
    # vertices spanning a 7-dimensional affine space
    from contextuality.rational import affine_rank
    from helpers import deterministic_models
    s = catalog.chsh_scenario()
    verts = [vectorize(d) for d in deterministic_models(s)]
    assert affine_rank(verts) == 8
    for a, b in chsh_facets.inequalities:
        tight = [v for v in verts if sum(x * y for x, y in zip(a, v)) == b]
        assert affine_rank(tight) == 7


def test_fm_hand_case():
    # {x <= 1, -x <= 0, x - y <= 0}, eliminate x -> {0 <= 1, -y <= 0}
    s = LinearSystem.build(2, [([1, 0], 1), ([-1, 0], 0), ([1, -1], 0)])
    out = fm_eliminate(s, 0)
    assert set(out.inequalities) == {((0, 0), 1), ((0, -1), 0)}


def test_fm_absent_variable():
    s = LinearSystem.build(2, [([1, 0], 1), ([-1, 0], 0)])
    assert fm_eliminate(s, 1).inequalities == s.inequalities


@pytest.mark.parametrize("rows, kept", [
    ([([1], 1), ([1], 2)], {((1,), 1)}),
    ([([1], 1), ([2], 2), ([-1], 0)], {((1,), 1), ((-1,), 0)}),
])
def test_remove_redundant_examples(rows, kept):
    assert set(remove_redundant(LinearSystem.build(1, rows)).inequalities) == kept


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_full_elimination_decides_feasibility(seed):
    from contextuality.lp import maximize
    rng = random.Random(seed)
    rows = [([rng.randint(-3, 3) for _ in range(3)], rng.randint(-2, 3)) for _ in range(5)]
    system = LinearSystem.build(3, rows)
    for var in range(3):
        system = fm_eliminate(system, var)
    assert all(not any(a) for a, _ in system.inequalities)
    consistent = all(b >= 0 for _, b in system.inequalities)
    # oracle: phase-one LP over free variables split as x+ - x-
    A = [list(a) + [-v for v in a] for a, _ in rows]
    feasible = maximize([0] * 6, A, [b for _, b in rows]).optimal
    assert consistent == feasible
