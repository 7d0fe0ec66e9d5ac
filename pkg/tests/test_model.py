import json
import random
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from contextuality import catalog
from contextuality.model import (EmpiricalModel, ModelError, SignallingError, check_compatibility,
                                 deterministic_model, incidence_matrix, make_model, marginalize, mix,
                                 model_from_vector, vectorize)
from contextuality.scenario import bell_scenario, global_assignments, make_scenario

from helpers import deterministic_models, local_model_from, pr_variants, random_weights

DATA = Path(__file__).parent / "data"


def test_catalog_models_are_compatible():
    for m in (catalog.bell_table(), catalog.pr_box(), catalog.hardy_model(), catalog.uniform_model()):
        assert check_compatibility(m) == []


def test_marginals_of_bell_table():
    m = catalog.bell_table()
    assert marginalize(m["a", "b"], ["a"]) == {(0,): F(1, 2), (1,): F(1, 2)}
    assert marginalize(m["a", "b"], []) == {(): 1}


def test_signalling_rejected_with_violation():
    s = catalog.chsh_scenario()
    rows = {c: vectorize(catalog.bell_table())[4 * i:4 * i + 4] for i, c in enumerate(s.contexts)}
    rows[("a", "b'")] = [F(1, 2), F(1, 2), 0, 0]
    with pytest.raises(SignallingError) as info:
        make_model(s, rows)
    v = info.value.violations[0]
    assert v.overlap == ("a",)
    assert {v.lhs, v.rhs} == {F(1, 2), F(1)}


@pytest.mark.parametrize("row, message", [
    ([F(1, 2), F(1, 2), F(1, 2), F(-1, 2)], "negative"),
    ([F(1, 2), F(1, 4), 0, 0], "sums to"),
])
def test_bad_rows(row, message):
    s = catalog.chsh_scenario()
    rows = {c: [F(1, 4)] * 4 for c in s.contexts}
    rows[s.contexts[0]] = row
    with pytest.raises(ModelError, match=message):
        make_model(s, rows)


def test_missing_context():
    s = catalog.chsh_scenario()
    with pytest.raises(ModelError, match="no table"):
        make_model(s, {s.contexts[0]: [1, 0, 0, 0]})


def test_single_context_models_always_compatible():
    s = make_scenario(["x", "y"], [["x", "y"]], [0, 1])
    m = make_model(s, {("x", "y"): ["1/3", "1/6", "1/6", "1/3"]})
    assert check_compatibility(m) == []


def test_incidence_matrix_shape_and_columns():
    s = catalog.chsh_scenario()
    M = incidence_matrix(s)
    assert len(M) == 16 and all(len(r) == 16 for r in M)
    for g, assignment in enumerate(global_assignments(s)):
        column = [M[k][g] for k in range(16)]
        assert tuple(column) == tuple(vectorize(deterministic_model(s, assignment)))
        assert sum(column) == len(s.contexts)


def test_mix_and_vector_round_trip():
    s = catalog.chsh_scenario()
    m = mix([catalog.pr_box(), catalog.uniform_model()], ["1/2", "1/2"])
    assert model_from_vector(s, vectorize(m)) == m
    with pytest.raises(ValueError):
        mix([catalog.pr_box()], ["1/2"])


def test_json_round_trip():
    m = catalog.hardy_model()
    data = json.loads(json.dumps(m.to_json()))
    assert EmpiricalModel.from_json(data) == m


def test_fixture_files_load():
    data = json.loads((DATA / "bell_table.json").read_text())
    assert EmpiricalModel.from_json(data) == catalog.bell_table()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_local_models_are_compatible(seed):
    rng = random.Random(seed)
    # Property: M d is always no-signalling.
    for s in (catalog.chsh_scenario(), bell_scenario(3, 2, 2), bell_scenario(2, 3, 2)):
        d = random_weights(rng, len(global_assignments(s)), zeros=0.4)
        m = local_model_from(s, d)
        assert check_compatibility(m) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_convex_mixtures_of_ns_vertices_stay_ns(seed):
    rng = random.Random(seed)
    vertices = deterministic_models(catalog.chsh_scenario()) + pr_variants()
    w = random_weights(rng, len(vertices), zeros=0.6)
    assert check_compatibility(mix(vertices, w)) == []


def test_pr_variants_are_distinct():
    assert len(set(pr_variants())) == 8
