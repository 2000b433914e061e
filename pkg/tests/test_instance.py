import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subsum.generate import concave_sequence, submodular_table
from subsum.instance import (MAGNITUDE_LIMIT, BicardinalitySpec, CardinalitySpec, GeneralSpec,
                             Instance, InstanceError, NormalizationError, PairwiseSpec, evaluate,
                             normalize_bicardinality, normalize_cardinality, normalize_general,
                             normalize_instance, term_violations, validate)


def first_example():
    return Instance(2, (3, 0), (0, 2), (PairwiseSpec((0, 1), 1, 1),))


def test_evaluate_examples():
    inst = first_example()
    assert evaluate(inst, {0}) == 1
    assert evaluate(inst, set()) == inst.offset + sum(inst.c_si)
    assert evaluate(inst, {0, 1}) == 2
    assert [inst.evaluate_mask(m) for m in range(4)] == [3, 1, 6, 2]


def test_evaluate_rejects_out_of_range():
    with pytest.raises(ValueError):
        first_example().evaluate([2])


def test_validate_examples():
    bad = Instance(2, (0, 0), (0, 0), (PairwiseSpec((0, 1), -1, 1),))
    assert any("term value negative" in v for v in validate(bad))

    good = Instance(3, (0,) * 3, (0,) * 3, (CardinalitySpec((0, 1, 2), (0, 2, 2, 0)),))
    assert validate(good) == []

    problems = term_violations(GeneralSpec((0, 1), (0, 0, 0, 1)))
    assert any("f(Q)" in p for p in problems)
    assert any("not submodular" in p for p in problems)


def test_structural_errors():
    with pytest.raises(InstanceError):
        PairwiseSpec((1, 1), 0, 0)
    with pytest.raises(InstanceError):
        CardinalitySpec((2, 1), (0, 0, 0))
    with pytest.raises(InstanceError):
        Instance(2, (0, 0), (0, 0), (PairwiseSpec((0, 5), 0, 0),))
    with pytest.raises(InstanceError):
        BicardinalitySpec((0,), (0,), ((0, 0), (0, 0)))


def test_validate_flags_negative_unary_and_magnitude():
    inst = Instance(2, (-1, MAGNITUDE_LIMIT // 2), (0, 0))
    problems = validate(inst)
    assert any("negative source capacity" in p for p in problems)
    assert not any("arithmetic bound" in p for p in problems)
    inst = Instance(4, (MAGNITUDE_LIMIT,) * 4, (0,) * 4)
    assert any("arithmetic bound" in p for p in validate(inst))


def test_validate_bicardinality_checks():
    spec = BicardinalitySpec((0,), (1,), ((0, 1), (1, 0)))
    assert term_violations(spec) == []
    spec = BicardinalitySpec((0, 1), (2,), ((0, 0), (0, 0), (0, 0)))
    assert term_violations(spec) == []
    spec = BicardinalitySpec((0,), (1,), ((0, -1), (-1, 0)))
    assert term_violations(spec)


def test_normalize_general_examples():
    spec, deltas, off = normalize_general([0, -2, 1, -1], [1, 2])
    assert spec.table == (0, 0, 0, 0)
    assert sorted(deltas) == [(1, 2, 0), (2, 0, 1)]
    assert off == -2

    table = (0, 3, 1, 0)
    spec, deltas, off = normalize_general(table, [0, 1])
    assert (spec.table, deltas, off) == (table, [], 0)

    spec, deltas, off = normalize_general([5, 5, 5, 5], [0, 1])
    assert (spec.table, deltas, off) == ((0, 0, 0, 0), [], 5)


def test_normalize_general_rejects_supermodular():
    with pytest.raises(NormalizationError):
        normalize_general([0, 0, 0, 1], [0, 1])


def test_normalize_cardinality_examples():
    with pytest.raises(NormalizationError):
        normalize_cardinality((4, 3, 1), (0, 1))
    spec, deltas, off = normalize_cardinality((0, 2, 2, 0), (0, 1, 2))
    assert (spec.g, deltas, off) == ((0, 2, 2, 0), [], 0)
    spec, deltas, off = normalize_cardinality((2, 4, 2), (0, 1))
    assert (spec.g, deltas, off) == ((0, 2, 0), [], 2)


def test_normalize_bicardinality_examples():
    grid = [[-a * b for b in range(3)] for a in range(3)]
    spec, deltas, off = normalize_bicardinality(grid, (0, 1), (2, 3))
    assert spec.g == tuple(tuple(a * (2 - b) for b in range(3)) for a in range(3))
    assert sorted(deltas) == [(0, 2, 0), (1, 2, 0)]
    assert off == -4

    normalized = ((0, 1), (1, 0))
    spec, deltas, off = normalize_bicardinality(normalized, (0,), (1,))
    assert (spec.g, deltas, off) == (normalized, [], 0)

    with pytest.raises(NormalizationError):
        normalize_bicardinality([[0, 0, 0], [0, 0, 0], [0, 0, 1]], (0, 1), (2, 3))


def test_non_integral_cardinality_slope_falls_back_to_table():
    inst = Instance(2, (0, 0), (0, 0), (CardinalitySpec((0, 1), (4, 3, 1)),))
    norm = normalize_instance(inst)
    assert norm.terms[0].kind == "general"
    assert validate(norm) == []
    assert [norm.evaluate_mask(m) for m in range(4)] == [inst.evaluate_mask(m) for m in range(4)]


def _same_function(a: Instance, b: Instance) -> bool:
    return all(a.evaluate_mask(m) == b.evaluate_mask(m) for m in range(1 << a.n))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 5), st.integers(-30, 30))
def test_normalize_general_preserves_function(seed, m, shift):
    rng = random.Random(seed)
    table = tuple(v + shift for v in submodular_table(rng, m, 9))
    inst = Instance(m, (0,) * m, (0,) * m, (GeneralSpec(tuple(range(m)), table),))
    norm = normalize_instance(inst)
    assert validate(norm) == []
    assert _same_function(inst, norm)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 7), st.integers(-5, 5), st.integers(-9, 9))
def test_normalize_cardinality_preserves_function(seed, m, slope, shift):
    g = concave_sequence(random.Random(seed), m, 6)
    g = tuple(v + slope * k + shift for k, v in enumerate(g))
    inst = Instance(m, (1,) * m, (2,) * m, (CardinalitySpec(tuple(range(m)), g),))
    norm = normalize_instance(inst)
    assert validate(norm) == []
    assert _same_function(inst, norm)


def test_uniform_bound_covers_values():
    inst = Instance(3, (7, 0, 0), (0, 2, 0), (CardinalitySpec((0, 1, 2), (0, 9, 9, 0)),))
    assert inst.U == 9
    assert Instance(1, (0,), (0,)).U == 1
