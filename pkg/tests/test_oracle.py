import random

import pytest

from subsum.instance import CardinalitySpec, Instance, PairwiseSpec
from subsum.oracle import (brute_min, naive_arc_set, naive_exchange_capacity,
                           naive_row_minima)
from subsum.smawk import MatrixView


def test_brute_min_first_example():
    inst = Instance(2, (3, 0), (0, 2), (PairwiseSpec((0, 1), 1, 1),))
    report = brute_min(inst)
    assert report.minimum == 1
    assert report.smallest_minimizer == [0]
    assert report.evaluations == 4


def test_zero_instance_every_set_minimizes():
    report = brute_min(Instance(3, (0,) * 3, (0,) * 3))
    assert report.minimum == 0 and len(report.minimizers) == 8
    assert report.smallest_minimizer == []


def test_brute_force_limit():
    with pytest.raises(ValueError):
        brute_min(Instance(21, (0,) * 21, (0,) * 21))


def test_pairwise_closed_form():
    rng = random.Random(2)
    for _ in range(50):
        a, b = rng.randint(0, 9), rng.randint(0, 9)
        phi = rng.randint(-b, a)
        td = rng.choice((1, 2, 4, 8))
        cd = (td + 1) // 2
        spec = PairwiseSpec((0, 1), a, b)
        flows = (phi, -phi)
        assert naive_exchange_capacity(spec, flows, td, 0, 1) == a - phi
        assert naive_exchange_capacity(spec, flows, td, 1, 0) == b + phi
        expected = {(0, 1)} if a - phi >= cd else set()
        expected |= {(1, 0)} if b + phi >= cd else set()
        assert set(naive_arc_set(spec, flows, td)) == expected


def test_cardinality_arcs_uniform_flow():
    spec = CardinalitySpec((0, 1, 2), (0, 2, 2, 0))
    arcs = set(naive_arc_set(spec, (0, 0, 0), 2))
    assert arcs == {(i, j) for i in range(3) for j in range(3) if i != j}
    assert set(naive_arc_set(spec, (1, -1, 0), 2)) == {(1, 0), (1, 2), (2, 0)}


def test_naive_row_minima_leftmost():
    M = [[3, 1, 1], [0, 0, 2]]
    assert naive_row_minima(MatrixView(2, 3, lambda r, c: M[r][c])) == [1, 0]
