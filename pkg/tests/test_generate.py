import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subsum.generate import (TermRequest, chain_instance, concave_sequence, generate,
                             monge_grid, parse_term_requests, submodular_table)
from subsum.instance import _is_submodular_table, validate


def test_parse_term_requests():
    assert parse_term_requests("pairwise:3,general:1:4") == [
        TermRequest("pairwise", 3, None), TermRequest("general", 1, 4)]
    for bad in ("", "pairwise", "cubic:1", "pairwise:x", "general:1:1"):
        with pytest.raises(ValueError):
            parse_term_requests(bad)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 9))
def test_concave_sequences(seed, m):
    g = concave_sequence(random.Random(seed), m, 10)
    assert len(g) == m + 1 and g[0] == 0 == g[-1]
    steps = [b - a for a, b in zip(g, g[1:])]
    assert steps == sorted(steps, reverse=True)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 6))
def test_submodular_tables(seed, m):
    table = submodular_table(random.Random(seed), m, 10)
    assert len(table) == 1 << m and _is_submodular_table(list(table), m)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 6), st.integers(1, 6))
def test_monge_grids(seed, mp, ms):
    g = monge_grid(random.Random(seed), mp, ms, 10)
    assert all(g[a][b] + g[a + 1][b + 1] <= g[a + 1][b] + g[a][b + 1]
               for a in range(mp) for b in range(ms))


def test_generate_respects_request():
    inst = generate(15, parse_term_requests("pairwise:4,cardinality:2:5,bicardinality:2:4"),
                    30, seed=1)
    assert validate(inst) == [] and inst.U <= 30
    assert [t.kind for t in inst.terms].count("pairwise") == 4
    assert generate(15, parse_term_requests("general:2:3"), 30, 5) == \
        generate(15, parse_term_requests("general:2:3"), 30, 5)


def test_chain_instance_shape():
    inst = chain_instance(200, 3, 10, 100, seed=1)
    assert validate(inst) == [] and inst.U == 100
    assert sum(t.kind == "cardinality" for t in inst.terms) == 3
