import pytest

from subsum.instance import CardinalitySpec, PairwiseSpec
from subsum.terms import CardinalityTerm, PairwiseTerm, Phase


def test_phase_arithmetic():
    assert Phase(1).ceil_delta == 1 and Phase(1).is_final
    assert Phase(2).ceil_delta == 1 and Phase(8).ceil_delta == 4
    assert Phase.initial(1) == Phase(2)
    assert Phase.initial(1000) == Phase(2048)
    assert Phase.initial(1024) == Phase(2048)
    assert Phase(4).next() == Phase(2) and Phase(1).next() is None
    with pytest.raises(ValueError):
        Phase(6)


def test_three_halves_threshold_is_exact():
    assert Phase(2).at_least_three_halves(2) and not Phase(2).at_least_three_halves(1)
    # Delta = 1/2: threshold 3/4 means x >= 1.
    assert Phase(1).at_least_three_halves(1) and not Phase(1).at_least_three_halves(0)


def test_round_value():
    assert Phase(8).round_value(5, 1, 3) == 12
    assert Phase(8).round_value(0, 0, 3) == 0
    assert Phase(1).round_value(5, 1, 3) == 5


def pair(a, b, phi=0):
    term = PairwiseTerm(PairwiseSpec((0, 1), a, b))
    term.phi = phi
    return term


def neighbors(term, i, phase):
    term.reset_reached()
    return term.get_neighbors(i, phase)


def test_pairwise_adjust_is_identity():
    for phi in (0, 2):
        term = pair(3, 2, phi)
        assert term.adjust_flow(Phase(4)) == [0, 0]
        assert term.phi == phi


def test_pairwise_arcs():
    term = pair(3, 2)
    assert neighbors(term, 0, Phase(4)) == [1]
    assert neighbors(term, 1, Phase(4)) == [0]
    term = pair(3, 2, 3)
    assert neighbors(term, 0, Phase(2)) == []
    assert neighbors(term, 1, Phase(2)) == [0]
    term = pair(0, 0)
    for td in (1, 2, 64):
        assert neighbors(term, 0, Phase(td)) == [] == neighbors(term, 1, Phase(td))


def test_pairwise_flags():
    term = pair(3, 2)
    assert term.get_neighbors(0, Phase(2)) == [1]
    assert term.is_reached(0) and term.is_reached(1)
    with pytest.raises(AssertionError):
        term.get_neighbors(1, Phase(2))
    term.reset_reached()
    assert not term.is_reached(0)


def test_pairwise_pushes():
    term = pair(3, 2)
    term.send_flow(0, 1, 2)
    assert term.phi == 2 and term.flows() == [2, -2]
    term.send_flow(1, 0, 2)
    assert term.phi == 0
    term = pair(1, 1, 1)
    term.send_flow(1, 0, 1)
    assert term.phi == 0


def card(z, g=(0, 2, 2, 0)):
    term = CardinalityTerm(CardinalitySpec(tuple(range(len(z))), tuple(g)))
    term.z[:] = z
    term.rebuild_structures()
    return term


def test_cardinality_structures():
    term = card([0, 0, 0])
    assert len(term.groups) == 1
    assert (term.groups.L(0), term.groups.R(0)) == (1, 3)
    assert term.gbar == [0, 2, 2, 0]
    term = card([1, -1, 0])
    assert term.groups.g_value == [1, 0, -1]
    assert term.gbar == [0, 1, 1, 0]


def test_cardinality_adjust_is_identity():
    term = card([1, -1, 0])
    assert term.adjust_flow(Phase(2)) == [0, 0, 0]
    assert term.z == [1, -1, 0]


def test_cardinality_arcs():
    term = card([0, 0, 0])
    for i in range(3):
        assert sorted(neighbors(term, i, Phase(2))) == sorted({0, 1, 2} - {i})
    term = card([1, -1, 0])
    assert neighbors(term, 0, Phase(2)) == []
    assert sorted(neighbors(term, 1, Phase(2))) == [0, 2]
    # Final phase: threshold gbar >= 1, so the z=1 member now reaches both.
    assert sorted(neighbors(term, 0, Phase(1))) == [1, 2]


def test_cardinality_push_cases():
    # Equal values: the gbar window over the shared group drops by c.
    term = card([0, 0, 0])
    term.send_flow(0, 1, 1)
    assert term.z == [1, -1, 0] and term.gbar == [0, 1, 1, 0]

    # z_i = z_j - c: the two values swap, so the sorted prefix is unchanged.
    term = card([0, 1, -1], g=(0, 3, 3, 0))
    before = list(term.gbar)
    term.send_flow(0, 1, 1)
    assert term.gbar == before == term.recompute_gbar()

    # Gap of at least 2c: a window between the two positions rises by c.
    term = card([-1, 1, 0], g=(0, 3, 3, 0))
    lo, hi = term.groups.R(1), term.groups.L(0) - 1
    before = list(term.gbar)
    term.send_flow(0, 1, 1)
    assert hi >= lo
    assert term.gbar == [v + (lo <= k <= hi) for k, v in enumerate(before)]
    assert term.gbar == term.recompute_gbar()


def test_alpha_bounds():
    assert pair(1, 1).alpha_bound() == 2
    assert card([0] * 5, (0,) * 6).alpha_bound() == 12
