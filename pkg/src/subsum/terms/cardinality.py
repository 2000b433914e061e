from __future__ import annotations

from .base import Phase, Term
from .groups import SortedGroups, range_min, walk_groups


class CardinalityTerm(Term):
    """f_Q(S) = g(|S|) with g concave.

    Keeps the members grouped by flow value and the residual array
    gbar(k) = g(k) - (sum of the k largest flows). gbar is updated in place on
    every push; ``recompute_gbar`` exists so tests can compare.
    """

    kind = "cardinality"

    def __init__(self, spec) -> None:
        super().__init__(spec)
        self.g = list(spec.g)
        self.z = [0] * self.m
        self.rebuild_structures()

    def rebuild_structures(self) -> None:
        self.groups = SortedGroups(self.z)
        self.gbar = self.recompute_gbar()
        self.group_done = [False] * len(self.groups)

    def recompute_gbar(self) -> list[int]:
        ranked = sorted(self.z, reverse=True)
        out, acc = [self.g[0]], 0
        for k in range(1, self.m + 1):
            acc += ranked[k - 1]
            out.append(self.g[k] - acc)
        return out

    def flows(self) -> list[int]:
        return list(self.z)

    def adjust_flow(self, phase: Phase) -> list[int]:
        self.phase = phase
        self.counters["adjust"] += 1
        return [0] * self.m

    def get_neighbors(self, i: int, phase: Phase) -> list[int]:
        assert not self.reached[i], "get_neighbors called on a reached member"
        self.reached[i] = True
        self.counters["neighbors"] += 1
        out: list[int] = []
        self.counters["work"] += walk_groups(
            self.groups, i, self.reached, self.group_done, self.gbar,
            phase.at_least_three_halves, out)
        return out

    def has_arc(self, i: int, j: int, phase: Phase) -> bool:
        if self.z[i] < self.z[j]:
            return True
        low = range_min(self.gbar, self.groups.L(i), self.groups.R(j) - 1)
        return low is None or phase.at_least_three_halves(low)

    def send_flow(self, i: int, j: int, amount: int) -> None:
        self.counters["sends"] += 1
        z, groups, gbar = self.z, self.groups, self.gbar
        zi, zj = z[i], z[j]
        li, rj = groups.L(i), groups.R(j)
        c = amount
        if (zi - zj) % c:
            patch = None
        elif zi <= zj - 2 * c:
            patch = (rj, li - 1, c)
        elif zi == zj - c:
            patch = (0, -1, 0)
        else:
            patch = (li, rj - 1, -c)
        z[i] = zi + c
        z[j] = zj - c
        if patch is None:
            gbar[:] = self.recompute_gbar()
        else:
            lo, hi, d = patch
            for k in range(lo, hi + 1):
                gbar[k] += d
            self.counters["work"] += hi - lo + 1 if hi >= lo else 0
        groups.reposition(i, j)
        groups.regroup()
        self.group_done = [False] * len(groups)

    def reset_reached(self) -> None:
        self.reached = [False] * self.m
        self.group_done = [False] * len(self.groups)

    def is_reached(self, i: int) -> bool:
        return self.reached[i]

    def alpha_bound(self) -> int:
        return 3 * (self.m - 1)

    def scaled_value(self, bits: int, phase: Phase) -> int:
        return self.g[bin(bits).count("1")]
