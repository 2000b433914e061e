from __future__ import annotations

from .base import Phase, Term


class GeneralTerm(Term):
    """A term stored as a full 2^m table, run under the scaled function.

    ``res[S]`` holds the residual f_phase(S) - phi(S) for every local subset
    and is patched on every push, so the exchange-capacity queries reduce to
    scans of this array.
    """

    kind = "general"

    def __init__(self, spec) -> None:
        super().__init__(spec)
        self.table = spec.table
        self.phi = [0] * self.m
        self.res = list(self.table)

    def flows(self) -> list[int]:
        return list(self.phi)

    def scaled_table(self, phase: Phase) -> list[int]:
        m = self.m
        return [phase.round_value(v, bin(S).count("1"), m) for S, v in enumerate(self.table)]

    def scaled_value(self, bits: int, phase: Phase) -> int:
        return phase.round_value(self.table[bits], bin(bits).count("1"), self.m)

    def _residuals(self, scaled: list[int], phi: list[int]) -> list[int]:
        used = [0] * len(scaled)
        for S in range(1, len(scaled)):
            low = S & -S
            used[S] = used[S ^ low] + phi[low.bit_length() - 1]
        return [f - u for f, u in zip(scaled, used)]

    def adjust_flow(self, phase: Phase) -> list[int]:
        """Lower every component by m*ceil(Delta), then raise greedily."""
        self.counters["adjust"] += 1
        self.phase = phase
        old = list(self.phi)
        shift = self.m * phase.ceil_delta
        phi = [v - shift for v in old]
        res = self._residuals(self.scaled_table(phase), phi)
        size = len(res)
        for k in range(self.m):
            bit = 1 << k
            sat = min(res[S] for S in range(size) if S & bit)
            phi[k] += sat
            for S in range(size):
                if S & bit:
                    res[S] -= sat
        self.phi, self.res = phi, res
        deltas = [new - was for new, was in zip(phi, old)]
        assert sum(abs(d) for d in deltas) <= 2 * self.m * self.m * phase.ceil_delta
        self.counters["work"] += self.m * size
        return deltas

    def minimal_zero_set(self, i: int) -> int:
        """Smallest local subset containing ``i`` with zero residual (a bitmask)."""
        bit = 1 << i
        res = self.res
        meet = len(res) - 1
        for S in range(len(res)):
            if S & bit and res[S] == 0:
                meet &= S
        assert res[meet] == 0, "flow is outside the base polyhedron"
        self.counters["work"] += len(res)
        return meet

    def exchange_capacity(self, i: int, j: int) -> int:
        bi, bj = 1 << i, 1 << j
        return min(r for S, r in enumerate(self.res) if S & bi and not S & bj)

    def get_neighbors(self, i: int, phase: Phase) -> list[int]:
        reached = self.reached
        assert not reached[i], "get_neighbors called on a reached member"
        reached[i] = True
        self.counters["neighbors"] += 1
        meet = self.minimal_zero_set(i)
        out = []
        for k in range(self.m):
            if k != i and meet >> k & 1 and not reached[k]:
                reached[k] = True
                out.append(k)
        return out

    def send_flow(self, i: int, j: int, amount: int) -> None:
        self.counters["sends"] += 1
        self.phi[i] += amount
        self.phi[j] -= amount
        bi, bj = 1 << i, 1 << j
        res = self.res
        for S in range(len(res)):
            if S & bi:
                res[S] -= amount
            if S & bj:
                res[S] += amount
        self.counters["work"] += len(res)

    def reset_reached(self) -> None:
        self.reached = [False] * self.m

    def is_reached(self, i: int) -> bool:
        return self.reached[i]

    def alpha_bound(self) -> int:
        return 5 * self.m * self.m
