from __future__ import annotations

from .base import Phase, Term


class PairwiseTerm(Term):
    """Two-member term; the flow is one integer ``phi`` = flow at member 0.

    Feasibility is -b <= phi <= a. The phase function is the term itself, so
    adjusting the flow never changes anything.
    """

    kind = "pairwise"

    def __init__(self, spec) -> None:
        super().__init__(spec)
        self.a = spec.a
        self.b = spec.b
        self.phi = 0

    def flows(self) -> list[int]:
        return [self.phi, -self.phi]

    def adjust_flow(self, phase: Phase) -> list[int]:
        self.phase = phase
        self.counters["adjust"] += 1
        return [0, 0]

    def capacity(self, i: int) -> int:
        """Exchange capacity from member ``i`` to the other member."""
        return self.a - self.phi if i == 0 else self.b + self.phi

    def get_neighbors(self, i: int, phase: Phase) -> list[int]:
        reached = self.reached
        assert not reached[i], "get_neighbors called on a reached member"
        reached[i] = True
        self.counters["neighbors"] += 1
        j = 1 - i
        cap = self.a - self.phi if i == 0 else self.b + self.phi
        if not reached[j] and cap >= phase.ceil_delta:
            reached[j] = True
            return [j]
        return []

    def has_arc(self, i: int, j: int, phase: Phase) -> bool:
        return self.capacity(i) >= phase.ceil_delta

    def send_flow(self, i: int, j: int, amount: int) -> None:
        self.counters["sends"] += 1
        self.phi += amount if i == 0 else -amount

    def reset_reached(self) -> None:
        self.reached[0] = self.reached[1] = False

    def is_reached(self, i: int) -> bool:
        return self.reached[i]

    def alpha_bound(self) -> int:
        return 2

    def scaled_value(self, bits: int, phase: Phase) -> int:
        return self.spec.local_value(bits)
