"""Phase arithmetic and the interface every term kind implements.

The scaling parameter is held as the integer ``two_delta`` (= 2*Delta) so
that the final Delta = 1/2 phase needs no fractions.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Phase:
    two_delta: int

    def __post_init__(self) -> None:
        td = self.two_delta
        if td < 1 or td & (td - 1):
            raise ValueError(f"two_delta must be a positive power of two, got {td}")

    @property
    def ceil_delta(self) -> int:
        return (self.two_delta + 1) // 2

    @property
    def floor_delta(self) -> int:
        return self.two_delta // 2

    @property
    def is_final(self) -> bool:
        return self.two_delta == 1

    def at_least_three_halves(self, x: int) -> bool:
        """x >= 3*Delta/2, exactly."""
        return 4 * x >= 3 * self.two_delta

    def round_value(self, value: int, k: int, m: int) -> int:
        """Scaled value Delta*floor(value/Delta) + floor(Delta)*k*(m-k).

        ``k`` is |S| and ``m`` is |Q|. Identity in the final phase.
        """
        if self.two_delta == 1:
            return value
        d = self.two_delta // 2
        return d * (value // d) + d * k * (m - k)

    @classmethod
    def initial(cls, U: int) -> "Phase":
        """First phase: Delta = 2^ceil(log2 U)."""
        U = max(1, U)
        return cls(2 << (U - 1).bit_length())

    def next(self) -> "Phase | None":
        return Phase(self.two_delta // 2) if self.two_delta > 1 else None


class Term:
    """Runtime state of one term: its flow vector plus search structures.

    Members are addressed by local position 0..m-1; ``members`` maps them to
    node ids. ``reached`` holds the per-member search flags. Subclasses
    implement the flow-dependent operations.
    """

    kind = "abstract"

    def __init__(self, spec) -> None:
        self.spec = spec
        self.members: tuple[int, ...] = tuple(spec.members)
        self.m = len(self.members)
        self.phase: Phase | None = None
        self.reached: list[bool] = [False] * self.m
        self.counters = {"adjust": 0, "neighbors": 0, "sends": 0, "work": 0}

    # -- contract -----------------------------------------------------------
    def flows(self) -> list[int]:
        raise NotImplementedError

    def adjust_flow(self, phase: Phase) -> list[int]:
        """Move the flow into the base polyhedron of this phase's function.

        Returns per-member deltas (new - old).
        """
        raise NotImplementedError

    def get_neighbors(self, i: int, phase: Phase) -> list[int]:
        raise NotImplementedError

    def send_flow(self, i: int, j: int, amount: int) -> None:
        raise NotImplementedError

    def reset_reached(self) -> None:
        raise NotImplementedError

    def is_reached(self, i: int) -> bool:
        raise NotImplementedError

    def alpha_bound(self) -> int:
        raise NotImplementedError

    def scaled_value(self, bits: int, phase: Phase) -> int:
        """The phase function f^Delta_Q on the local subset ``bits``."""
        raise NotImplementedError

    def residual_value(self, bits: int, phase: Phase) -> int:
        flows = self.flows()
        used = sum(flows[k] for k in range(self.m) if bits >> k & 1)
        return self.scaled_value(bits, phase) - used

    def has_arc(self, i: int, j: int, phase: Phase) -> bool:
        """Whether (i, j) is a residual arc now; flags must be clear."""
        self.begin_search()
        try:
            return j in self.get_neighbors(i, phase)
        finally:
            self.reset_reached()

    def begin_search(self) -> None:
        """Hook run before the first neighbor query of a search."""
