"""Brute-force reference implementations.

Nothing here touches solver or runtime-term code; terms are read only
through their spec's ``local_value`` and instances through ``evaluate_mask``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .instance import Instance

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class OracleReport:
    minimum: int
    minimizers: tuple[int, ...]  # bitmasks, ascending
    evaluations: int

    @property
    def smallest_minimizer(self) -> list[int]:
        """Lexicographically smallest minimizer as a sorted node list."""
        best = min(sorted(k for k in range(mask.bit_length()) if mask >> k & 1)
                   for mask in self.minimizers)
        return best


def brute_min(instance: Instance) -> OracleReport:
    if instance.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_LIMIT}, got {instance.n}")
    best = None
    found: list[int] = []
    total = 1 << instance.n
    for mask in range(total):
        v = instance.evaluate_mask(mask)
        if best is None or v < best:
            best, found = v, [mask]
        elif v == best:
            found.append(mask)
    return OracleReport(best, tuple(found), total)


def _rounded(kind: str, value: int, size: int, m: int, two_delta: int) -> int:
    # Pairwise and cardinality terms run on the unrounded function.
    if kind in ("pairwise", "cardinality") or two_delta == 1:
        return value
    half = two_delta // 2
    return half * (value // half) + half * size * (m - size)


def naive_exchange_capacity(spec, flows: Sequence[int], two_delta: int, i: int, j: int) -> int:
    """min of residual f(S) - flows(S) over local S with i in S and j not in S."""
    m = spec.size
    best = None
    for S in range(1 << m):
        if not (S >> i & 1) or S >> j & 1:
            continue
        k = bin(S).count("1")
        r = _rounded(spec.kind, spec.local_value(S), k, m, two_delta)
        r -= sum(flows[e] for e in range(m) if S >> e & 1)
        if best is None or r < best:
            best = r
    return best


def _cardinality_arcs(g: Sequence[int], z: Sequence[int], two_delta: int) -> list[tuple[int, int]]:
    m = len(z)
    ranked = sorted(z, reverse=True)
    gbar = [g[k] - sum(ranked[:k]) for k in range(m + 1)]
    arcs = []
    for i in range(m):
        left = 1 + sum(1 for v in z if v > z[i])
        for j in range(m):
            if i == j:
                continue
            if z[i] < z[j]:
                arcs.append((i, j))
                continue
            right = sum(1 for v in z if v >= z[j])
            window = gbar[left:right]
            if not window or 4 * min(window) >= 3 * two_delta:
                arcs.append((i, j))
    return arcs


def naive_arc_set(spec, flows: Sequence[int], two_delta: int) -> list[tuple[int, int]]:
    """Residual arcs (i, j), as local member positions, for one term."""
    if spec.kind == "cardinality":
        return _cardinality_arcs(spec.g, flows, two_delta)
    threshold = (two_delta + 1) // 2
    m = spec.size
    return [(i, j) for i in range(m) for j in range(m)
            if i != j and naive_exchange_capacity(spec, flows, two_delta, i, j) >= threshold]


def naive_row_minima(view) -> list[int]:
    out = []
    for r in range(view.rows):
        row = [view.entry(r, c) for c in range(view.cols)]
        out.append(row.index(min(row)))
    return out
