"""Seeded random instances with normalized terms of every kind."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .instance import (BicardinalitySpec, CardinalitySpec, GeneralSpec, Instance,
                       NormalizationError, PairwiseSpec, TermSpec, UnaryDelta,
                       normalize_bicardinality, normalize_general, term_violations)

KINDS = ("pairwise", "cardinality", "bicardinality", "general")
MAX_ATTEMPTS = 200


@dataclass(frozen=True)
class TermRequest:
    kind: str
    count: int
    size: int | None = None


def parse_term_requests(text: str) -> list[TermRequest]:
    """Parse ``kind:count[:size]`` items separated by commas."""
    out = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        parts = item.split(":")
        try:
            if parts[0] not in KINDS or not 2 <= len(parts) <= 3:
                raise ValueError
            count = int(parts[1])
            size = int(parts[2]) if len(parts) == 3 else None
        except ValueError:
            raise ValueError(f"bad term request {item!r}; expected kind:count[:size]") from None
        if count < 0 or (size is not None and size < 2):
            raise ValueError(f"bad term request {item!r}; count >= 0 and size >= 2 required")
        out.append(TermRequest(parts[0], count, size))
    if not out:
        raise ValueError("no term requests given")
    return out


def concave_sequence(rng: random.Random, m: int, scale: int) -> tuple[int, ...]:
    """g(0..m) with g(0) = g(m) = 0, g >= 0 and non-increasing increments."""
    steps = [rng.randint(-scale, scale) for _ in range(m - 1)]
    steps.append(-sum(steps))
    steps.sort(reverse=True)
    g = [0]
    for d in steps:
        g.append(g[-1] + d)
    return tuple(g)


def bounded_concave_sequence(rng: random.Random, m: int, max_value: int) -> tuple[int, ...]:
    scale = max(1, max_value // m)
    while True:
        g = concave_sequence(rng, m, scale)
        if max(g) <= max_value:
            return g
        scale = max(1, scale // 2)


def _convex_nondecreasing(rng: random.Random, m: int, scale: int) -> list[int]:
    steps = sorted(rng.randint(0, scale) for _ in range(m))
    out = [0]
    for d in steps:
        out.append(out[-1] + d)
    return out


def _concave_any(rng: random.Random, m: int, scale: int) -> list[int]:
    steps = sorted((rng.randint(-scale, scale) for _ in range(m)), reverse=True)
    out = [0]
    for d in steps:
        out.append(out[-1] + d)
    return out


def monge_grid(rng: random.Random, mp: int, ms: int, scale: int) -> list[list[int]]:
    """A(k') + B(k'') - u(k') v(k'') + H(k' + k''): Monge and axis-concave."""
    A = _concave_any(rng, mp, scale)
    B = _concave_any(rng, ms, scale)
    H = _concave_any(rng, mp + ms, scale)
    u = _convex_nondecreasing(rng, mp, max(1, scale // 4))
    v = [k for k in range(ms + 1)] if rng.random() < 0.5 else [0] * (ms + 1)
    return [[A[a] + B[b] - u[a] * v[b] + H[a + b] for b in range(ms + 1)]
            for a in range(mp + 1)]


def submodular_table(rng: random.Random, m: int, scale: int) -> list[int]:
    """Sum of min(w(S), cap) pieces, directed cut pieces and a linear part."""
    table = [0] * (1 << m)
    for _ in range(rng.randint(1, 3)):
        w = [rng.randint(0, scale) for _ in range(m)]
        cap = rng.randint(0, max(1, sum(w)))
        for S in range(1 << m):
            table[S] += min(cap, sum(w[k] for k in range(m) if S >> k & 1))
    for _ in range(rng.randint(0, m) if m >= 2 else 0):
        i, j = rng.sample(range(m), 2)
        c = rng.randint(0, scale)
        for S in range(1 << m):
            if S >> i & 1 and not S >> j & 1:
                table[S] += c
    for k in range(m):
        lin = rng.randint(-scale, scale)
        for S in range(1 << m):
            if S >> k & 1:
                table[S] += lin
    return table


def _random_term(rng: random.Random, kind: str, nodes: Sequence[int], scale: int
                 ) -> tuple[TermSpec, list[UnaryDelta], int]:
    m = len(nodes)
    if kind == "pairwise":
        return PairwiseSpec(tuple(nodes), rng.randint(0, scale), rng.randint(0, scale)), [], 0
    if kind == "cardinality":
        return CardinalitySpec(tuple(nodes), bounded_concave_sequence(rng, m, scale)), [], 0
    if kind == "bicardinality":
        cut = rng.randint(1, m - 1)
        shuffled = list(nodes)
        rng.shuffle(shuffled)
        qp, qs = sorted(shuffled[:cut]), sorted(shuffled[cut:])
        grid = monge_grid(rng, len(qp), len(qs), max(1, scale // m))
        spec, deltas, off = normalize_bicardinality(grid, qp, qs)
        if term_violations(spec):
            raise NormalizationError("generated grid is not submodular")
        return spec, deltas, off
    if kind == "general":
        return normalize_general(submodular_table(rng, m, max(1, scale // m)), nodes)
    raise ValueError(f"unknown term kind {kind!r}")


def random_term(rng: random.Random, kind: str, nodes: Sequence[int], max_value: int
                ) -> tuple[TermSpec, list[UnaryDelta], int]:
    """A normalized term whose values and unary deltas stay within ``max_value``."""
    scale = max(1, max_value)
    for _ in range(MAX_ATTEMPTS):
        try:
            spec, deltas, off = _random_term(rng, kind, nodes, scale)
        except NormalizationError:
            continue
        lo, hi = spec.value_range()
        worst = max([hi, -lo] + [max(a, b) for _, a, b in deltas])
        if worst <= max_value:
            return spec, deltas, off
        scale = max(1, scale * 2 // 3)
    # Give up on structure: an all-zero term is always valid.
    return _zero_term(kind, nodes), [], 0


def _zero_term(kind: str, nodes: Sequence[int]) -> TermSpec:
    m = len(nodes)
    nodes = tuple(nodes)
    if kind == "pairwise":
        return PairwiseSpec(nodes, 0, 0)
    if kind == "cardinality":
        return CardinalitySpec(nodes, (0,) * (m + 1))
    if kind == "bicardinality":
        return BicardinalitySpec(nodes[:1], nodes[1:], tuple((0,) * m for _ in range(2)))
    return GeneralSpec(nodes, (0,) * (1 << m))


def generate(n: int, requests: Sequence[TermRequest], max_value: int, seed: int) -> Instance:
    rng = random.Random(seed)
    c_si = [0] * n
    c_it = [0] * n
    terms: list[TermSpec] = []
    offset = 0
    for req in requests:
        for _ in range(req.count):
            kind = req.kind
            size = req.size or rng.randint(2, min(n, 6))
            if kind == "pairwise":
                size = 2
            if size > n or size < 2:
                raise ValueError(f"{kind} term of size {size} does not fit {n} nodes")
            nodes = sorted(rng.sample(range(n), size))
            spec, deltas, off = random_term(rng, kind, nodes, max_value)
            terms.append(spec)
            for v, dsi, dit in deltas:
                c_si[v] += dsi
                c_it[v] += dit
            offset += off
    for i in range(n):
        c_si[i] += rng.randint(0, max(0, max_value - c_si[i]))
        c_it[i] += rng.randint(0, max(0, max_value - c_it[i]))
    return Instance(n, tuple(c_si), tuple(c_it), tuple(terms), offset)


def mixed_instance(seed: int, max_nodes: int = 10, max_terms: int = 6, max_size: int = 6,
                   max_value: int = 50) -> Instance:
    """Small instance mixing all kinds; the shape is drawn from ``seed``."""
    rng = random.Random(seed)
    n = rng.randint(2, max_nodes)
    requests = []
    for _ in range(rng.randint(1, max_terms)):
        kind = KINDS[rng.randrange(len(KINDS))]
        size = 2 if kind == "pairwise" else rng.randint(2, min(n, max_size))
        requests.append(TermRequest(kind, 1, size))
    budget = rng.randint(1, max_value)
    sub_seed = rng.randrange(1 << 30)
    while True:
        inst = generate(n, requests, budget, sub_seed)
        # Unary deltas from several terms can stack on one node.
        if inst.U <= max_value or budget == 1:
            return inst
        budget = max(1, budget * 3 // 4)


def chain_instance(n: int, n_card: int, card_size: int, max_value: int, seed: int,
                   zero_cardinality: bool = False) -> Instance:
    """Pairwise chain 0-1-...-(n-1) plus cardinality terms on random node sets."""
    rng = random.Random(seed)
    terms: list[TermSpec] = [PairwiseSpec((i, i + 1), rng.randint(0, max_value),
                                          rng.randint(0, max_value)) for i in range(n - 1)]
    for _ in range(n_card):
        nodes = tuple(sorted(rng.sample(range(n), card_size)))
        g = bounded_concave_sequence(rng, card_size, max_value)
        if zero_cardinality:
            g = (0,) * (card_size + 1)
        terms.append(CardinalitySpec(nodes, g))
    c_si = tuple(rng.randint(0, max_value) for _ in range(n))
    c_it = tuple(rng.randint(0, max_value) for _ in range(n))
    return Instance(n, c_si, c_it, tuple(terms), 0)
