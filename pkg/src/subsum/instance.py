"""Problem representation for sums of submodular terms.

The function being minimized is

    f(S) = offset + sum_{i in S} c_it[i] + sum_{i not in S} c_si[i]
                  + sum_Q f_Q(S & Q)

where every term f_Q is normalized: f_Q(empty) = f_Q(Q) = 0 and f_Q >= 0.
Terms are declared by kind; nothing here tries to detect structure.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import ClassVar, Iterable, Sequence, Union

log = logging.getLogger(__name__)

DEFAULT_GENERAL_CAP = 16
HARD_GENERAL_CAP = 20
MAGNITUDE_LIMIT = 2**62
EXHAUSTIVE_CHECK_LIMIT = 12


class InstanceError(ValueError):
    """Structurally malformed instance or term."""


class NormalizationError(ValueError):
    """A term cannot be brought into normalized form with its declared kind."""


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _check_members(members: Sequence[int], what: str) -> None:
    if len(members) < 2:
        raise InstanceError(f"{what}: a term needs at least 2 members, got {len(members)}")
    if len(set(members)) != len(members):
        raise InstanceError(f"{what}: duplicate members {list(members)}")
    if any(b <= a for a, b in zip(members, members[1:])):
        raise InstanceError(f"{what}: members must be sorted ascending, got {list(members)}")


@dataclass(frozen=True)
class PairwiseSpec:
    """|Q| = 2 term with f({i}) = a and f({j}) = b for members (i, j)."""

    members: tuple[int, int]
    a: int
    b: int
    kind: ClassVar[str] = "pairwise"

    def __post_init__(self) -> None:
        if len(self.members) != 2:
            raise InstanceError("pairwise term must have exactly 2 members")
        _check_members(self.members, "pairwise term")

    @property
    def size(self) -> int:
        return 2

    def local_value(self, bits: int) -> int:
        if bits == 1:
            return self.a
        if bits == 2:
            return self.b
        return 0

    def value_range(self) -> tuple[int, int]:
        return min(0, self.a, self.b), max(0, self.a, self.b)


@dataclass(frozen=True)
class CardinalitySpec:
    """f_Q(S) = g(|S|) with g concave."""

    members: tuple[int, ...]
    g: tuple[int, ...]
    kind: ClassVar[str] = "cardinality"

    def __post_init__(self) -> None:
        _check_members(self.members, "cardinality term")
        if len(self.g) != len(self.members) + 1:
            raise InstanceError(
                f"cardinality term: g needs {len(self.members) + 1} entries, got {len(self.g)}")

    @property
    def size(self) -> int:
        return len(self.members)

    def local_value(self, bits: int) -> int:
        return self.g[_popcount(bits)]

    def value_range(self) -> tuple[int, int]:
        return min(self.g), max(self.g)


@dataclass(frozen=True)
class BicardinalitySpec:
    """f_Q(S) = g(|S & Q'|, |S & Q''|) for disjoint Q', Q''.

    Local member order is Q' (ascending) followed by Q'' (ascending).
    """

    qprime: tuple[int, ...]
    qsecond: tuple[int, ...]
    g: tuple[tuple[int, ...], ...]
    kind: ClassVar[str] = "bicardinality"

    def __post_init__(self) -> None:
        if not self.qprime or not self.qsecond:
            raise InstanceError("bicardinality term: Q' and Q'' must both be nonempty")
        for part in (self.qprime, self.qsecond):
            if any(b <= a for a, b in zip(part, part[1:])):
                raise InstanceError("bicardinality term: Q' and Q'' must be sorted ascending")
        if set(self.qprime) & set(self.qsecond):
            raise InstanceError("bicardinality term: Q' and Q'' overlap")
        if len(self.g) != len(self.qprime) + 1 or any(
                len(row) != len(self.qsecond) + 1 for row in self.g):
            raise InstanceError(
                f"bicardinality term: grid must be {len(self.qprime) + 1}x{len(self.qsecond) + 1}")

    @property
    def members(self) -> tuple[int, ...]:
        return self.qprime + self.qsecond

    @property
    def size(self) -> int:
        return len(self.qprime) + len(self.qsecond)

    def local_value(self, bits: int) -> int:
        mp = len(self.qprime)
        low = bits & ((1 << mp) - 1)
        return self.g[_popcount(low)][_popcount(bits >> mp)]

    def value_range(self) -> tuple[int, int]:
        flat = [v for row in self.g for v in row]
        return min(flat), max(flat)


@dataclass(frozen=True)
class GeneralSpec:
    """Arbitrary term given as a full table; bit k of the index is members[k]."""

    members: tuple[int, ...]
    table: tuple[int, ...]
    kind: ClassVar[str] = "general"

    def __post_init__(self) -> None:
        _check_members(self.members, "general term")
        if len(self.members) > HARD_GENERAL_CAP:
            raise InstanceError(
                f"general term: {len(self.members)} members exceeds hard cap {HARD_GENERAL_CAP}")
        if len(self.table) != 1 << len(self.members):
            raise InstanceError(
                f"general term: table needs {1 << len(self.members)} entries, got {len(self.table)}")

    @property
    def size(self) -> int:
        return len(self.members)

    def local_value(self, bits: int) -> int:
        return self.table[bits]

    def value_range(self) -> tuple[int, int]:
        return min(self.table), max(self.table)


TermSpec = Union[PairwiseSpec, CardinalitySpec, BicardinalitySpec, GeneralSpec]


@dataclass(frozen=True)
class Instance:
    n: int
    c_si: tuple[int, ...]
    c_it: tuple[int, ...]
    terms: tuple[TermSpec, ...] = ()
    offset: int = 0
    _member_sets: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InstanceError("node count must be nonnegative")
        if len(self.c_si) != self.n or len(self.c_it) != self.n:
            raise InstanceError("unary capacity arrays must have one entry per node")
        for t, term in enumerate(self.terms):
            for v in term.members:
                if not 0 <= v < self.n:
                    raise InstanceError(f"term {t}: member {v} out of range [0, {self.n})")
        object.__setattr__(self, "_member_sets", tuple(
            tuple(term.members) for term in self.terms))

    @cached_property
    def U(self) -> int:
        bound = 1
        for c in itertools.chain(self.c_si, self.c_it):
            bound = max(bound, abs(c))
        for term in self.terms:
            lo, hi = term.value_range()
            bound = max(bound, -lo, hi)
        return bound

    def evaluate(self, S: Iterable[int]) -> int:
        inside = bytearray(self.n)
        for v in S:
            if not 0 <= v < self.n:
                raise ValueError(f"node {v} out of range [0, {self.n})")
            inside[v] = 1
        total = self.offset
        for i in range(self.n):
            total += self.c_it[i] if inside[i] else self.c_si[i]
        for term, members in zip(self.terms, self._member_sets):
            bits = 0
            for k, v in enumerate(members):
                if inside[v]:
                    bits |= 1 << k
            total += term.local_value(bits)
        return total

    def evaluate_mask(self, mask: int) -> int:
        """Evaluate f on the node set encoded by bit i of ``mask``."""
        return self.evaluate(i for i in range(self.n) if mask >> i & 1)


def evaluate(instance: Instance, S: Iterable[int]) -> int:
    return instance.evaluate(S)


# ---------------------------------------------------------------- validation

def _is_submodular_table(table: Sequence[int], m: int) -> bool:
    full = (1 << m) - 1
    for S in range(1 << m):
        rest = full & ~S
        fS = table[S]
        i_bits = rest
        while i_bits:
            i = i_bits & -i_bits
            i_bits ^= i
            j_bits = i_bits
            fi = table[S | i]
            while j_bits:
                j = j_bits & -j_bits
                j_bits ^= j
                if fi + table[S | j] < table[S | i | j] + fS:
                    return False
    return True


def _concave(seq: Sequence[int]) -> bool:
    diffs = [b - a for a, b in zip(seq, seq[1:])]
    return all(d2 <= d1 for d1, d2 in zip(diffs, diffs[1:]))


def term_violations(term: TermSpec, general_cap: int = DEFAULT_GENERAL_CAP) -> list[str]:
    """Payload problems for one term, empty if the term is valid and normalized."""
    out: list[str] = []
    if isinstance(term, PairwiseSpec):
        if term.a < 0 or term.b < 0:
            out.append(f"term value negative (a={term.a}, b={term.b}); "
                       "normalized terms must satisfy min f = f(empty) = f(Q) = 0")
    elif isinstance(term, CardinalitySpec):
        g = term.g
        if g[0] != 0 or g[-1] != 0:
            out.append(f"g(0)={g[0]} and g(m)={g[-1]} must both be 0")
        if min(g) < 0:
            out.append(f"term value negative: min g = {min(g)}")
        if not _concave(g):
            out.append("g is not concave (first differences must be non-increasing)")
    elif isinstance(term, BicardinalitySpec):
        g = term.g
        mp, ms = len(term.qprime), len(term.qsecond)
        if g[0][0] != 0 or g[mp][ms] != 0:
            out.append(f"g(0,0)={g[0][0]} and g(m',m'')={g[mp][ms]} must both be 0")
        low = min(v for row in g for v in row)
        if low < 0:
            out.append(f"term value negative: min g = {low}")
        if not all(_concave(row) for row in g) or not all(
                _concave([g[r][c] for r in range(mp + 1)]) for c in range(ms + 1)):
            out.append("g is not concave along each axis")
        if any(g[r][c] + g[r + 1][c + 1] > g[r][c + 1] + g[r + 1][c]
               for r in range(mp) for c in range(ms)):
            out.append("g violates the Monge inequality")
    elif isinstance(term, GeneralSpec):
        m = term.size
        if m > general_cap:
            out.append(f"general term has {m} members, above the configured cap {general_cap}")
        t = term.table
        if t[0] != 0:
            out.append(f"f(empty) = {t[0]} != 0")
        if t[-1] != 0:
            out.append(f"f(Q) = {t[-1]} != 0")
        if min(t) < 0:
            out.append(f"term value negative: min f = {min(t)}")
        if m > EXHAUSTIVE_CHECK_LIMIT:
            log.warning("general term with %d members: submodularity not checked", m)
        elif not _is_submodular_table(t, m):
            out.append("not submodular")
    return out


def validate(instance: Instance, general_cap: int = DEFAULT_GENERAL_CAP) -> list[str]:
    """Every invariant violation of ``instance`` as a readable string."""
    report: list[str] = []
    for i in range(instance.n):
        if instance.c_si[i] < 0:
            report.append(f"node {i}: negative source capacity {instance.c_si[i]}")
        if instance.c_it[i] < 0:
            report.append(f"node {i}: negative sink capacity {instance.c_it[i]}")
    if general_cap > HARD_GENERAL_CAP:
        report.append(f"general-term cap {general_cap} exceeds hard cap {HARD_GENERAL_CAP}")
    for t, term in enumerate(instance.terms):
        report.extend(f"term {t} ({term.kind}): {msg}"
                      for msg in term_violations(term, general_cap))
    U = instance.U
    max_q = max((term.size for term in instance.terms), default=0)
    term_sum = sum(max(-lo, hi) for lo, hi in (t.value_range() for t in instance.terms))
    for label, magnitude in (("n*U", instance.n * U),
                             ("sum of term magnitudes", term_sum),
                             ("2U*max|Q|^2", 2 * U * max_q * max_q)):
        if magnitude > MAGNITUDE_LIMIT:
            report.append(f"arithmetic bound exceeded: {label} = {magnitude} > 2^62")
    return report


# ------------------------------------------------------------- normalization

UnaryDelta = tuple[int, int, int]  # (node, add to c_si, add to c_it)


def _slope_to_unary(node: int, slope: int) -> tuple[UnaryDelta, int]:
    # slope*[i in S] == c_it += slope            for slope >= 0
    #                == slope + (-slope)*[i not in S] otherwise
    if slope >= 0:
        return (node, 0, slope), 0
    return (node, -slope, 0), slope


def normalize_general(table: Sequence[int], members: Sequence[int]
                      ) -> tuple[GeneralSpec, list[UnaryDelta], int]:
    """Split a submodular table into a normalized table plus unary terms.

    Uses the greedy base vector in ascending member order. A table that is
    already normalized is returned unchanged.
    """
    m = len(members)
    if len(table) != 1 << m:
        raise NormalizationError(f"table needs {1 << m} entries, got {len(table)}")
    if m <= EXHAUSTIVE_CHECK_LIMIT and not _is_submodular_table(table, m):
        raise NormalizationError("table is not submodular")
    members = tuple(members)
    if table[0] == 0 and table[-1] == 0 and min(table) >= 0:
        return GeneralSpec(members, tuple(table)), [], 0
    base = table[0]
    shifted = [v - base for v in table]
    phi = []
    prev = 0
    for k in range(m):
        cur = shifted[(1 << (k + 1)) - 1]
        phi.append(cur - prev)
        prev = cur
    normalized = []
    for S in range(1 << m):
        normalized.append(shifted[S] - sum(phi[k] for k in range(m) if S >> k & 1))
    if min(normalized) < 0:
        raise NormalizationError("table is not submodular (greedy vector infeasible)")
    deltas = []
    offset = base
    for v, p in zip(members, phi):
        d, off = _slope_to_unary(v, p)
        if p:
            deltas.append(d)
        offset += off
    return GeneralSpec(members, tuple(normalized)), deltas, offset


def normalize_cardinality(g: Sequence[int], members: Sequence[int]
                          ) -> tuple[CardinalitySpec, list[UnaryDelta], int]:
    """Remove a constant per-member slope so that g(0) = g(m) = 0."""
    m = len(members)
    if len(g) != m + 1:
        raise NormalizationError(f"g needs {m + 1} entries, got {len(g)}")
    if not _concave(g):
        raise NormalizationError("g is not concave")
    rise = g[m] - g[0]
    if rise % m:
        raise NormalizationError(
            f"slope {rise}/{m} is not integral; represent this term as a general table")
    slope = rise // m
    offset = g[0]
    deltas = []
    if slope:
        for v in members:
            d, off = _slope_to_unary(v, slope)
            deltas.append(d)
            offset += off
    gn = tuple(g[k] - g[0] - slope * k for k in range(m + 1))
    return CardinalitySpec(tuple(members), gn), deltas, offset


def normalize_bicardinality(g: Sequence[Sequence[int]], qprime: Sequence[int],
                            qsecond: Sequence[int]
                            ) -> tuple[BicardinalitySpec, list[UnaryDelta], int]:
    """Remove per-part slopes (a on Q', b on Q'') so the grid becomes normalized.

    Candidate slopes are tried with ``a`` ascending; the first pair leaving a
    nonnegative grid wins. A grid that is already normalized is returned
    unchanged.
    """
    mp, ms = len(qprime), len(qsecond)
    if len(g) != mp + 1 or any(len(row) != ms + 1 for row in g):
        raise NormalizationError(f"grid must be {mp + 1}x{ms + 1}")
    g0 = g[0][0]
    if g0 == 0 and g[mp][ms] == 0 and min(v for row in g for v in row) >= 0:
        return BicardinalitySpec(tuple(qprime), tuple(qsecond),
                                 tuple(tuple(row) for row in g)), [], 0
    total = g[mp][ms] - g0
    a_max = (g[mp][0] - g0) // mp
    b_max = (g[0][ms] - g0) // ms
    a_min = -((-(total - b_max * ms)) // mp)  # ceil division
    for a in range(a_min, a_max + 1):
        rest = total - a * mp
        if rest % ms:
            continue
        b = rest // ms
        if b > b_max:
            continue
        grid = tuple(tuple(g[r][c] - g0 - a * r - b * c for c in range(ms + 1))
                     for r in range(mp + 1))
        if min(v for row in grid for v in row) < 0:
            continue
        deltas = []
        offset = g0
        for part, slope in ((qprime, a), (qsecond, b)):
            if slope:
                for v in part:
                    d, off = _slope_to_unary(v, slope)
                    deltas.append(d)
                    offset += off
        return BicardinalitySpec(tuple(qprime), tuple(qsecond), grid), deltas, offset
    raise NormalizationError(
        "no integer slope pair normalizes this grid; represent it as a general table")


def bicardinality_table(term: BicardinalitySpec) -> list[int]:
    return [term.local_value(bits) for bits in range(1 << term.size)]


def cardinality_table(g: Sequence[int], m: int) -> list[int]:
    return [g[_popcount(bits)] for bits in range(1 << m)]


def fold_singleton(node: int, empty_value: int, node_value: int) -> tuple[UnaryDelta, int]:
    """A one-member term becomes a unary capacity plus an offset."""
    d, off = _slope_to_unary(node, node_value - empty_value)
    return d, off + empty_value


def is_normalized(term: TermSpec) -> bool:
    return not term_violations(term, HARD_GENERAL_CAP)


def apply_unary_deltas(c_si: list[int], c_it: list[int], deltas: Iterable[UnaryDelta]) -> None:
    for node, dsi, dit in deltas:
        c_si[node] += dsi
        c_it[node] += dit


def normalize_instance(instance: Instance, general_cap: int = DEFAULT_GENERAL_CAP) -> Instance:
    """Normalize every term that is not already normalized.

    Cardinality-type terms whose slopes are not integral fall back to a
    general table when they are small enough; otherwise NormalizationError.
    """
    c_si = list(instance.c_si)
    c_it = list(instance.c_it)
    offset = instance.offset
    terms: list[TermSpec] = []
    for term in instance.terms:
        if is_normalized(term):
            terms.append(term)
            continue
        try:
            if isinstance(term, PairwiseSpec):
                table = [0, term.a, term.b, 0]
                new, deltas, off = normalize_general(table, term.members)
                new = PairwiseSpec(term.members, new.table[1], new.table[2])
            elif isinstance(term, CardinalitySpec):
                new, deltas, off = normalize_cardinality(term.g, term.members)
            elif isinstance(term, BicardinalitySpec):
                new, deltas, off = normalize_bicardinality(term.g, term.qprime, term.qsecond)
            else:
                new, deltas, off = normalize_general(term.table, term.members)
        except NormalizationError:
            if isinstance(term, GeneralSpec) or term.size > general_cap:
                raise
            table, members = _as_sorted_table(term)
            new, deltas, off = normalize_general(table, members)
        terms.append(new)
        apply_unary_deltas(c_si, c_it, deltas)
        offset += off
    return Instance(instance.n, tuple(c_si), tuple(c_it), tuple(terms), offset)


def _as_sorted_table(term: TermSpec) -> tuple[list[int], tuple[int, ...]]:
    """Full table of ``term`` re-indexed so bit k is the k-th smallest member."""
    members = term.members
    order = sorted(range(len(members)), key=lambda k: members[k])
    table = []
    for bits in range(1 << len(members)):
        local = 0
        for pos, k in enumerate(order):
            if bits >> pos & 1:
                local |= 1 << k
        table.append(term.local_value(local))
    return table, tuple(members[k] for k in order)
