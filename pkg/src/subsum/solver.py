"""Capacity-scaling augmenting-path solver.

Flow lives on three kinds of arcs: source->node (``phi_si``), node->sink
(``phi_it``) and node<->term copies (held inside each runtime term). Reverse
arcs into the source and out of the sink are never searched, so they are
represented only implicitly: ``phi_si`` and ``phi_it`` may go negative when a
phase start pushes flow back.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .instance import EXHAUSTIVE_CHECK_LIMIT, Instance
from .terms import Phase, Term, make_term

log = logging.getLogger(__name__)


class InvariantError(AssertionError):
    """A flow-state invariant failed during an audited run."""


@dataclass(frozen=True)
class TermHop:
    term: int
    i: int  # local member sending
    j: int  # local member receiving
    tail: int  # node id of i
    head: int  # node id of j


@dataclass(frozen=True)
class AugmentingPath:
    """s -> source node -> (term hops) -> sink node -> t."""

    source: int
    hops: tuple[TermHop, ...]
    sink: int

    @property
    def nodes(self) -> list[int]:
        return [self.source] + [h.head for h in self.hops]


@dataclass
class PhaseStats:
    two_delta: int
    augmentations: int = 0
    bfs_count: int = 0
    bound: int = 0


@dataclass
class SolveResult:
    minimum: int
    minimizer: tuple[int, ...]
    flow_value: int
    offset: int
    phases: list[PhaseStats] = field(default_factory=list)
    counters: dict[str, dict[str, int]] = field(default_factory=dict)


class Solver:
    def __init__(self, instance: Instance, audit: bool = False,
                 path_hook: Optional[Callable[["Solver", AugmentingPath, Phase], None]] = None
                 ) -> None:
        self.instance = instance
        self.audit_enabled = audit
        self.path_hook = path_hook
        n = instance.n
        self.n = n
        self.c_si = list(instance.c_si)
        self.c_it = list(instance.c_it)
        self.phi_si = [0] * n
        self.phi_it = [0] * n
        self.terms: list[Term] = [make_term(spec) for spec in instance.terms]
        # Per node: (term index, local position, term, term members).
        self.incidence: list[list[tuple[int, int, Term, tuple[int, ...]]]] = [
            [] for _ in range(n)]
        for t, term in enumerate(self.terms):
            for k, v in enumerate(term.members):
                self.incidence[v].append((t, k, term, term.members))
        self.phase: Phase | None = None
        self.phases: list[PhaseStats] = []
        self._active: list[int] = []
        self._stamp = [0] * n
        self._epoch = 0
        self._parent: list[tuple[int, int, int, int] | None] = [None] * n

    # ------------------------------------------------------------------ driver
    @property
    def flow_value(self) -> int:
        return sum(self.phi_si)

    def alpha_total(self) -> int:
        return sum(term.alpha_bound() for term in self.terms)

    def solve(self) -> SolveResult:
        phase: Phase | None = Phase.initial(self.instance.U)
        while phase is not None:
            self.phases.append(self.run_phase(phase))
            phase = phase.next()
        S = self.extract_cut()
        minimum = self.flow_value + self.instance.offset
        value = self.instance.evaluate(S)
        if value != minimum:
            raise InvariantError(
                f"cut value {value} differs from flow value + offset {minimum}")
        return SolveResult(minimum, tuple(S), self.flow_value, self.instance.offset,
                           self.phases, self.counters())

    def counters(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for term in self.terms:
            agg = out.setdefault(term.kind, {"terms": 0})
            agg["terms"] += 1
            for key, val in term.counters.items():
                agg[key] = agg.get(key, 0) + val
        return dict(sorted(out.items()))

    def run_phase(self, phase: Phase) -> PhaseStats:
        self.phase = phase
        cd = phase.ceil_delta
        stats = PhaseStats(phase.two_delta, bound=2 * self.n + self.alpha_total())
        imbalance = [0] * self.n
        for term in self.terms:
            deltas = term.adjust_flow(phase)
            for v, d in zip(term.members, deltas):
                imbalance[v] -= d
        for i, delta in enumerate(imbalance):
            if delta > 0:
                self.phi_si[i] -= delta
            elif delta < 0:
                self.phi_it[i] += delta
        if self.audit_enabled:
            self.audit(phase)
        # Single-node paths first; no new ones appear later in the phase since
        # unary slacks only shrink.
        c_si, c_it, phi_si, phi_it = self.c_si, self.c_it, self.phi_si, self.phi_it
        for i in range(self.n):
            k = min(c_si[i] - phi_si[i], c_it[i] - phi_it[i]) // cd
            if k > 0:
                phi_si[i] += k * cd
                phi_it[i] += k * cd
                stats.augmentations += k
        self._active = [i for i in range(self.n) if c_si[i] - phi_si[i] >= cd]
        while True:
            stats.bfs_count += 1
            if not self.augment_batch(phase, stats):
                break
        log.debug("phase 2*Delta=%d: %d augmentations, %d searches",
                  phase.two_delta, stats.augmentations, stats.bfs_count)
        return stats

    # ------------------------------------------------------------------ search
    def _search(self, phase: Phase, mode: str) -> list[int]:
        """Breadth-first search from the source.

        Nodes with source slack form the first level and count as visited
        without being stamped. Nodes with sink slack are recorded and not
        expanded. ``mode`` is "first" (stop at the first such node), "all"
        (record every one) or "reach" (ignore sink slack entirely).
        """
        cd = phase.ceil_delta
        c_si, c_it, phi_si, phi_it = self.c_si, self.c_it, self.phi_si, self.phi_it
        incidence, parent = self.incidence, self._parent
        self._epoch += 1
        epoch = self._epoch
        stamp = self._stamp
        check_sink = mode != "reach"
        stop = mode == "first"
        touched: list[Term] = []
        touched_ids: set[int] = set()
        queue: deque[int] = deque()
        sinks: list[int] = []

        def expand(i: int) -> bool:
            for t, li, term, members in incidence[i]:
                if term.reached[li]:
                    continue
                if t not in touched_ids:
                    touched_ids.add(t)
                    touched.append(term)
                    term.begin_search()
                for lj in term.get_neighbors(li, phase):
                    j = members[lj]
                    if stamp[j] == epoch or c_si[j] - phi_si[j] >= cd:
                        continue
                    stamp[j] = epoch
                    parent[j] = (i, t, li, lj)
                    if check_sink and c_it[j] - phi_it[j] >= cd:
                        sinks.append(j)
                        if stop:
                            return True
                    else:
                        queue.append(j)
            return False

        try:
            alive = []
            active = self._active
            done = False
            for pos, i in enumerate(active):
                if c_si[i] - phi_si[i] < cd:
                    continue
                alive.append(i)
                parent[i] = None
                if check_sink and c_it[i] - phi_it[i] >= cd:
                    sinks.append(i)
                    done = stop
                else:
                    done = expand(i)
                if done:
                    alive.extend(active[pos + 1:])
                    break
            self._active = alive
            while not done and queue:
                done = expand(queue.popleft())
        finally:
            for term in touched:
                term.reset_reached()
        return sinks

    def _trace(self, end: int) -> AugmentingPath:
        hops = []
        node = end
        while self._parent[node] is not None:
            i, t, li, lj = self._parent[node]
            hops.append(TermHop(t, li, lj, i, node))
            node = i
        hops.reverse()
        return AugmentingPath(node, tuple(hops), end)

    def find_augmenting_path(self, phase: Phase) -> AugmentingPath | None:
        """A shortest augmenting path, or None if the sink is unreachable."""
        sinks = self._search(phase, "first")
        return self._trace(sinks[0]) if sinks else None

    def augment_batch(self, phase: Phase, stats: PhaseStats) -> int:
        """Augment along as many paths of one search tree as stay valid.

        Every path is shortest when found. Pushing along one path changes
        only the terms it crosses, so a later path is still a valid minimal
        path if it crosses each already-pushed term once and that arc is
        still present. Returns the number of augmentations.
        """
        cd = phase.ceil_delta
        parent, terms = self._parent, self.terms
        c_si, phi_si = self.c_si, self.phi_si
        pushed: set[int] = set()
        done = 0
        for end in self._search(phase, "all"):
            hops = []
            node = end
            while parent[node] is not None:
                i, t, li, lj = parent[node]
                hops.append(TermHop(t, li, lj, i, node))
                node = i
            if c_si[node] - phi_si[node] < cd:
                continue
            if pushed and not _still_valid(hops, pushed, terms, phase):
                continue
            hops.reverse()
            path = AugmentingPath(node, tuple(hops), end)
            if self.path_hook is not None:
                self.path_hook(self, path, phase)
            self.augment(path, phase)
            pushed.update(h.term for h in hops)
            done += 1
            stats.augmentations += 1
            if self.audit_enabled:
                self.audit(phase)
        return done

    def augment(self, path: AugmentingPath, phase: Phase) -> None:
        cd = phase.ceil_delta
        self.phi_si[path.source] += cd
        for hop in path.hops:
            self.terms[hop.term].send_flow(hop.i, hop.j, cd)
        self.phi_it[path.sink] += cd

    def reachable(self, phase: Phase | None = None) -> list[int]:
        """Nodes reachable from the source in the current residual graph."""
        phase = phase or self.phase or Phase(1)
        saved = self._active
        cd = phase.ceil_delta
        self._active = [i for i in range(self.n) if self.c_si[i] - self.phi_si[i] >= cd]
        first_level = set(self._active)
        self._search(phase, "reach")
        self._active = saved
        epoch = self._epoch
        return sorted(i for i in range(self.n) if i in first_level or self._stamp[i] == epoch)

    def extract_cut(self) -> list[int]:
        """Minimizer read off the final residual graph (needs the last phase)."""
        final = Phase(1)
        S = self.reachable(final)
        for i in S:
            if self.c_it[i] - self.phi_it[i] >= final.ceil_delta:
                raise InvariantError(f"sink reachable through node {i}; flow is not maximum")
        return S

    # ------------------------------------------------------------------- audit
    def audit(self, phase: Phase) -> None:
        """Check capacity, conservation, granularity and term feasibility."""
        cd = phase.ceil_delta
        balance = [self.phi_si[i] - self.phi_it[i] for i in range(self.n)]
        for t, term in enumerate(self.terms):
            flows = term.flows()
            for v, f in zip(term.members, flows):
                balance[v] -= f
                if f % cd:
                    raise InvariantError(f"term {t}: flow {f} not a multiple of {cd}")
            problem = term_feasibility_problem(term, phase)
            if problem:
                raise InvariantError(f"term {t} ({term.kind}): {problem}")
        for i in range(self.n):
            if self.phi_si[i] > self.c_si[i]:
                raise InvariantError(f"node {i}: source arc over capacity")
            if self.phi_it[i] > self.c_it[i]:
                raise InvariantError(f"node {i}: sink arc over capacity")
            if balance[i]:
                raise InvariantError(f"node {i}: conservation off by {balance[i]}")
            if self.phi_si[i] % cd or self.phi_it[i] % cd:
                raise InvariantError(f"node {i}: unary flow not a multiple of {cd}")


def _still_valid(hops: list[TermHop], pushed: set[int], terms: list[Term], phase: Phase) -> bool:
    seen: set[int] = set()
    for hop in hops:
        if hop.term not in pushed:
            continue
        if hop.term in seen:
            return False
        seen.add(hop.term)
        if not terms[hop.term].has_arc(hop.i, hop.j, phase):
            return False
    return True


def term_feasibility_problem(term: Term, phase: Phase) -> str | None:
    """Why the term's flow is outside its phase base polyhedron, or None."""
    flows = term.flows()
    if sum(flows):
        return f"flows sum to {sum(flows)}, not 0"
    if term.m <= EXHAUSTIVE_CHECK_LIMIT:
        for bits in range(1 << term.m):
            r = term.residual_value(bits, phase)
            if r < 0:
                return f"residual {r} < 0 on local subset {bits:#b}"
        return None
    if hasattr(term, "recompute_gbar"):
        if min(term.recompute_gbar()) < 0:
            return "cardinality residual negative"
        return None
    if hasattr(term, "gbar"):
        if min(term.gbar(a, b) for a in range(term.mp + 1) for b in range(term.ms + 1)) < 0:
            return "bicardinality residual grid negative"
        return None
    if hasattr(term, "res") and min(term.res) < 0:
        return "general residual negative"
    return None


def solve(instance: Instance, audit: bool = False) -> SolveResult:
    return Solver(instance, audit=audit).solve()
