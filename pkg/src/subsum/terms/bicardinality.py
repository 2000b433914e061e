from __future__ import annotations

from ..smawk import MatrixView, column_minima, row_minima
from .base import Phase, Term
from .groups import SortedGroups, walk_groups, walk_left_from


class BicardinalityTerm(Term):
    """f_Q(S) = g(|S & Q'|, |S & Q''|) under the scaled (rounded) function.

    Local members 0..m'-1 are Q' (flows ``y``), m'..m-1 are Q'' (flows ``z``).
    The residual grid gbar(k', k'') = g_phase(k', k'') - py[k'] - pz[k''] is
    never stored; ``py``/``pz`` are prefix sums of the sorted flows.
    """

    kind = "bicardinality"

    def __init__(self, spec) -> None:
        super().__init__(spec)
        self.mp = len(spec.qprime)
        self.ms = len(spec.qsecond)
        self.y = [0] * self.mp
        self.z = [0] * self.ms
        self.grid = [list(row) for row in spec.g]
        self._cache_valid = False
        self.rebuild_structures()

    # -- structures -----------------------------------------------------------
    def rebuild_structures(self) -> None:
        self.gy = SortedGroups(self.y)
        self.gz = SortedGroups(self.z)
        self.py = self.gy.prefix_sums()
        self.pz = self.gz.prefix_sums()
        self._reset_group_flags()
        self._cache_valid = False

    def _reset_group_flags(self) -> None:
        self.within_y = [False] * len(self.gy)
        self.within_z = [False] * len(self.gz)
        self.cross_to_z = [False] * len(self.gz)
        self.cross_to_y = [False] * len(self.gy)

    def _scale_grid(self, phase: Phase) -> None:
        m, g = self.m, self.spec.g
        self.grid = [[phase.round_value(g[a][b], a + b, m) for b in range(self.ms + 1)]
                     for a in range(self.mp + 1)]

    def gbar(self, a: int, b: int) -> int:
        return self.grid[a][b] - self.py[a] - self.pz[b]

    def prepare_bfs(self) -> None:
        """Row/column minima of gbar and the cross-arc boundaries b(a), b'(a)."""
        gbar = self.gbar
        view = MatrixView(self.mp + 1, self.ms + 1, gbar)
        self.row_arg = rows = row_minima(view)
        self.col_arg = cols = column_minima(view)
        self.row_min = [gbar(a, rows[a]) for a in range(self.mp + 1)]
        self.col_min = [gbar(cols[b], b) for b in range(self.ms + 1)]
        mp, ms = self.mp, self.ms
        bound = [0] * (mp + 1)
        bound[mp] = rows[mp]
        for a in range(mp - 1, 0, -1):
            bound[a] = bound[a + 1] if self.row_min[a] > 0 else min(bound[a + 1], rows[a])
        bound_t = [0] * (ms + 1)
        bound_t[ms] = cols[ms]
        for b in range(ms - 1, 0, -1):
            bound_t[b] = bound_t[b + 1] if self.col_min[b] > 0 else min(bound_t[b + 1], cols[b])
        self.bound_y_to_z = bound
        self.bound_z_to_y = bound_t
        self._cache_valid = True
        self.counters["work"] += 4 * (mp + ms + 2)

    def begin_search(self) -> None:
        if not self._cache_valid:
            self.prepare_bfs()

    # -- flow ------------------------------------------------------------------
    def flows(self) -> list[int]:
        return self.y + self.z

    def _set_flows(self, values: list[int]) -> None:
        self.y[:] = values[:self.mp]
        self.z[:] = values[self.mp:]

    def saturation(self, k: int, flows: list[int]) -> int:
        """Largest raise of member ``k`` keeping ``flows`` in the polyhedron."""
        mp = self.mp
        own_part, other_part = (flows[:mp], flows[mp:]) if k < mp else (flows[mp:], flows[:mp])
        local = k if k < mp else k - mp
        rest = sorted((v for idx, v in enumerate(own_part) if idx != local), reverse=True)
        rest_top = [0]
        for v in rest:
            rest_top.append(rest_top[-1] + v)
        other_top = [0]
        for v in sorted(other_part, reverse=True):
            other_top.append(other_top[-1] + v)
        best = None
        grid = self.grid
        for a in range(1, len(own_part) + 1):
            base = flows[k] + rest_top[a - 1]
            for b in range(len(other_part) + 1):
                g = grid[a][b] if k < mp else grid[b][a]
                val = g - base - other_top[b]
                if best is None or val < best:
                    best = val
        return best

    def adjust_flow(self, phase: Phase) -> list[int]:
        self.counters["adjust"] += 1
        self.phase = phase
        self._scale_grid(phase)
        old = self.flows()
        shift = self.m * phase.ceil_delta
        cur = [v - shift for v in old]
        for k in range(self.m):
            cur[k] += self.saturation(k, cur)
        self._set_flows(cur)
        self.rebuild_structures()
        deltas = [new - was for new, was in zip(cur, old)]
        assert sum(abs(d) for d in deltas) <= 2 * self.m * self.m * phase.ceil_delta
        self.counters["work"] += self.m ** 3
        return deltas

    # -- search ----------------------------------------------------------------
    def get_neighbors(self, i: int, phase: Phase) -> list[int]:
        reached = self.reached
        assert not reached[i], "get_neighbors called on a reached member"
        reached[i] = True
        self.counters["neighbors"] += 1
        if not self._cache_valid:
            self.prepare_bfs()
        mp = self.mp
        out: list[int] = []
        positive = _positive
        if i < mp:
            local_reached = _View(reached, 0, mp)
            found: list[int] = []
            self.counters["work"] += walk_groups(
                self.gy, i, local_reached, self.within_y, self.row_min, positive, found)
            out.extend(found)
            limit = self.bound_y_to_z[self.gy.L(i)]
            v = _rightmost_group(self.gz, limit)
            if v is not None:
                found = []
                self.counters["work"] += walk_left_from(
                    self.gz, v, _View(reached, mp, self.ms), self.cross_to_z, found)
                out.extend(e + mp for e in found)
        else:
            li = i - mp
            local_reached = _View(reached, mp, self.ms)
            found = []
            self.counters["work"] += walk_groups(
                self.gz, li, local_reached, self.within_z, self.col_min, positive, found)
            out.extend(e + mp for e in found)
            limit = self.bound_z_to_y[self.gz.L(li)]
            v = _rightmost_group(self.gy, limit)
            if v is not None:
                found = []
                self.counters["work"] += walk_left_from(
                    self.gy, v, _View(reached, 0, mp), self.cross_to_y, found)
                out.extend(found)
        return out

    def send_flow(self, i: int, j: int, amount: int) -> None:
        self.counters["sends"] += 1
        mp, c = self.mp, amount
        side_i = (self.gy, self.py, i) if i < mp else (self.gz, self.pz, i - mp)
        side_j = (self.gy, self.py, j) if j < mp else (self.gz, self.pz, j - mp)
        if side_i[0] is side_j[0]:
            groups, prefix, a = side_i
            b = side_j[2]
            _same_side_push(groups, prefix, a, b, c)
            groups.reposition(a, b)
            groups.regroup()
        else:
            _single_change(*side_i, c)
            _single_change(*side_j, -c)
        self.counters["work"] += self.m
        self._reset_group_flags()
        self._cache_valid = False

    def reset_reached(self) -> None:
        self.reached = [False] * self.m
        self._reset_group_flags()

    def is_reached(self, i: int) -> bool:
        return self.reached[i]

    def alpha_bound(self) -> int:
        return 5 * self.m * self.m

    def scaled_value(self, bits: int, phase: Phase) -> int:
        k = bin(bits).count("1")
        return phase.round_value(self.spec.local_value(bits), k, self.m)


def _positive(x: int) -> bool:
    return x > 0


def _rightmost_group(groups: SortedGroups, limit: int) -> int | None:
    """Last group whose right rank is <= limit (ranks grow with group index)."""
    best = None
    for u, r in enumerate(groups.g_right):
        if r > limit:
            break
        best = u
    return best


def _same_side_push(groups: SortedGroups, prefix: list[int], a: int, b: int, c: int) -> None:
    va, vb = groups.values[a], groups.values[b]
    la, rb = groups.L(a), groups.R(b)
    groups.values[a] = va + c
    groups.values[b] = vb - c
    if (va - vb) % c:
        prefix[:] = _prefix_of(groups.values)
    elif va <= vb - 2 * c:
        for k in range(rb, la):
            prefix[k] -= c
    elif va >= vb:
        for k in range(la, rb):
            prefix[k] += c


def _single_change(groups: SortedGroups, prefix: list[int], e: int, d: int) -> None:
    """Shift one flow by ``d``; the element keeps its rank when it stays
    within the neighbouring values, which holds for phase multiples."""
    values, order = groups.values, groups.order
    rank = groups.L(e) if d > 0 else groups.R(e)
    new = values[e] + d
    values[e] = new
    if d > 0:
        keeps_rank = rank == 1 or values[order[rank - 2]] >= new
    else:
        keeps_rank = rank == len(order) or values[order[rank]] <= new
    if keeps_rank:
        for k in range(rank, len(prefix)):
            prefix[k] += d
    groups.reposition(e)
    groups.regroup()
    if not keeps_rank:
        prefix[:] = groups.prefix_sums()


def _prefix_of(values: list[int]) -> list[int]:
    out = [0]
    for v in sorted(values, reverse=True):
        out.append(out[-1] + v)
    return out


class _View:
    """A window onto a slice of a flag list, indexable by local position."""

    __slots__ = ("base", "start", "size")

    def __init__(self, base: list[bool], start: int, size: int) -> None:
        self.base, self.start, self.size = base, start, size

    def __getitem__(self, k: int) -> bool:
        return self.base[self.start + k]

    def __setitem__(self, k: int, value: bool) -> None:
        self.base[self.start + k] = value
