"""Members grouped into supernodes of equal flow, sorted by flow descending.

Positions L and R are 1-based ranks in the sorted sequence, as used by the
cardinality arc rule.
"""

from __future__ import annotations

import bisect
from typing import Callable


class SortedGroups:
    __slots__ = ("values", "order", "pos", "g_value", "g_left", "g_right",
                 "g_members", "group_of")

    def __init__(self, values: list[int]) -> None:
        self.values = values
        self.rebuild()

    def _key(self, e: int) -> tuple[int, int]:
        return (-self.values[e], e)

    def rebuild(self) -> None:
        self.order = sorted(range(len(self.values)), key=self._key)
        self.regroup()

    def reposition(self, *changed: int) -> None:
        """Restore sorted order after the listed values changed; regroup after."""
        order = self.order
        for e in changed:
            order.remove(e)
        for e in changed:
            bisect.insort(order, e, key=self._key)

    def regroup(self) -> None:
        values = self.values
        self.pos = pos = [0] * len(values)
        self.g_value, self.g_left, self.g_right, self.g_members = [], [], [], []
        self.group_of = group_of = [0] * len(values)
        last = None
        for p, e in enumerate(self.order):
            pos[e] = p
            v = values[e]
            if v != last:
                self.g_value.append(v)
                self.g_left.append(p + 1)
                self.g_right.append(p + 1)
                self.g_members.append([e])
                last = v
            else:
                self.g_right[-1] = p + 1
                self.g_members[-1].append(e)
            group_of[e] = len(self.g_value) - 1

    def L(self, e: int) -> int:
        return self.g_left[self.group_of[e]]

    def R(self, e: int) -> int:
        return self.g_right[self.group_of[e]]

    def prefix_sums(self) -> list[int]:
        out = [0]
        for e in self.order:
            out.append(out[-1] + self.values[e])
        return out

    def __len__(self) -> int:
        return len(self.g_value)


def add_group(groups: SortedGroups, u: int, reached: list[bool], out: list[int]) -> None:
    for e in groups.g_members[u]:
        if not reached[e]:
            reached[e] = True
            out.append(e)


def range_min(values: Callable[[int], int] | list[int], lo: int, hi: int) -> int | None:
    """Minimum of values[lo..hi]; None for an empty range."""
    if lo > hi:
        return None
    if isinstance(values, list):
        return min(values[lo:hi + 1])
    return min(values(k) for k in range(lo, hi + 1))


def walk_groups(groups: SortedGroups, i: int, reached: list[bool], group_done: list[bool],
                values, ok: Callable[[int], bool], out: list[int]) -> int:
    """Neighbors of member ``i`` under the two-branch cardinality arc rule.

    An arc i -> j exists if value(i) < value(j), or if value(i) >= value(j)
    and ``ok(min values[L(i) .. R(j)-1])`` (vacuous for an empty range).
    Group flags make repeated calls within one search cost O(m) in total.
    Returns the number of array entries inspected.
    """
    u = groups.group_of[i]
    if group_done[u]:
        return 0
    group_done[u] = True
    gl, gr = groups.g_left, groups.g_right
    work = 0
    low = range_min(values, gl[u], gr[u] - 1)
    work += gr[u] - gl[u]
    if low is None or ok(low):
        add_group(groups, u, reached, out)
    v = u - 1
    while v >= 0:
        add_group(groups, v, reached, out)
        if group_done[v]:
            break
        group_done[v] = True
        v -= 1
    cur = u
    last = len(groups) - 1
    while cur < last:
        nxt = cur + 1
        low = range_min(values, gl[cur], gr[nxt] - 1)
        work += gr[nxt] - gl[cur]
        if low is not None and not ok(low):
            break
        add_group(groups, nxt, reached, out)
        if group_done[nxt]:
            break
        group_done[nxt] = True
        cur = nxt
    return work + (u - max(v, 0)) + (cur - u)


def walk_left_from(groups: SortedGroups, v: int, reached: list[bool], group_done: list[bool],
                   out: list[int]) -> int:
    """Add group ``v`` and every group with larger value (all of them sit left)."""
    add_group(groups, v, reached, out)
    start = v
    while v >= 0:
        if group_done[v]:
            break
        group_done[v] = True
        if v > 0:
            add_group(groups, v - 1, reached, out)
        v -= 1
    return start - v + 1
