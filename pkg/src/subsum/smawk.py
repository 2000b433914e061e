"""Row minima of a totally monotone matrix in O(rows + cols) lookups.

Ties resolve to the leftmost column, which is what the boundary recursion
for bicardinality terms consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable


@dataclass
class MatrixView:
    rows: int
    cols: int
    entry: Callable[[int, int], int]

    def transposed(self) -> "MatrixView":
        entry = self.entry
        return MatrixView(self.cols, self.rows, lambda r, c: entry(c, r))


class CountingView(MatrixView):
    """A view that counts entry evaluations."""

    def __init__(self, rows: int, cols: int, entry: Callable[[int, int], int]) -> None:
        self.evaluations = 0

        def counted(r: int, c: int) -> int:
            self.evaluations += 1
            return entry(r, c)

        super().__init__(rows, cols, counted)


def row_minima(view: MatrixView) -> list[int]:
    """Leftmost minimum column of every row of a totally monotone ``view``."""
    if view.rows == 0 or view.cols == 0:
        return []
    entry = view.entry
    result = [0] * view.rows

    def solve(rows: list[int], cols: list[int]) -> None:
        # REDUCE: keep at most len(rows) candidate columns.
        stack: list[int] = []
        for c in cols:
            while stack:
                r = rows[len(stack) - 1]
                if entry(r, stack[-1]) > entry(r, c):
                    stack.pop()
                else:
                    break
            if len(stack) < len(rows):
                stack.append(c)
        cols = stack
        if len(rows) > 1:
            solve(rows[1::2], cols)
        # Interpolate even rows between the answers of their odd neighbours.
        start = 0
        for idx in range(0, len(rows), 2):
            r = rows[idx]
            stop = result[rows[idx + 1]] if idx + 1 < len(rows) else cols[-1]
            best_col = cols[start]
            best = entry(r, best_col)
            k = start
            while cols[k] != stop:
                k += 1
                val = entry(r, cols[k])
                if val < best:
                    best, best_col = val, cols[k]
            result[r] = best_col
            start = k

    solve(list(range(view.rows)), list(range(view.cols)))
    return result


def column_minima(view: MatrixView) -> list[int]:
    """Topmost minimum row of every column (rows of the transposed view)."""
    return row_minima(view.transposed())
