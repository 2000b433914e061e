import random

from hypothesis import given, settings
from hypothesis import strategies as st

from subsum.generate import monge_grid
from subsum.oracle import naive_row_minima
from subsum.smawk import CountingView, MatrixView, column_minima, row_minima


def view(M):
    return MatrixView(len(M), len(M[0]) if M else 0, lambda r, c: M[r][c])


def test_examples():
    assert row_minima(view([[1, 2, 4], [2, 2, 3], [4, 3, 3]])) == [0, 0, 1]
    assert row_minima(view([[5, 3, 3]])) == [1]
    assert row_minima(view([[7], [1], [0]])) == [0, 0, 0]
    assert row_minima(MatrixView(0, 4, lambda r, c: 0)) == []


def test_ties_go_left():
    assert row_minima(view([[0] * 6 for _ in range(5)])) == [0] * 5


def test_column_minima_topmost():
    M = [[1, 2, 4], [2, 2, 3], [4, 3, 3]]
    assert column_minima(view(M)) == [0, 0, 1]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 12), st.integers(1, 12))
def test_monge_grids_match_naive(seed, rows, cols):
    grid = monge_grid(random.Random(seed), rows - 1, cols - 1, 20)
    counted = CountingView(rows, cols, lambda r, c: grid[r][c])
    assert row_minima(counted) == naive_row_minima(view(grid))
    assert counted.evaluations <= 4 * (rows + cols)
    transposed = [list(col) for col in zip(*grid)]
    assert column_minima(view(grid)) == naive_row_minima(view(transposed))
