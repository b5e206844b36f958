"""Shared test utilities: independent oracles and seeded corpora.

The oracles here are deliberately written against different representations
than the library (cell grids instead of graphs, vertex enumeration instead
of simplex) so that agreement is meaningful.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from rainbowmatch.digraph import LabelledDigraph
from rainbowmatch.gen import generate_instance, random_latin_square
from rainbowmatch.latin import square_to_graph


def max_partial_transversal(grid) -> int:
    """Cell-level backtracker: maximum partial transversal of a square grid."""
    n = len(grid)
    best = 0

    def rec(row: int, used_cols: set, used_syms: set, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if row == n or size + (n - row) <= best:
            return
        for col in range(n):
            sym = grid[row][col]
            if col not in used_cols and sym not in used_syms:
                used_cols.add(col)
                used_syms.add(sym)
                rec(row + 1, used_cols, used_syms, size + 1)
                used_cols.discard(col)
                used_syms.discard(sym)
        rec(row + 1, used_cols, used_syms, size)

    rec(0, set(), set(), 0)
    return best


def enumerate_latin_squares(n: int):
    """Yield every order-n Latin square as a tuple of row tuples."""
    grid = [[-1] * n for _ in range(n)]

    def rec(pos: int):
        if pos == n * n:
            yield tuple(tuple(row) for row in grid)
            return
        r, c = divmod(pos, n)
        for s in range(n):
            if all(grid[r][j] != s for j in range(c)) and all(
                grid[i][c] != s for i in range(r)
            ):
                grid[r][c] = s
                yield from rec(pos + 1)
                grid[r][c] = -1

    yield from rec(0)


def lp_max_by_vertex_enumeration(A, b, c) -> Fraction:
    """Exact LP max by brute force over basic feasible points.

    max c.x s.t. Ax <= b, x >= 0, all data rational.  Enumerates every
    choice of n tight constraints among the m rows and n sign constraints,
    solves the linear system, and keeps the best feasible solution.
    """
    m, n = len(A), len(c)
    rows = [list(map(Fraction, row)) for row in A]
    b = list(map(Fraction, b))
    c = list(map(Fraction, c))
    best = Fraction(0)  # x = 0 feasible since b >= 0
    for combo in itertools.combinations(range(m + n), n):
        sys_rows = []
        sys_rhs = []
        for idx in combo:
            if idx < m:
                sys_rows.append(rows[idx][:])
                sys_rhs.append(b[idx])
            else:
                var = idx - m
                sys_rows.append(
                    [Fraction(1) if j == var else Fraction(0) for j in range(n)]
                )
                sys_rhs.append(Fraction(0))
        x = _solve_square(sys_rows, sys_rhs)
        if x is None:
            continue
        if any(xi < 0 for xi in x):
            continue
        if any(sum(r[j] * x[j] for j in range(n)) > bi for r, bi in zip(rows, b)):
            continue
        value = sum(ci * xi for ci, xi in zip(c, x))
        if value > best:
            best = value
    return best


def _solve_square(A, b):
    n = len(A)
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            return None  # singular: no unique solution
        M[col], M[pivot] = M[pivot], M[col]
        inv = M[col][col]
        M[col] = [v / inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [v - f * p for v, p in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def complete_biorientation(q: int, rainbow: bool = True) -> LabelledDigraph:
    """All ordered pairs present; labels all distinct when rainbow."""
    arcs = [
        (u, v, 1000 + u * q + v if rainbow else 1000)
        for u in range(q)
        for v in range(q)
        if u != v
    ]
    return LabelledDigraph(q, arcs, vertex_labels=tuple(range(q)))


# --- seeded corpora used by both module tests and the acceptance gate ------


def greedy_suite(count: int = 500):
    for i in range(count):
        n = 2 + (i % 49)
        yield generate_instance(
            "random", n, 2 * n, False, seed=20_000 + i, left_size=2 * n, right_size=2 * n
        )


def switching_suite(count: int = 200):
    for i in range(count):
        n = 2 + (i % 6)
        yield generate_instance(
            "random", n, n + 1, True, seed=1000 + i, left_size=n + 2, right_size=n + 2
        )


def deficient_suite():
    """60 instances whose maximum rainbow matching misses exactly one colour.

    Isotopes of cyclic squares of even order have no transversal, so the
    optimum is order-1; the tests certify that per instance via the oracle.
    """
    for order in (2, 4, 6):
        for seed in range(20):
            yield square_to_graph(random_latin_square(order, seed=seed))


def golden_suite(count: int = 20):
    import math

    from rainbowmatch.golden import PHI

    for i in range(count):
        n = 1 + (i % 10)
        cs = math.ceil(PHI * n) + 3
        yield n, generate_instance(
            "random", n, cs, False, seed=900 + i, left_size=cs + 2, right_size=cs + 2
        )
