"""Explicit maximum independent sets of directed tori and the Italian dominating
functions they induce (0 on the set, 1 elsewhere)."""

from __future__ import annotations

import numpy as np

from .assignment import Assignment, is_independent
from .digraph import make_torus
from .formulas import EVEN_EVEN, EVEN_ODD, alpha_formula, classify
from .solver import PROFILE_CAP, alpha_exact


class ConstructionFailed(RuntimeError):
    pass


def _checkerboard(m, n, skip_last_column=False):
    cells = [(i, j) for i in range(m) for j in range(n) if (i + j) % 2 == 0]
    if skip_last_column:
        cells = [(i, j) for i, j in cells if j != n - 1]
    return cells


def diagonal_family(m, n):
    """Odd-odd family ``(x + 2y, x)`` read modulo (m, n), x in [0, m), y in [1, (n-1)/2]."""
    return [((x + 2 * y) % m, x % n) for x in range(m) for y in range(1, (n - 1) // 2 + 1)]


def staircase_family(m, n):
    """Odd-odd family for m >= n: row i holds the (n-1)/2 alternate positions
    ``s_i, s_i + 2, ...`` where consecutive offsets differ by +-1 and the m steps
    sum to -n, closing the vertical cycle."""
    ups = (m - n) // 2
    cells = []
    s = 0
    for i in range(m):
        cells.extend((i, (s + 2 * y) % n) for y in range((n - 1) // 2))
        s += 1 if i < ups else -1
    if s % n:
        raise ConstructionFailed(f"staircase offsets do not close for ({m}, {n})")
    return cells


def _accept(cells, m, n, target):
    D = make_torus(m, n)
    members = frozenset(D.index(i, j) for i, j in cells)
    return members if len(members) == target and is_independent(members, D) else None


def build_independent_set(m: int, n: int, profile_cap: int = PROFILE_CAP) -> frozenset[int]:
    """A maximum independent set of ``C_m x C_n`` (vertex indices of torus(m, n)).

    Every candidate is checked for independence and size before it is returned.
    """
    case = classify(m, n)
    M, N = case.m, case.n
    target = alpha_formula(m, n)
    if case.tag == EVEN_EVEN:
        candidates = [_checkerboard(M, N)]
    elif case.tag == EVEN_ODD:
        candidates = [_checkerboard(M, N, skip_last_column=True)]
    else:
        candidates = [diagonal_family(M, N), staircase_family(M, N)]

    swapped = (M, N) != (m, n)
    for cells in candidates:
        if swapped:
            cells = [(j, i) for i, j in cells]
        found = _accept(cells, m, n, target)
        if found is not None:
            return found
    if min(m, n) <= profile_cap:
        res = alpha_exact(m, n, profile_cap)
        if res.value == target:
            return res.witness
    raise ConstructionFailed(f"no verified independent set of size {target} for ({m}, {n})")


def build_idf(m: int, n: int) -> Assignment:
    D = make_torus(m, n)
    vals = np.ones(D.N, dtype=np.int8)
    vals[sorted(build_independent_set(m, n))] = 0
    return Assignment(vals, D)
