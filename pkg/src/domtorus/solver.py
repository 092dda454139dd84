"""Exact solvers.

``gamma_naive`` is a branch-and-bound enumeration for any small digraph.
``gamma_torus_dp`` and ``alpha_exact`` are transfer-matrix dynamic programs over
column profiles of a directed torus: the state is the vector of values down one
column ``j`` (``i = 0..m-1``), and the horizontal cycle is closed either by fixing
the first column or by a (min,+) matrix power.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np

from .assignment import Assignment, is_independent, verify_italian, weight
from .digraph import Digraph, make_torus

NAIVE_CAP = 16
PROFILE_CAP = 7
INF = 1 << 28


class SolverError(ValueError):
    pass


class CapExceeded(SolverError):
    pass


@dataclass
class SolveResult:
    value: int
    witness: Any
    method: str
    stats: dict = field(default_factory=dict)


# --------------------------------------------------------------------------
# pruned enumeration


def gamma_naive(D: Digraph, cap: int = NAIVE_CAP) -> SolveResult:
    """Minimum Italian weight by depth-first enumeration with incumbent pruning.

    Vertices are assigned in index order, values tried 0, 1, 2; the incumbent
    starts as the all-ones function.  A vertex's constraint is checked as soon as
    it and all its in-neighbours are assigned.
    """
    N = D.N
    if N > cap:
        raise CapExceeded(f"naive solver capped at N={cap}, got N={N}")
    t0 = time.perf_counter()
    in_adj = D.in_adj
    ready: list[list[int]] = [[] for _ in range(N)]
    for v in range(N):
        ready[max((v, *in_adj[v]))].append(v)

    vals = [0] * N
    best = [N, [1] * N]
    nodes = 0

    def ok(v: int) -> bool:
        if vals[v]:
            return True
        s = 0
        for u in in_adj[v]:
            if vals[u] == 2:
                return True
            s += vals[u]
        return s >= 2

    def search(p: int, partial: int) -> None:
        nonlocal nodes
        nodes += 1
        if p == N:
            best[0] = partial
            best[1] = vals.copy()
            return
        checks = ready[p]
        for x in (0, 1, 2):
            w = partial + x
            if w >= best[0]:
                break
            vals[p] = x
            if all(ok(v) for v in checks):
                search(p + 1, w)
        vals[p] = 0

    search(0, 0)
    f = Assignment(np.array(best[1], dtype=np.int8), D)
    _check_idf(f, best[0])
    return SolveResult(
        best[0], f, "naive",
        {"states": nodes, "elapsed_s": time.perf_counter() - t0},
    )


def volkmann_lower_bound(D: Digraph) -> int:
    """``ceil(2N / (2 + max out-degree))``."""
    return -(-2 * D.N // (2 + D.max_out_degree))


# --------------------------------------------------------------------------
# column profiles


@dataclass(frozen=True, eq=False)
class ProfileTable:
    """Admissible column-to-column transitions for one profile height ``m``."""

    m: int
    digits: np.ndarray  # (S, m) values per profile code
    cost: np.ndarray  # (S,) profile weight
    adm: np.ndarray  # (S, S) bool, adm[t, u]: column u may follow column t
    pred_t: np.ndarray  # predecessors of each u, grouped by u
    pred_start: np.ndarray  # segment offsets into pred_t

    @property
    def size(self) -> int:
        return self.cost.shape[0]


def profile_digits(m: int) -> np.ndarray:
    codes = np.arange(3**m)
    return ((codes[:, None] // 3 ** np.arange(m)) % 3).astype(np.int8)


def encode_profile(col) -> int:
    return int(sum(int(x) * 3**i for i, x in enumerate(col)))


@lru_cache(maxsize=16)
def gamma_table(m: int) -> ProfileTable:
    d = profile_digits(m)
    # zero at row i of column u needs u[i-1] + t[i] >= 2; nonzero rows need nothing
    thr = np.where(d == 0, 2 - np.roll(d, 1, axis=1), 0).astype(np.int8)
    adm = np.ones((d.shape[0], d.shape[0]), dtype=bool)
    for i in range(m):
        adm &= d[:, i][:, None] >= thr[:, i][None, :]
    return _table(m, d, d.sum(axis=1).astype(np.int32), adm)


@lru_cache(maxsize=16)
def alpha_table(m: int) -> ProfileTable:
    masks = np.arange(2**m)
    rot = ((masks << 1) | (masks >> (m - 1))) & (2**m - 1)
    ok = (masks & rot) == 0
    states = masks[ok]
    d = ((states[:, None] >> np.arange(m)) & 1).astype(np.int8)
    adm = (states[:, None] & states[None, :]) == 0
    table = _table(m, d, d.sum(axis=1).astype(np.int32), adm)
    return table


def _table(m, d, cost, adm) -> ProfileTable:
    u_idx, t_idx = np.nonzero(adm.T)
    start = np.searchsorted(u_idx, np.arange(adm.shape[0]))
    return ProfileTable(m, d, cost, adm, t_idx.astype(np.int32), start.astype(np.int64))


def _closed_walk_loop(table: ProfileTable, n: int, sense: str, chunk: int = 32):
    """Best closed walk of ``n`` columns, one fixed first column at a time.

    Rotating a closed walk so that its smallest profile code comes first, every
    column is >= the first one; each batch of starts therefore only carries the
    states at or above its lowest start.
    Returns (value, start_code, states_explored).
    """
    S = table.size
    top = int(table.cost.max()) * n
    dtype = np.int16 if top < 8000 else np.int32
    big = 10000 if dtype is np.int16 else INF
    if sense == "min":
        op, bad = np.minimum, big
    else:
        op, bad = np.maximum, -big
    cost = table.cost.astype(dtype)
    u_of_pair = np.repeat(np.arange(S), np.diff(np.append(table.pred_start, table.pred_t.size)))
    totals = np.full(S, bad, dtype=np.int64)
    explored = 0
    for lo in range(0, S, chunk):
        hi = min(S, lo + chunk)
        keep = table.pred_t >= lo
        keep &= u_of_pair >= lo
        t_sub = table.pred_t[keep] - lo
        seg = np.searchsorted(u_of_pair[keep], np.arange(lo, S))
        empty = np.diff(np.append(seg, t_sub.size)) == 0
        sub_cost = cost[lo:]
        starts = np.arange(lo, hi)
        below = np.arange(lo, S)[None, :] < starts[:, None]
        V = np.full((starts.size, S - lo), bad, dtype=dtype)
        V[np.arange(starts.size), starts - lo] = cost[starts]
        for _ in range(n - 1):
            gathered = np.empty((starts.size, t_sub.size + 1), dtype=dtype)
            gathered[:, :-1] = V[:, t_sub]
            gathered[:, -1] = bad
            V = op.reduceat(gathered, seg, axis=1)
            V[:, empty] = bad
            V += sub_cost
            V[below] = bad
            if sense == "min":
                np.minimum(V, bad, out=V)
            else:
                np.maximum(V, bad, out=V)
            explored += V.size
        closing = table.adm[lo:, :][:, starts].T  # (B, S - lo): t may precede its start
        masked = np.where(closing, V, bad).astype(np.int64)
        totals[starts] = masked.min(axis=1) if sense == "min" else masked.max(axis=1)
    s_best = int(np.argmin(totals) if sense == "min" else np.argmax(totals))
    return int(totals[s_best]), s_best, explored


def _reconstruct(table: ProfileTable, n: int, start: int, target: int, sense: str) -> list[int]:
    """Lexicographically smallest profile sequence of value ``target`` beginning at ``start``."""
    S = table.size
    cost = table.cost.astype(np.int64)
    bad = INF if sense == "min" else -INF
    reduce = np.min if sense == "min" else np.max
    allowed = np.arange(S) >= start
    # togo[j][u]: best value of columns j+1..n-1 given column j is u
    togo = [None] * n
    togo[n - 1] = np.where(table.adm[:, start], 0, bad)
    for j in range(n - 2, -1, -1):
        nxt = np.where(allowed, cost + togo[j + 1], bad)
        cand = np.where(table.adm, nxt[None, :], bad)
        togo[j] = reduce(cand, axis=1)
    seq = [start]
    remaining = target - int(cost[start])
    if togo[0][start] != remaining:
        raise SolverError("profile reconstruction failed at the first column")
    for j in range(1, n):
        prev = seq[-1]
        hit = np.flatnonzero(table.adm[prev] & allowed & (cost + togo[j] == remaining))
        if hit.size == 0:
            raise SolverError(f"profile reconstruction failed at column {j}")
        u = int(hit[0])
        seq.append(u)
        remaining -= int(cost[u])
    return seq


def minplus_matmul(A: np.ndarray, B: np.ndarray, chunk: int = 32) -> np.ndarray:
    """(min,+) product ``C[a, c] = min_b A[a, b] + B[b, c]``, saturating at INF."""
    C = np.empty((A.shape[0], B.shape[1]), dtype=np.int64)
    for lo in range(0, A.shape[0], chunk):
        block = A[lo:lo + chunk, :, None] + B[None, :, :]
        C[lo:lo + chunk] = block.min(axis=1)
    np.minimum(C, INF, out=C)
    return C


def minplus_power(W: np.ndarray, k: int) -> np.ndarray:
    result = None
    base = W
    while k:
        if k & 1:
            result = base if result is None else minplus_matmul(result, base)
        k >>= 1
        if k:
            base = minplus_matmul(base, base)
    return result


def _closed_walk_power(table: ProfileTable, n: int):
    W = np.where(table.adm, table.cost[None, :].astype(np.int64), INF)
    P = minplus_power(W, n)
    diag = np.diagonal(P)
    s = int(np.argmin(diag))
    return int(diag[s]), s, int(math.ceil(math.log2(max(n, 2)))) * table.size**3


def _orient(m: int, n: int, cap: int) -> tuple[int, int, bool]:
    if m < 2 or n < 2:
        raise SolverError(f"need m, n >= 2, got ({m}, {n})")
    swap = m > n
    pm, pn = (n, m) if swap else (m, n)
    if pm > cap:
        raise CapExceeded(
            f"profile height {pm} exceeds cap {cap} (3^{pm} states); raise the cap explicitly"
        )
    return pm, pn, swap


def _columns_to_grid(table: ProfileTable, seq: list[int], swap: bool) -> np.ndarray:
    g = table.digits[seq].T  # (pm, pn): rows i, columns j
    return np.ascontiguousarray(g.T if swap else g)


def gamma_torus_dp(
    m: int, n: int, profile_cap: int = PROFILE_CAP, closure: str = "loop"
) -> SolveResult:
    """Exact Italian domination number of ``C_m x C_n`` with a minimum witness.

    ``closure="loop"`` fixes the first column; ``closure="power"`` reads the
    smallest diagonal entry of the n-th (min,+) power of the transfer matrix.
    The profile height is ``min(m, n)``; the witness is mapped back to (m, n).
    """
    pm, pn, swap = _orient(m, n, profile_cap)
    t0 = time.perf_counter()
    table = gamma_table(pm)
    if closure == "loop":
        value, start, explored = _closed_walk_loop(table, pn, "min")
    elif closure == "power":
        value, start, explored = _closed_walk_power(table, pn)
    else:
        raise SolverError(f"unknown closure strategy {closure!r}")
    seq = _reconstruct(table, pn, start, value, "min")
    f = Assignment.from_grid(_columns_to_grid(table, seq, swap))
    _check_idf(f, value)
    return SolveResult(
        value, f, "transfer-matrix",
        {"states": explored, "profiles": table.size, "closure": closure,
         "transposed": swap, "elapsed_s": time.perf_counter() - t0},
    )


def alpha_exact(m: int, n: int, profile_cap: int = PROFILE_CAP) -> SolveResult:
    """Exact independence number of the torus grid with a maximum independent set."""
    pm, pn, swap = _orient(m, n, profile_cap)
    t0 = time.perf_counter()
    table = alpha_table(pm)
    value, start, explored = _closed_walk_loop(table, pn, "max")
    seq = _reconstruct(table, pn, start, value, "max")
    grid = _columns_to_grid(table, seq, swap)
    D = make_torus(m, n)
    members = frozenset(int(v) for v in np.flatnonzero(grid.reshape(-1)))
    if len(members) != value or not is_independent(members, D):
        raise SolverError("independence witness failed verification")
    return SolveResult(
        value, members, "independence-dp",
        {"states": explored, "profiles": table.size, "transposed": swap,
         "elapsed_s": time.perf_counter() - t0},
    )


def _check_idf(f: Assignment, value: int) -> None:
    if verify_italian(f) or weight(f) != value:
        raise SolverError("solver witness failed verification")
