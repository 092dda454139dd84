"""Directed graphs and the directed-cycle / directed-path / directed-torus generators.

Vertices are dense integers ``0..N-1``.  A directed torus ``C_m x C_n`` uses
``index = i * n + j`` for the coordinate ``(i, j)`` and carries the arcs
``(i, j) -> (i + 1, j)`` and ``(i, j) -> (i, j + 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Digraph:
    N: int
    out_adj: tuple[tuple[int, ...], ...]
    in_adj: tuple[tuple[int, ...], ...]
    shape: str = "general"
    dims: tuple[int, ...] = field(default=())

    @classmethod
    def from_arcs(cls, N: int, arcs: Iterable[tuple[int, int]], shape="general", dims=()):
        if N < 1:
            raise GraphError(f"vertex count must be positive, got {N}")
        out_sets: list[set[int]] = [set() for _ in range(N)]
        in_sets: list[set[int]] = [set() for _ in range(N)]
        for u, v in arcs:
            if not (0 <= u < N and 0 <= v < N):
                raise GraphError(f"arc ({u}, {v}) out of range for N={N}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if v in out_sets[u]:
                raise GraphError(f"parallel arc ({u}, {v})")
            out_sets[u].add(v)
            in_sets[v].add(u)
        return cls(
            N,
            tuple(tuple(sorted(s)) for s in out_sets),
            tuple(tuple(sorted(s)) for s in in_sets),
            shape,
            tuple(dims),
        )

    @property
    def is_torus(self) -> bool:
        return self.shape == "torus"

    def arcs(self):
        for u, nbrs in enumerate(self.out_adj):
            for v in nbrs:
                yield u, v

    @property
    def num_arcs(self) -> int:
        return sum(len(a) for a in self.out_adj)

    @property
    def max_out_degree(self) -> int:
        return max(len(a) for a in self.out_adj)

    @property
    def max_in_degree(self) -> int:
        return max(len(a) for a in self.in_adj)

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out_adj[u]

    def underlying_neighbors(self, v: int) -> set[int]:
        return set(self.out_adj[v]) | set(self.in_adj[v])

    # torus helpers -------------------------------------------------------
    def coord(self, v: int) -> tuple[int, int]:
        m, n = self._torus_dims()
        return divmod(v, n)

    def index(self, i: int, j: int) -> int:
        m, n = self._torus_dims()
        return (i % m) * n + (j % n)

    def _torus_dims(self) -> tuple[int, int]:
        if not self.is_torus:
            raise GraphError(f"{self.shape} digraph has no torus coordinates")
        return self.dims  # type: ignore[return-value]

    def __repr__(self):
        tag = self.shape if not self.dims else f"{self.shape}{self.dims}"
        return f"Digraph({tag}, N={self.N}, arcs={self.num_arcs})"


@lru_cache(maxsize=256)
def make_torus(m: int, n: int) -> Digraph:
    if m < 2 or n < 2:
        raise GraphError(f"torus needs m, n >= 2, got ({m}, {n})")
    arcs = []
    for i in range(m):
        for j in range(n):
            v = i * n + j
            arcs.append((v, ((i + 1) % m) * n + j))
            arcs.append((v, i * n + (j + 1) % n))
    return Digraph.from_arcs(m * n, arcs, "torus", (m, n))


def make_directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise GraphError(f"directed cycle needs n >= 2, got {n}")
    return Digraph.from_arcs(n, [(v, (v + 1) % n) for v in range(n)], "cycle", (n,))


def make_directed_path(n: int) -> Digraph:
    if n < 1:
        raise GraphError(f"directed path needs n >= 1, got {n}")
    return Digraph.from_arcs(n, [(v, v + 1) for v in range(n - 1)], "path", (n,))


def transpose_coord(m: int, n: int, c: tuple[int, int]) -> tuple[int, int]:
    """Map a coordinate of ``C_m x C_n`` to the isomorphic ``C_n x C_m``."""
    i, j = c
    if not (0 <= i < m and 0 <= j < n):
        raise GraphError(f"coordinate {c} invalid for torus({m}, {n})")
    return j, i


def parse_digraph(text: str) -> Digraph:
    """Read the ``N`` / ``u v`` per line arc-list format."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphError("empty digraph text")
    try:
        N = int(lines[0])
        arcs = []
        for ln in lines[1:]:
            u, v = ln.split()
            arcs.append((int(u), int(v)))
    except ValueError as exc:
        raise GraphError(f"malformed digraph text: {exc}") from None
    return Digraph.from_arcs(N, arcs)


def serialize_digraph(D: Digraph) -> str:
    return "\n".join([str(D.N)] + [f"{u} {v}" for u, v in D.arcs()]) + "\n"
