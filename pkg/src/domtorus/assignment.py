"""Italian dominating function candidates and their checks.

An :class:`Assignment` maps every vertex of a host digraph to 0, 1 or 2.  It is
valid (an Italian dominating function) when every vertex valued 0 has an
in-neighbour valued 2 or two in-neighbours valued 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .digraph import Digraph, GraphError, make_torus

NO_DOMINATOR = "no-inneighbor-2-nor-two-1s"
SOURCE_ZERO = "zero-with-in-degree-0"


class AssignmentError(ValueError):
    pass


class GridFormatError(AssignmentError):
    pass


@dataclass(frozen=True)
class Violation:
    vertex: int
    reason: str


@dataclass(frozen=True, eq=False)
class Assignment:
    values: np.ndarray
    host: Digraph

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.int8).reshape(-1)
        if vals.shape[0] != self.host.N:
            raise AssignmentError(f"expected {self.host.N} values, got {vals.shape[0]}")
        if vals.size and (vals.min() < 0 or vals.max() > 2):
            raise AssignmentError("values must lie in {0, 1, 2}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def constant(cls, host: Digraph, value: int) -> "Assignment":
        return cls(np.full(host.N, value, dtype=np.int8), host)

    @classmethod
    def from_grid(cls, grid, host: Digraph | None = None) -> "Assignment":
        g = np.asarray(grid, dtype=np.int8)
        if g.ndim != 2:
            raise AssignmentError("grid must be two-dimensional")
        m, n = g.shape
        return cls(g.reshape(-1), host if host is not None else make_torus(m, n))

    def grid(self) -> np.ndarray:
        """Values as an ``(m, n)`` array (torus hosts only); row ``i`` is the first coordinate."""
        if not self.host.is_torus:
            raise GraphError("grid view needs a torus host")
        return self.values.reshape(self.host.dims)

    def with_values(self, values) -> "Assignment":
        return Assignment(values, self.host)

    def __getitem__(self, v):
        if isinstance(v, tuple):
            v = self.host.index(*v)
        return int(self.values[v])

    def __eq__(self, other):
        if not isinstance(other, Assignment):
            return NotImplemented
        return self.host == other.host and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.host.N, self.values.tobytes()))

    def __repr__(self):
        return f"Assignment(weight={weight(self)}, host={self.host!r})"


def weight(f: Assignment) -> int:
    return int(f.values.sum(dtype=np.int64))


def verify_italian(f: Assignment) -> list[Violation]:
    """All vertices where the Italian condition fails (empty list means valid)."""
    vals = f.values
    out = []
    for v in np.flatnonzero(vals == 0):
        preds = f.host.in_adj[v]
        if not preds:
            out.append(Violation(int(v), SOURCE_ZERO))
            continue
        ones = 0
        dominated = False
        for u in preds:
            if vals[u] == 2:
                dominated = True
                break
            ones += vals[u] == 1
        if not dominated and ones < 2:
            out.append(Violation(int(v), NO_DOMINATOR))
    return out


def is_valid(f: Assignment) -> bool:
    return not verify_italian(f)


def _grid_sumrule(g: np.ndarray) -> bool:
    g = g.astype(np.int16, copy=False)
    support = np.roll(g, 1, axis=0) + np.roll(g, 1, axis=1)
    return bool(np.all((g != 0) | (support >= 2)))


def verify_italian_torus_sumrule(f: Assignment) -> bool:
    """Fast check for tori, where every vertex has exactly two in-neighbours."""
    if not f.host.is_torus:
        raise GraphError("sum-rule check needs a torus host")
    return _grid_sumrule(f.grid())


def zero_set(f: Assignment) -> frozenset[int]:
    return frozenset(int(v) for v in np.flatnonzero(f.values == 0))


def is_independent(s: Iterable[int], D: Digraph) -> bool:
    members = set(s)
    if any(not 0 <= v < D.N for v in members):
        raise AssignmentError("vertex set out of range")
    return not any(u in members for v in members for u in D.out_adj[v])


def value_counts(f: Assignment) -> tuple[int, int, int]:
    c = np.bincount(f.values, minlength=3)
    return int(c[0]), int(c[1]), int(c[2])


def parse_grid(text: str) -> Assignment:
    """Parse ``m`` lines of ``n`` digits from {0,1,2} into an assignment on torus(m, n)."""
    rows = text.split("\n")
    if rows and rows[-1] == "":
        rows.pop()
    if not rows:
        raise GridFormatError("empty grid")
    n = len(rows[0])
    for r, row in enumerate(rows):
        if len(row) != n:
            raise GridFormatError(f"row {r} has length {len(row)}, expected {n}")
        bad = set(row) - set("012")
        if bad:
            raise GridFormatError(f"row {r} has characters outside 0/1/2: {sorted(bad)!r}")
    m = len(rows)
    if m < 2 or n < 2:
        raise GridFormatError(f"grid must be at least 2x2, got {m}x{n}")
    g = np.array([[int(ch) for ch in row] for row in rows], dtype=np.int8)
    return Assignment.from_grid(g)


def serialize_grid(f: Assignment) -> str:
    return "\n".join("".join(str(int(x)) for x in row) for row in f.grid())


def set_to_grid(s: Iterable[int], m: int, n: int) -> str:
    """Render a vertex set as a grid (0 on members, 1 elsewhere)."""
    g = np.ones(m * n, dtype=np.int8)
    g[list(s)] = 0
    return serialize_grid(Assignment(g, make_torus(m, n)))


def random_italian(m: int, n: int, rng: np.random.Generator) -> Assignment:
    """A random valid assignment on torus(m, n).

    Values are drawn with a random zero density, then every violated zero is
    repaired by raising itself to 1 or one of its in-neighbours to 2.
    """
    p0 = rng.uniform(0.2, 0.75)
    p2 = (1 - p0) * rng.uniform(0.1, 0.9)
    g = rng.choice(3, size=(m, n), p=[p0, 1 - p0 - p2, p2]).astype(np.int8)
    while True:
        support = np.roll(g, 1, axis=0) + np.roll(g, 1, axis=1)
        bad = np.argwhere((g == 0) & (support < 2))
        if bad.size == 0:
            return Assignment.from_grid(g)
        for i, j in bad:
            if g[i, j] != 0 or g[i - 1, j] + g[i, j - 1] >= 2:
                continue
            r = rng.integers(3)
            if r == 0:
                g[i, j] = 1
            elif r == 1:
                g[i - 1, j] = 2
            else:
                g[i, j - 1] = 2
