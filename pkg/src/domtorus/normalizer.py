"""Turn any Italian dominating function on a directed torus into one of no larger
weight whose zero vertices form an independent set.

Two local rewriting stages are applied until nothing matches:

* runs of three zeros along a line are removed (rules ``L1-g`` / ``L1-h``);
* then adjacent zero pairs are removed (``L2-g`` / ``L2-h``), and when neither
  local rewrite fits, the diagonal chain of forced 2s behind the pair is walked
  and flattened to 1s (``L2-chain-shift``), or the whole function is replaced by
  all ones (``L2-chain-allones``).

Every rewrite is stated for a run along the first coordinate, ``(i, k), (i+1, k), ...``
(a vertical run in the grid picture).  Horizontal runs are handled by transposing
the grid, which is an isomorphism ``C_m x C_n -> C_n x C_m``.

Each step is re-verified: the result must be a valid function and the measure
``(weight, zero triples, zero pairs)`` must drop lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .assignment import Assignment, _grid_sumrule

VERTICAL = "vertical"  # run along the first coordinate i
HORIZONTAL = "horizontal"  # run along the second coordinate j

RULES = ("L1-g", "L1-h", "L2-g", "L2-h", "L2-chain-allones", "L2-chain-shift")
# used only when a core rewrite fails on a non-minimum input
FALLBACK_RULES = ("trim", "all-ones")


class NormalizationError(RuntimeError):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class PreconditionViolated(NormalizationError):
    pass


class PostconditionViolated(NormalizationError):
    pass


class TriplePresent(NormalizationError):
    pass


class StepLimitExceeded(NormalizationError):
    pass


@dataclass(frozen=True)
class Anchor:
    coord: tuple[int, int]
    orientation: str


@dataclass(frozen=True)
class Step:
    rule: str
    anchor: Anchor
    weight_before: int
    weight_after: int

    def line(self) -> str:
        i, j = self.anchor.coord
        return f"{self.rule} ({i},{j}) {self.anchor.orientation} {self.weight_before} {self.weight_after}"


@dataclass
class TransformTrace:
    steps: list[Step] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def to_text(self) -> str:
        return "".join(s.line() + "\n" for s in self.steps)


# --------------------------------------------------------------------------
# counting and scanning


def _zero_runs(g: np.ndarray, length: int, axis: int) -> np.ndarray:
    """Boolean mask of run starts: ``length`` consecutive zeros along ``axis``."""
    z = g == 0
    hit = z.copy()
    for s in range(1, length):
        hit &= np.roll(z, -s, axis=axis)
    return hit


def count_triples(g: np.ndarray) -> int:
    total = 0
    for axis in (0, 1):
        if g.shape[axis] >= 3:
            total += int(_zero_runs(g, 3, axis).sum())
    return total


def count_pairs(g: np.ndarray) -> int:
    """Number of underlying edges with both ends valued 0."""
    total = 0
    for axis in (0, 1):
        hits = _zero_runs(g, 2, axis)
        if g.shape[axis] == 2:
            # the two arcs of a 2-cycle share one underlying edge
            hits = hits[:1] if axis == 0 else hits[:, :1]
        total += int(hits.sum())
    return total


def _measure(g: np.ndarray) -> tuple[int, int, int]:
    return int(g.sum(dtype=np.int64)), count_triples(g), count_pairs(g)


def _scan(g: np.ndarray, length: int) -> Anchor | None:
    """First run start in row-major order, horizontal before vertical at each cell."""
    m, n = g.shape
    masks = {}
    if n >= length:
        h = _zero_runs(g, length, 1)
        masks[HORIZONTAL] = h[:, :1] if (length == 2 and n == 2) else h
    if m >= length:
        v = _zero_runs(g, length, 0)
        masks[VERTICAL] = v[:1] if (length == 2 and m == 2) else v
    best = None
    for orient in (HORIZONTAL, VERTICAL):
        if orient not in masks:
            continue
        hits = np.argwhere(masks[orient])
        if hits.size:
            i, j = (int(x) for x in hits[0])
            key = (i * n + j, 0 if orient == HORIZONTAL else 1)
            if best is None or key < best[0]:
                best = (key, Anchor((i, j), orient))
    return None if best is None else best[1]


def find_zero_triple(f: Assignment) -> Anchor | None:
    return _scan(f.grid(), 3)


def find_zero_pair(f: Assignment) -> Anchor | None:
    g = f.grid()
    if count_triples(g):
        raise TriplePresent("zero triple present; eliminate triples first")
    return _scan(g, 2)


# --------------------------------------------------------------------------
# rewrites in the first-coordinate frame


class _Frame:
    """Grid access in modular coordinates, with the rewrite written into a copy."""

    def __init__(self, g: np.ndarray):
        self.g = g
        self.new = g.copy()
        self.M, self.N = g.shape

    def __call__(self, x, y):
        return int(self.g[x % self.M, y % self.N])

    def put(self, x, y, value):
        self.new[x % self.M, y % self.N] = value


def _require(cond: bool, message: str):
    if not cond:
        raise PreconditionViolated(message)


def _triple_rewrite(g: np.ndarray, i: int, k: int) -> tuple[np.ndarray, str]:
    f = _Frame(g)
    _require(f.M >= 3, "no run of three along a 2-cycle")
    _require(f(i, k) == f(i + 1, k) == f(i + 2, k) == 0, f"no zero triple at ({i},{k})")
    _require(
        f(i + 1, k - 1) == 2 and f(i + 2, k - 1) == 2,
        "forced 2s beside the zero triple are missing; input is not valid",
    )
    if f(i + 3, k - 1) != 0 or f(i + 2, k - 2) != 0 or f(i + 2, k - 3) != 0:
        f.put(i + 3, k - 1, max(1, f(i + 3, k - 1)))
        f.put(i + 2, k, 1)
        f.put(i + 2, k - 1, 0)
        return f.new, "L1-g"
    _require(f(i + 1, k - 2) == 2, "forced 2 at (i+1, k-2) is missing; input is not valid")
    for x, y in ((i + 1, k - 2), (i + 2, k - 2), (i + 2, k), (i + 3, k - 1)):
        f.put(x, y, 1)
    f.put(i + 2, k - 1, 0)
    return f.new, "L1-h"


def _pair_g(f: _Frame, i, k):
    f.put(i + 1, k - 1, 1)
    f.put(i + 1, k, 1)


def _pair_h(f: _Frame, i, k):
    f.put(i + 1, k, 1)
    f.put(i + 2, k - 1, 1)
    f.put(i + 1, k - 1, 0)


def _pair_rewrite(g: np.ndarray, i: int, k: int) -> tuple[np.ndarray, str, tuple[int, int]]:
    """Returns the rewritten grid, the rule, and the pair it was applied at."""
    f = _Frame(g)
    _require(f(i, k) == f(i + 1, k) == 0, f"no zero pair at ({i},{k})")
    if f.M >= 3:
        _require(f(i - 1, k) != 0, "zero triple present at the pair")
    chain: list[tuple[int, int]] = []
    seen = set()
    x, y = i, k
    while True:
        # pair (x, y), (x+1, y); its forced 2 sits at (x+1, y-1)
        two = ((x + 1) % f.M, (y - 1) % f.N)
        _require(f(*two) == 2, f"forced 2 at {two} is missing; input is not valid")
        if two in seen:
            break
        seen.add(two)
        chain.append(two)
        if f(x + 2, y - 1) != 0 or f(x + 2, y - 2) != 0:
            _pair_g(f, x, y)
            return f.new, "L2-g", (x % f.M, y % f.N)
        if f(x + 1, y - 2) != 0:
            _pair_h(f, x, y)
            return f.new, "L2-h", (x % f.M, y % f.N)
        x, y = x + 1, y - 2

    S = set(chain)
    shifted = {(a, (b + 1) % f.N) for a, b in S}
    if shifted == S:
        if int(g.sum()) < f.M * f.N:
            raise PostconditionViolated("chain covers the shift but weight is below mn")
        f.new[...] = 1
        return f.new, "L2-chain-allones", (i % f.M, k % f.N)
    if shifted & S:
        raise PostconditionViolated("diagonal chain overlaps its shift only partially")
    for a, b in S | shifted:
        f.put(a, b, 1)
    return f.new, "L2-chain-shift", (i % f.M, k % f.N)


def chain_orbit(M: int, N: int, start: tuple[int, int]) -> frozenset[tuple[int, int]]:
    """The diagonal ``start + t * (1, -2)`` in Z_M x Z_N.

    It is a coset of a cyclic subgroup, so its shift by (0, 1) is either itself
    or disjoint from it.
    """
    x, y = start[0] % M, start[1] % N
    orbit = set()
    while (x, y) not in orbit:
        orbit.add((x, y))
        x, y = (x + 1) % M, (y - 2) % N
    return frozenset(orbit)


def _in_frame(g: np.ndarray, anchor: Anchor):
    """Grid and anchor coordinates in the first-coordinate frame."""
    if anchor.orientation == VERTICAL:
        return g, anchor.coord
    i, j = anchor.coord
    return g.T, (j, i)


def _out_of_frame(g: np.ndarray, orientation: str, coord):
    if orientation == VERTICAL:
        return np.ascontiguousarray(g), coord
    return np.ascontiguousarray(g.T), (coord[1], coord[0])


def _checked(g_old, g_new, rule, anchor, trace):
    if not _grid_sumrule(g_new):
        raise PostconditionViolated(f"{rule} at {anchor} produced an invalid function", trace)
    before, after = _measure(g_old), _measure(g_new)
    if not after < before:
        raise PostconditionViolated(
            f"{rule} at {anchor} did not decrease (weight, triples, pairs): {before} -> {after}",
            trace,
        )


def _eliminate_triple(g, anchor, trace):
    fg, (i, k) = _in_frame(g, anchor)
    new, rule = _triple_rewrite(fg, i, k)
    new, _ = _out_of_frame(new, anchor.orientation, (i, k))
    _checked(g, new, rule, anchor, trace)
    return new, rule, anchor


def _eliminate_pair(g, anchor, trace):
    fg, (i, k) = _in_frame(g, anchor)
    new, rule, at = _pair_rewrite(fg, i, k)
    new, at = _out_of_frame(new, anchor.orientation, at)
    applied = Anchor(at, anchor.orientation)
    _checked(g, new, rule, applied, trace)
    if count_triples(new) > count_triples(g):
        raise PostconditionViolated(f"{rule} at {applied} created a zero triple", trace)
    return new, rule, applied


def _all_anchors(g: np.ndarray, length: int) -> list[Anchor]:
    """Every run start, in the scan order of :func:`_scan`."""
    m, n = g.shape
    found = []
    for orient, axis, size in ((HORIZONTAL, 1, n), (VERTICAL, 0, m)):
        if size < length:
            continue
        hits = _zero_runs(g, length, axis)
        if length == 2 and size == 2:
            hits = hits[:, :1] if axis == 1 else hits[:1]
        for i, j in np.argwhere(hits):
            found.append(((int(i) * n + int(j), 0 if orient == HORIZONTAL else 1),
                          Anchor((int(i), int(j)), orient)))
    return [a for _, a in sorted(found, key=lambda t: t[0])]


def _trim(g: np.ndarray):
    """Lower the first value (row-major) that can drop by one and stay valid."""
    m, n = g.shape
    for i, j in np.argwhere(g > 0):
        new = g.copy()
        new[i, j] -= 1
        if _grid_sumrule(new):
            return new, Anchor((int(i), int(j)), VERTICAL)
    return None


def _step(g: np.ndarray, trace: TransformTrace):
    """One measure-decreasing rewrite, or None at a fixed point.

    The core rewrite at the first anchor is tried first.  Its case analysis
    assumes a minimum-weight function; on other inputs it can fail
    verification, and then a trim, the rewrite at later anchors, and finally
    the all-ones function are tried in that order.
    """
    length = 3 if count_triples(g) else 2
    anchors = _all_anchors(g, length)
    if not anchors:
        return None
    eliminate = _eliminate_triple if length == 3 else _eliminate_pair
    try:
        return eliminate(g, anchors[0], trace)
    except PostconditionViolated as exc:
        first_failure = exc
    trimmed = _trim(g)
    if trimmed is not None:
        return trimmed[0], "trim", trimmed[1]
    for anchor in anchors[1:]:
        try:
            return eliminate(g, anchor, trace)
        except PostconditionViolated:
            continue
    if int(g.sum()) >= g.size:
        return np.ones_like(g), "all-ones", anchors[0]
    raise PostconditionViolated(f"no rewrite applies: {first_failure}", trace)


def _require_valid(f: Assignment):
    if not f.host.is_torus:
        raise PreconditionViolated("normalization needs a torus host")
    if not _grid_sumrule(f.grid()):
        raise PreconditionViolated("input is not an Italian dominating function")


def eliminate_triple(f: Assignment, a: Anchor) -> Assignment:
    _require_valid(f)
    new, _, _ = _eliminate_triple(f.grid(), a, None)
    return f.with_values(new.reshape(-1))


def eliminate_pair(f: Assignment, a: Anchor) -> Assignment:
    _require_valid(f)
    g = f.grid()
    if count_triples(g):
        raise TriplePresent("zero triple present; eliminate triples first")
    new, _, _ = _eliminate_pair(g, a, None)
    return f.with_values(new.reshape(-1))


def normalize(f: Assignment, step_limit: int | None = None) -> tuple[Assignment, TransformTrace]:
    """Rewrite ``f`` until its zero set is independent; weight never increases."""
    _require_valid(f)
    g = np.array(f.grid())
    m, n = g.shape
    w = int(g.sum())
    limit = step_limit if step_limit is not None else (w + 1) * (m * n) ** 2
    trace = TransformTrace()
    while True:
        step = _step(g, trace)
        if step is None:
            break
        new, rule, applied = step
        w_new = int(new.sum())
        trace.steps.append(Step(rule, applied, w, w_new))
        g, w = new, w_new
        if len(trace) > limit:
            raise StepLimitExceeded(f"no fixed point after {limit} steps", trace)
    return f.with_values(g.reshape(-1)), trace
