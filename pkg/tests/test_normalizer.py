import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from domtorus.assignment import (
    Assignment,
    is_independent,
    random_italian,
    verify_italian,
    weight,
    zero_set,
)
from domtorus.constructions import build_idf
from domtorus.digraph import make_torus
from domtorus.normalizer import (
    HORIZONTAL,
    RULES,
    VERTICAL,
    Anchor,
    PreconditionViolated,
    TriplePresent,
    _measure,
    chain_orbit,
    count_pairs,
    count_triples,
    eliminate_pair,
    eliminate_triple,
    find_zero_pair,
    find_zero_triple,
    normalize,
)
from domtorus.solver import gamma_torus_dp


def A(rows):
    return Assignment.from_grid(np.array(rows))


# zeros at (0,0), (1,0), (2,0); the run forces 2s at (1,3), (2,3)
TRIPLE_G = A([
    [0, 1, 1, 1],
    [0, 1, 1, 2],
    [0, 1, 1, 2],
    [1, 1, 1, 1],
])

# zeros at (0,2), (1,2), (2,2) with (3,1), (2,0), (2,4) also zero: the second rewrite
TRIPLE_H = A([
    [1, 1, 0, 1, 1],
    [2, 2, 0, 1, 1],
    [0, 2, 0, 1, 0],
    [1, 0, 1, 1, 1],
    [1, 1, 1, 1, 1],
])

# a single zero pair (0,0), (1,0) along the first coordinate
PAIR = A([
    [0, 1, 1, 1],
    [0, 1, 1, 2],
    [1, 1, 1, 2],
    [1, 1, 1, 1],
])

# minimum-weight function on torus(3,3) whose pair needs the diagonal chain
CHAIN = A([
    [0, 0, 2],
    [2, 0, 0],
    [0, 2, 0],
])


def test_fixtures_are_valid():
    for f in (TRIPLE_G, TRIPLE_H, PAIR, CHAIN):
        assert verify_italian(f) == []


def test_find_zero_triple():
    assert find_zero_triple(Assignment.constant(make_torus(4, 4), 1)) is None
    assert find_zero_triple(TRIPLE_G) == Anchor((0, 0), VERTICAL)
    assert find_zero_triple(build_idf(6, 6)) is None
    horizontal = A(np.array(TRIPLE_G.grid()).T)
    assert find_zero_triple(horizontal) == Anchor((0, 0), HORIZONTAL)


def test_eliminate_triple_first_rewrite():
    out = eliminate_triple(TRIPLE_G, Anchor((0, 0), VERTICAL))
    expected = A([
        [0, 1, 1, 1],
        [0, 1, 1, 2],
        [1, 1, 1, 0],
        [1, 1, 1, 1],
    ])
    assert out == expected
    assert weight(out) == weight(TRIPLE_G) - 1


def test_eliminate_triple_second_rewrite():
    anchor = Anchor((0, 2), VERTICAL)
    out = eliminate_triple(TRIPLE_H, anchor)
    expected = A([
        [1, 1, 0, 1, 1],
        [1, 2, 0, 1, 1],
        [1, 0, 1, 1, 0],
        [1, 1, 1, 1, 1],
        [1, 1, 1, 1, 1],
    ])
    assert out == expected
    assert weight(out) == weight(TRIPLE_H)
    assert count_triples(out.grid()) < count_triples(TRIPLE_H.grid())
    _, trace = normalize(TRIPLE_H)
    assert trace.steps[0].rule == "L1-h"


def test_eliminate_triple_transposed_matches():
    g = np.array(TRIPLE_G.grid())
    out = eliminate_triple(A(g.T), Anchor((0, 0), HORIZONTAL))
    assert np.array_equal(out.grid(), eliminate_triple(TRIPLE_G, Anchor((0, 0), VERTICAL)).grid().T)


def test_eliminate_triple_needs_a_triple():
    with pytest.raises(PreconditionViolated):
        eliminate_triple(PAIR, Anchor((0, 0), VERTICAL))


def test_find_zero_pair():
    assert find_zero_pair(build_idf(4, 5)) is None
    assert find_zero_pair(Assignment.constant(make_torus(3, 3), 1)) is None
    assert find_zero_pair(PAIR) == Anchor((0, 0), VERTICAL)
    with pytest.raises(TriplePresent):
        find_zero_pair(TRIPLE_G)


def test_eliminate_pair_local_rewrite():
    f = A(np.where(np.arange(16).reshape(4, 4) == 11, 2, PAIR.grid()))  # f(2,3) = 2
    assert verify_italian(f) == []
    out = eliminate_pair(f, Anchor((0, 0), VERTICAL))
    assert weight(out) == weight(f)
    assert count_pairs(out.grid()) < count_pairs(f.grid())
    assert out[1, 3] == 1 and out[1, 0] == 1
    _, trace = normalize(f)
    assert [s.rule for s in trace] == ["L2-g"]


def test_eliminate_pair_chain_shift():
    out = eliminate_pair(CHAIN, Anchor((0, 0), HORIZONTAL))
    assert out == A([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert weight(out) == weight(CHAIN) == 6
    _, trace = normalize(CHAIN)
    assert trace.to_text() == "L2-chain-shift (0,0) horizontal 6 6\n"


def test_eliminate_pair_rejects_invalid_input():
    bad = A([[0, 1, 1], [0, 1, 1], [1, 1, 1]])
    with pytest.raises(PreconditionViolated):
        eliminate_pair(bad, Anchor((0, 0), VERTICAL))


@pytest.mark.parametrize("M,N", [(M, N) for M in range(2, 13) for N in range(2, 13)])
def test_chain_shift_is_equal_or_disjoint(M, N):
    for start in itertools.product(range(M), range(N)):
        S = chain_orbit(M, N, start)
        shifted = {(a, (b + 1) % N) for a, b in S}
        assert shifted == S or not (shifted & S)
        if shifted == S:
            # the whole torus: every vertex would carry a forced 2, so no zero pair exists
            assert len(S) == M * N


def test_all_ones_unchanged():
    f = Assignment.constant(make_torus(4, 5), 1)
    out, trace = normalize(f)
    assert out == f and len(trace) == 0


def _check(f, out, trace):
    assert verify_italian(out) == []
    assert weight(out) <= weight(f)
    assert is_independent(zero_set(out), out.host)
    for step in trace:
        assert step.weight_after <= step.weight_before


@pytest.mark.parametrize("m,n", [(m, n) for m in range(2, 7) for n in range(2, 7)])
def test_minimum_witnesses_keep_weight(m, n):
    f = gamma_torus_dp(m, n).witness
    out, trace = normalize(f)
    _check(f, out, trace)
    assert weight(out) == weight(f)
    assert all(step.rule in RULES for step in trace)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2), (2, 5)])
def test_exhaustive_small_tori(m, n):
    """Every valid function on the torus normalizes; the measure drops at each step."""
    for vals in itertools.product(range(3), repeat=m * n):
        f = A(np.array(vals).reshape(m, n))
        if verify_italian(f):
            continue
        out, trace = normalize(f)
        _check(f, out, trace)


def test_trace_weights_chain(rng):
    # each step is checked inside normalize for validity and a strict drop of
    # (weight, triples, pairs); here the recorded weights must link up
    for _ in range(300):
        m, n = rng.integers(3, 7, size=2)
        f = random_italian(m, n, rng)
        out, trace = normalize(f)
        weights = [weight(f)]
        for step in trace:
            assert step.weight_before == weights[-1]
            weights.append(step.weight_after)
        assert weights[-1] == weight(out)
        assert weights == sorted(weights, reverse=True)


def test_step_limit():
    from domtorus.normalizer import StepLimitExceeded

    with pytest.raises(StepLimitExceeded):
        normalize(CHAIN.with_values(np.array(CHAIN.values)), step_limit=0)


@settings(max_examples=200)
@given(st.integers(3, 6), st.integers(3, 6), st.integers(0, 2**32 - 1))
def test_random_valid_functions(m, n, seed):
    f = random_italian(m, n, np.random.default_rng(seed))
    out, trace = normalize(f)
    _check(f, out, trace)
