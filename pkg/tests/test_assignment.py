import numpy as np
import pytest
from hypothesis import given, strategies as st

from domtorus.assignment import (
    NO_DOMINATOR,
    SOURCE_ZERO,
    Assignment,
    GridFormatError,
    is_independent,
    parse_grid,
    random_italian,
    serialize_grid,
    value_counts,
    verify_italian,
    verify_italian_torus_sumrule,
    weight,
    zero_set,
)
from domtorus.constructions import build_idf, build_independent_set
from domtorus.digraph import GraphError, make_directed_cycle, make_directed_path, make_torus
from domtorus.solver import gamma_torus_dp


def grid_assignment(rows):
    return Assignment.from_grid(np.array(rows))


def test_weight_examples():
    assert weight(Assignment.constant(make_torus(2, 2), 0)) == 0
    assert weight(Assignment.constant(make_torus(3, 4), 1)) == 12
    assert weight(build_idf(4, 5)) == 12


def test_constructor_checks():
    with pytest.raises(ValueError):
        Assignment(np.zeros(3), make_torus(2, 2))
    with pytest.raises(ValueError):
        Assignment(np.full(4, 3), make_torus(2, 2))


def test_all_ones_always_valid():
    for D in (make_torus(3, 5), make_directed_path(1), make_directed_path(6), make_directed_cycle(4)):
        assert verify_italian(Assignment.constant(D, 1)) == []


def test_even_even_witness_on_2x2():
    f = grid_assignment([[0, 1], [1, 0]])
    assert verify_italian(f) == []
    assert weight(f) == 2


def test_path_source_must_be_nonzero():
    f = Assignment(np.array([0, 2]), make_directed_path(2))
    assert len(verify_italian(f)) == 1
    assert verify_italian(f)[0].vertex == 0
    assert verify_italian(f)[0].reason == SOURCE_ZERO


def test_in_degree_one_needs_a_two():
    P = make_directed_path(3)
    assert verify_italian(Assignment(np.array([1, 0, 1]), P))[0].reason == NO_DOMINATOR
    assert verify_italian(Assignment(np.array([2, 0, 1]), P)) == []


def test_sumrule_examples():
    assert verify_italian_torus_sumrule(build_idf(4, 4))
    assert not verify_italian_torus_sumrule(Assignment.constant(make_torus(3, 3), 0))
    assert verify_italian_torus_sumrule(gamma_torus_dp(5, 5).witness)
    with pytest.raises(GraphError):
        verify_italian_torus_sumrule(Assignment.constant(make_directed_cycle(3), 1))


@pytest.mark.parametrize("m,n", [(m, n) for m in range(2, 7) for n in range(2, 7)])
def test_sumrule_agrees_with_general_verifier(m, n, rng):
    D = make_torus(m, n)
    for _ in range(1000):
        f = Assignment(rng.integers(0, 3, D.N), D)
        assert (not verify_italian(f)) == verify_italian_torus_sumrule(f)
    # uniform draws are almost never valid on larger tori; add valid ones too
    for _ in range(50):
        f = random_italian(m, n, rng)
        assert verify_italian(f) == [] and verify_italian_torus_sumrule(f)


@given(st.integers(2, 6), st.integers(2, 6), st.data())
def test_validity_is_transpose_invariant(m, n, data):
    vals = data.draw(st.lists(st.integers(0, 2), min_size=m * n, max_size=m * n))
    g = np.array(vals).reshape(m, n)
    assert verify_italian_torus_sumrule(Assignment.from_grid(g)) == \
        verify_italian_torus_sumrule(Assignment.from_grid(g.T))
    assert (not verify_italian(Assignment.from_grid(g))) == (not verify_italian(Assignment.from_grid(g.T)))


@given(st.lists(st.integers(0, 2), min_size=12, max_size=12))
def test_weight_counts(vals):
    f = Assignment(np.array(vals), make_torus(3, 4))
    zeros, ones, twos = value_counts(f)
    assert weight(f) == ones + 2 * twos
    assert len(zero_set(f)) == zeros


def test_zero_set_examples():
    assert zero_set(Assignment.constant(make_torus(3, 3), 1)) == frozenset()
    assert zero_set(Assignment.constant(make_torus(2, 3), 0)) == frozenset(range(6))
    for m, n in [(4, 4), (4, 5), (5, 3), (7, 3)]:
        assert zero_set(build_idf(m, n)) == build_independent_set(m, n)


def test_is_independent_examples():
    D = make_torus(3, 3)
    assert is_independent(set(), D)
    assert not is_independent({D.index(0, 0), D.index(0, 1)}, D)
    assert not is_independent({D.index(0, 0), D.index(2, 0)}, D)  # arc (2,0) -> (0,0)
    assert is_independent({D.index(0, 0), D.index(1, 1)}, D)
    assert is_independent(build_independent_set(6, 5), make_torus(6, 5))


def test_parse_grid_examples():
    f = parse_grid("11\n11")
    assert f.host.dims == (2, 2) and weight(f) == 4
    f = parse_grid("20\n01")
    assert [f[0, 0], f[0, 1], f[1, 0], f[1, 1]] == [2, 0, 0, 1]
    for bad in ["112\n11", "13\n11", "1\n1", "111", "", "1 1\n11"]:
        with pytest.raises(GridFormatError):
            parse_grid(bad)


@given(st.integers(2, 6), st.integers(2, 6), st.data())
def test_grid_round_trip(m, n, data):
    rows = data.draw(st.lists(st.text("012", min_size=n, max_size=n), min_size=m, max_size=m))
    text = "\n".join(rows)
    assert serialize_grid(parse_grid(text)) == text
    assert serialize_grid(parse_grid(text + "\n")) == text
