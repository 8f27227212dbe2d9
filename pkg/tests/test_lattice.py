from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sosface.boltzmann import ModelParams
from sosface.cyclo import qint
from sosface.lattice import (Path, all_paths, depth, fmt_weight, inner_tilde, inversions, kappa_sq, paths,
                             paths_from, rho, shift, size, step, vertices, zero)


def brute_vertices(N, L):
    return {lam + (0,) for lam in product(range(L + 1), repeat=N - 1)
            if all(lam[i] >= lam[i + 1] for i in range(N - 2))}


@pytest.mark.parametrize("N,L", [(2, 1), (2, 2), (2, 5), (3, 1), (3, 2), (3, 3), (4, 2)])
def test_vertices_match_enumeration(N, L):
    assert set(vertices(N, L)) == brute_vertices(N, L)


def test_vertex_examples():
    assert vertices(2, 2) == ((0, 0), (1, 0), (2, 0))
    assert set(vertices(3, 1)) == {(0, 0, 0), (1, 0, 0), (1, 1, 0)}
    for L in range(1, 7):
        assert len(vertices(2, L)) == L + 1


def test_step_examples():
    assert step((0, 0), 1, 2) == (1, 0)
    assert step((2, 0), 1, 2) is None
    assert step((1, 1, 0), 3, 1) == (0, 0, 0)
    assert fmt_weight((2, 1, 0)) == "[2,1]"


def test_paths_examples():
    assert paths((0, 0), (0, 0), 0, 2) == (Path((0, 0), ()),)
    assert paths((0, 0), (0, 0), 2, 2) == (Path((0, 0), (1, 2)),)
    # height walks 0 -> 1 -> {0, 2} -> 1 stay inside 0..2
    assert len(paths_from((0, 0), 3, 2)) == 2
    assert str(Path((0, 0), (1, 2))) == "[0]|1,2"


def test_path_count_against_height_walks():
    for L in range(1, 5):
        for m in range(0, 7):
            walks = [w for w in product((1, -1), repeat=m)
                     if all(0 <= sum(w[:k]) <= L for k in range(m + 1))]
            assert len(paths_from((0, 0), m, L)) == len(walks)


def test_path_enumeration_is_depth_first_in_step_order():
    ps = paths_from((0, 0, 0), 2, 2)
    assert [p.steps for p in ps] == sorted(p.steps for p in ps)


def test_depth_examples():
    assert depth((0, 0), 1, 2) == 1
    assert depth((2, 1, 0), 2, 2) == 0
    assert depth((1, 0, 0), 1, 3) == 3


def test_inversions_examples():
    assert inversions((3, 2, 1)) == 0
    assert inversions((1, 2)) == 1
    assert inversions((1, 2, 1)) == 1


def test_inner_tilde_examples():
    assert inner_tilde((0, 0), (3, 0)) == 0
    assert inner_tilde((1, 0), (1, 0)) == 1
    assert inner_tilde(rho(2), rho(2)) == 1


@pytest.mark.parametrize("N,L", [(2, 2), (3, 2), (3, 3), (4, 2)])
def test_depths_nonzero_and_bounded(N, L):
    for lam in vertices(N, L):
        for i in range(1, N + 1):
            if step(lam, i, L) is None:
                continue
            for k in range(1, N + 1):
                if k != i and step(lam, k, L) is not None:
                    d = depth(lam, i, k)
                    assert d != 0 and abs(d) <= N + L - 1


@pytest.mark.parametrize("N,L", [(2, 1), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_path_existence_criterion(N, L):
    """Paths exist iff the length matches |mu|-|lam| mod N and is long enough."""
    V = vertices(N, L)
    reach = {lam: {lam} for lam in V}
    for m in range(0, 7):
        for lam in V:
            for mu in V:
                found = bool(paths(lam, mu, m, L))
                assert found == (mu in reach[lam])
                if found:
                    assert (m - (size(mu) - size(lam))) % N == 0
        reach = {lam: {step(x, i, L) for x in reach[lam] for i in range(1, N + 1)} - {None} for lam in V}


def test_edge_kappa_is_one_at_zero():
    p = ModelParams.from_zeta(3, 2, 1, 1)
    for i in (1, 2, 3):
        if step(zero(3), i, 2) is not None:
            assert kappa_sq(Path(zero(3), (i,)), p) == 1


def test_kappa_sq_su2_edge():
    p = ModelParams.from_zeta(2, 2, 1, 1)
    t = p.t
    # edge from hat1 in direction 1: one factor [d+1]/[d-1] with d = 2
    assert kappa_sq(Path((1, 0), (1,)), p) == qint(3, t) / qint(1, t)


@given(st.sampled_from([(2, 2), (2, 3), (3, 2), (3, 3)]), st.data())
def test_kappa_multiplicative_under_concatenation(NL, data):
    N, L = NL
    p = ModelParams.from_zeta(N, L, 1, 1)
    lam = data.draw(st.sampled_from(vertices(N, L)))
    a = data.draw(st.sampled_from(paths_from(lam, data.draw(st.integers(1, 2)), L)))
    b = data.draw(st.sampled_from(paths_from(a.rng, data.draw(st.integers(1, 2)), L)))
    assert kappa_sq(a.concat(b), p) == kappa_sq(a, p) * kappa_sq(b, p)


@given(st.lists(st.integers(1, 4), min_size=2, max_size=7), st.data())
def test_inversions_adjacent_transposition(word, data):
    assert inversions(sorted(word, reverse=True)) == 0
    k = data.draw(st.integers(0, len(word) - 2))
    if word[k] < word[k + 1]:
        swapped = word[:k] + [word[k + 1], word[k]] + word[k + 2:]
        assert inversions(swapped) == inversions(word) - 1


@given(st.sampled_from([2, 3, 4]), st.data())
def test_shift_by_all_steps_is_identity(N, data):
    lam = data.draw(st.sampled_from(vertices(N, 3)))
    x = lam
    for i in range(1, N + 1):
        x = shift(x, i)
    assert x == lam


def test_all_paths_counts():
    assert len(all_paths(2, 2, 1)) == 4
    assert sum(len(paths_from(lam, 2, 2)) for lam in vertices(2, 2)) == len(all_paths(2, 2, 2))
