from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from macext.gf import field_for_q
from macext.lattice import (Subspace, all_subspaces, contains, count_complement_avoiding,
                            enumerate_subspaces, find_min_x, gauss_binom, intersect, mobius,
                            orthogonal_complement, subspace_sum, subspaces_of)
from macext.multiplicity import avoids

F2, F3 = field_for_q(2), field_for_q(3)


def _span_oracle(F, m):
    """All subspaces as frozensets of points, by closing every vector set under span."""
    vecs = list(product(range(F.q), repeat=m))
    seen = {frozenset([tuple([0] * m)])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                if v in S:
                    continue
                T = {tuple(F.add(a, F.mul(c, b)) for a, b in zip(s, v)) for s in S for c in range(F.q)}
                T = frozenset(T)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return seen


def test_gauss_binom_examples():
    assert gauss_binom(4, 2, 2) == 35
    assert gauss_binom(5, 1, 2) == 31
    assert gauss_binom(3, 0, 7) == 1 and gauss_binom(3, 4, 2) == 0


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)])
def test_enumeration_matches_span_oracle(q, m):
    F = field_for_q(q)
    oracle = _span_oracle(F, m)
    subs = all_subspaces(m, F)
    assert {S.points for S in subs} == oracle
    assert len(subs) == len(oracle)
    for d in range(m + 1):
        layer = enumerate_subspaces(m, d, F)
        assert len(layer) == gauss_binom(m, d, q)
        assert layer == sorted(layer, key=Subspace.sort_key)


def test_complement_examples():
    line = Subspace.span(F2, 2, [[1, 1]])
    assert orthogonal_complement(line) == line
    e1 = Subspace.span(F3, 2, [[1, 0]])
    assert orthogonal_complement(e1) == Subspace.span(F3, 2, [[0, 1]])
    assert orthogonal_complement(Subspace.zero(F3, 3)) == Subspace.full(F3, 3)


def test_mobius_values():
    Z, full = Subspace.zero(F2, 3), Subspace.full(F2, 3)
    assert mobius(Z, Z) == 1
    assert mobius(Z, Subspace.span(F2, 3, [[1, 0, 0]])) == -1
    assert mobius(Z, Subspace.span(F2, 3, [[1, 0, 0], [0, 1, 0]])) == 2
    assert mobius(Z, full) == -8
    assert mobius(Subspace.span(F2, 3, [[1, 0, 0]]), Subspace.span(F2, 3, [[0, 1, 0]])) == 0


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (2, 4)])
def test_mobius_inversion(q, m):
    # sum_{U <= W <= V} mu(U, W) = [U == V]
    F = field_for_q(q)
    subs = all_subspaces(m, F)
    for U in subs[:: max(1, len(subs) // 12)]:
        for V in subs:
            if contains(V, U):
                total = sum(mobius(U, W) for W in subs if contains(V, W) and contains(W, U))
                assert total == (1 if U == V else 0)


def test_count_complement_avoiding_examples():
    assert count_complement_avoiding(3, 1, 1, 2) == 6
    assert count_complement_avoiding(4, 2, 2, 2) == 16


@pytest.mark.parametrize("q,a", [(2, 3), (2, 4), (3, 3)])
def test_count_complement_avoiding_enumerated(q, a):
    F = field_for_q(q)
    for b in range(a + 1):
        B = Subspace.span(F, a, [[int(i == j) for j in range(a)] for i in range(b)])
        for c in range(a - b + 1):
            n = sum(1 for C in enumerate_subspaces(a, c, F) if avoids(C, B))
            assert n == count_complement_avoiding(a, b, c, q)


def test_find_min_x():
    assert find_min_x(1, 2) == 2
    assert find_min_x(2, 2) == 5
    assert find_min_x(1, 3) == 2


def test_subspaces_of():
    V = Subspace.span(F2, 3, [[1, 0, 0], [0, 1, 0]])
    lines = subspaces_of(V, 1)
    assert len(lines) == 3 and all(contains(V, L) for L in lines)


def test_json_round_trip_and_validation():
    V = Subspace.span(F3, 3, [[1, 2, 0], [0, 0, 1]])
    assert Subspace.from_json(F3, V.to_json()) == V
    with pytest.raises(ValueError):
        Subspace.from_json(F3, {"ambient": 3, "dim": 1, "basis": [[2, 0, 0]]})


subspace_pairs = st.sampled_from(all_subspaces(4, F2))


@settings(max_examples=150, deadline=None)
@given(subspace_pairs, subspace_pairs)
def test_duality_laws(U, V):
    assert orthogonal_complement(orthogonal_complement(U)) == U
    assert orthogonal_complement(U).dim == 4 - U.dim
    assert orthogonal_complement(subspace_sum(U, V)) == intersect(orthogonal_complement(U),
                                                                   orthogonal_complement(V))
    assert subspace_sum(U, V).dim + intersect(U, V).dim == U.dim + V.dim
    assert intersect(U, V).points == U.points & V.points
    assert contains(V, U) == contains(orthogonal_complement(U), orthogonal_complement(V))
