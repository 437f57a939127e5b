from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from dynpoisson.errors import BadSubset, UnknownType
from dynpoisson.rootsys import (
    WeylGroup, build_root_system, coset_decomposition, parse_designator, reflection_perms,
    root_span_subset,
)

SMALL = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)]


def all_subsets(r):
    return [frozenset(c) for n in range(r + 1) for c in combinations(range(r), n)]


def test_a1_roots():
    rs = build_root_system("A", 1)
    assert rs.roots == [(1,), (-1,)]
    assert rs.cartan_matrix == [[2]]


def test_a2_roots():
    rs = build_root_system("A", 2)
    assert len(rs.roots) == 6
    assert {rs.roots[k] for k in rs.positive_set} == {(1, 0), (0, 1), (1, 1)}


def test_g2_roots():
    rs = build_root_system("G", 2)
    assert len(rs.roots) == 12
    assert max(rs.height(k) for k in range(12)) == 5


def brute_closure(rs):
    """Positive roots by repeatedly adding simple roots along strings (independent of reflections)."""
    r = rs.rank
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for b in frontier:
            for i in range(r):
                c = tuple(x + (j == i) for j, x in enumerate(b))
                # c is a root iff the alpha_i string through b extends: q - p formula
                pair = sum(b[j] * rs.cartan_matrix[i][j] for j in range(r))
                p = 0
                d = tuple(x - (j == i) for j, x in enumerate(b))
                while d in found or (any(d) and d in simple):
                    p += 1
                    d = tuple(x - (j == i) for j, x in enumerate(d))
                if p - pair > 0 and c not in found:
                    found.add(c)
                    new.append(c)
        frontier = new
    return found


@pytest.mark.parametrize("fam,rank", SMALL)
def test_positive_roots_match_string_closure(fam, rank):
    rs = build_root_system(fam, rank)
    assert {rs.roots[k] for k in rs.positive_set} == brute_closure(rs)


@pytest.mark.parametrize("fam,rank", SMALL)
def test_root_system_invariants(fam, rank):
    rs = build_root_system(fam, rank)
    assert len(rs.roots) % 2 == 0
    assert all(rs.roots[rs.neg(k)] == tuple(-c for c in rs.roots[k]) for k in range(len(rs.roots)))
    for perm in reflection_perms(rs):
        assert sorted(perm) == list(range(len(rs.roots)))
    # coweights dual to simple roots
    for g, cw in enumerate(rs.fundamental_coweights):
        for i in range(rank):
            val = sum(cw[j] * rs.ip(i, j) for j in range(rank))
            assert val == (1 if i == g else 0)


@pytest.mark.parametrize("fam,rank", SMALL)
def test_killing_ip_matches_adjoint_trace(fam, rank):
    from dynpoisson.liealg import build_chevalley
    rs = build_root_system(fam, rank)
    L = build_chevalley(rs)
    # <alpha_i, alpha_j> = kappa(t_i, t_j), and kappa on h_j = t_{alpha_j} from ad traces
    for i in range(rank):
        for j in range(rank):
            assert L.killing_adjoint(i, j) == rs.gram[i][j]


def test_a1_killing_value():
    assert build_root_system("A", 1).gram == [[Fraction(1, 2)]]


@pytest.mark.parametrize("fam,rank", SMALL)
def test_weyl_lengths(fam, rank):
    rs = build_root_system(fam, rank)
    W = WeylGroup(rs)
    for w in W.elements:
        assert len(W.inversion_set(w)) == W.length(w)
        assert W.from_word(W.word(w)) == w
    assert W.length(W.longest) == len(rs.positive_set)
    assert len({W.mul(a, b) for a in W.elements[:5] for b in W.elements}) <= len(W)


@given(st.sampled_from(SMALL[:4]), st.data())
@settings(max_examples=30, deadline=None)
def test_weyl_group_axioms(fr, data):
    W = WeylGroup(build_root_system(*fr))
    a, b, c = (data.draw(st.sampled_from(W.elements)) for _ in range(3))
    assert W.mul(W.mul(a, b), c) == W.mul(a, W.mul(b, c))
    assert W.mul(a, W.inv(a)) == tuple(range(len(a)))
    assert W.mul(a, b) in set(W.elements)


def test_span_examples():
    rs = build_root_system("A", 2)
    brute = {k for k in range(6) if rs.roots[k][1] == 0}
    assert root_span_subset(rs, {0}) == brute
    assert root_span_subset(rs, set()) == frozenset()
    assert root_span_subset(rs, {0, 1}) == frozenset(range(6))


def test_coset_example_a2():
    rs = build_root_system("A", 2)
    W = WeylGroup(rs)
    dec = coset_decomposition(W, {0})
    assert sorted(W.word_name(w) for w in dec.W__X) == sorted(["e", "s2", "s1s2"])
    assert len(dec.W_X) == 2
    span = root_span_subset(rs, {0})
    brute = [w for w in W.elements
             if all(rs.is_positive(k) and k not in span for k in W.inversion_set(W.inv(w)))]
    assert sorted(brute) == sorted(dec.W__X)


@pytest.mark.parametrize("fam,rank", SMALL)
def test_coset_trivial_cases(fam, rank):
    W = WeylGroup(build_root_system(fam, rank))
    e = tuple(range(len(W.elements[0])))
    empty = coset_decomposition(W, set())
    assert sorted(empty.W__X) == sorted(W.elements) and empty.W_X == [e]
    full = coset_decomposition(W, set(range(rank)))
    assert full.W__X == [e] and sorted(full.W_X) == sorted(W.elements)


@pytest.mark.parametrize("fam,rank", SMALL)
def test_coset_factorization(fam, rank):
    rs = build_root_system(fam, rank)
    W = WeylGroup(rs)
    for X in all_subsets(rank):
        dec = coset_decomposition(W, X)
        span = root_span_subset(rs, X)
        reps = set(dec.W__X)
        for w in W.elements:
            # w in W^X iff w maps the positive roots of [X] to positive roots
            assert (w in reps) == all(rs.is_positive(w[k]) for k in span if rs.is_positive(k))
            pairs = [(w1, w2) for w1 in dec.W__X for w2 in dec.W_X if W.mul(w1, w2) == w]
            assert len(pairs) == 1
            w1, w2 = pairs[0]
            phi_w = W.inversion_set(W.inv(w))
            part2 = W.inversion_set(W.inv(w2))
            part1 = {W.inv(w2)[k] for k in W.inversion_set(W.inv(w1))}
            assert phi_w == part1 | part2 and not part1 & part2
            assert part2 <= span and not part1 & span


def test_designators():
    assert parse_designator("a2") == ("A", 2)
    with pytest.raises(UnknownType):
        parse_designator("Z9")
    with pytest.raises(UnknownType):
        build_root_system("E", 4)
    with pytest.raises(BadSubset):
        build_root_system("A", 2).parse_simple(["a3"])
