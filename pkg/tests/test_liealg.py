from fractions import Fraction
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dynpoisson.dynr import omega_tensor, omega_12_23
from dynpoisson.liealg import CompactForm, Tensor, Wedge, cyb_tensor, schouten_bracket
from dynpoisson.liealg.compact import RealGeometry
from dynpoisson.liealg.tensors import leg_bracket
from dynpoisson.rootsys import root_span_subset

from conftest import alg

NAMES = ["A1", "A2", "B2", "G2", "A3", "B3", "C3"]


@pytest.mark.parametrize("name", NAMES)
def test_jacobi_exact(name):
    L = alg(name)
    n = L.dim
    triples = [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
    if len(triples) > 4000:
        triples = random.Random(1).sample(triples, 4000)
    for i, j, k in triples:
        total = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, x in L.bracket_basis(b, c).items():
                for p, y in L.bracket_basis(a, m).items():
                    total[p] = total.get(p, 0) + x * y
        assert all(v == 0 for v in total.values())


@pytest.mark.parametrize("name", NAMES)
def test_killing_two_ways(name):
    L = alg(name)
    for i in range(L.dim):
        for j in range(L.dim):
            assert L.killing_adjoint(i, j) == L.killing[i][j]


@pytest.mark.parametrize("name", NAMES)
def test_unit_pairing_and_invariance(name):
    L = alg(name)
    rs = L.rs
    for k in range(len(rs.roots)):
        assert abs(L.kform(L.E(k), L.E(rs.neg(k))) - 1) < 1e-14
        # alpha(h_alpha) = <alpha, alpha>
        assert sum(c * rs.ip(k, j) for j, c in L.h_alpha(k).items()) == rs.ip(k, k)
    K = L.killing
    for x in range(L.dim):
        for y in range(L.dim):
            for z in range(0, L.dim, 2):
                lhs = sum(c * K[m][z] for m, c in L.bracket_basis(x, y).items())
                rhs = sum(c * K[y][m] for m, c in L.bracket_basis(x, z).items())
                assert lhs + rhs == 0


def test_a1_normalization():
    L = alg("A1")
    assert L.rs.ip(0, 0) == Fraction(1, 2)
    # alpha(h_alpha) = 1/2
    assert sum(c * L.rs.ip(0, j) for j, c in L.h_alpha(0).items()) == Fraction(1, 2)


def string_p(rs, a, b):
    p = 0
    cur = b
    while True:
        cur = rs.add(rs.neg(a), cur) if cur is not None else None
        if cur is None:
            return p
        p += 1


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "B3"])
def test_structure_constant_magnitudes(name):
    L = alg(name)
    rs = L.rs
    for (a, b), N in L.chevalley_N.items():
        assert abs(N) == string_p(rs, a, b) + 1
    if name == "A2":
        assert all(abs(N) == 1 for N in L.chevalley_N.values())


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
def test_casimir_invariant(name):
    L = alg(name)
    om = omega_tensor(L)
    for i in range(L.dim):
        assert om.ad({i: 1}).norm() == 0


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_omega_brackets(name):
    L = alg(name)
    om = omega_tensor(L)
    a = leg_bracket(om, om, (0, 1), (0, 2))
    b = leg_bracket(om, om, (0, 1), (1, 2))
    c = leg_bracket(om, om, (0, 2), (1, 2))
    assert (a + b + c - a).norm() < 1e-13
    assert (a + b).norm() < 1e-13


def test_omega_skew_part_a2():
    """[Omega12, Omega23] against (1/2) sum over all roots of h_a ^ E_a ^ E_-a plus
    N_ab E_a ^ E_b ^ E_c once per unordered triple a + b + c = 0."""
    L = alg("A2")
    rs = L.rs
    W = omega_12_23(L).to_wedge()
    e = lambda k: {L.root_index(k): L.c(k)}
    expect = Wedge(L, 3, {})
    for k in range(len(rs.roots)):
        expect = expect + Wedge.wedge(L, dict(L.h_alpha(k)), e(k), e(rs.neg(k))) * 0.5
    seen = set()
    for a in range(6):
        for b in range(6):
            s = rs.add(a, b)
            if s is None:
                continue
            c = rs.neg(s)
            key = frozenset((a, b, c))
            if key in seen:
                continue
            seen.add(key)
            expect = expect + Wedge.wedge(L, e(a), e(b), e(c)) * L.N(a, b)
    assert (W - expect).norm() < 1e-13


def test_schouten_derivation(rng):
    L = alg("A2")
    for _ in range(10):
        x, y, z = (int(v) for v in rng.integers(0, L.dim, 3))
        X = Wedge(L, 1, {(x,): 1})
        lhs = schouten_bracket(X, Wedge.wedge(L, {y: 1}, {z: 1}))
        xy = Wedge(L, 1, {(m,): c for m, c in L.bracket_basis(x, y).items()})
        xz = Wedge(L, 1, {(m,): c for m, c in L.bracket_basis(x, z).items()})
        rhs = xy.wedge_with(Wedge(L, 1, {(z,): 1})) + Wedge(L, 1, {(y,): 1}).wedge_with(xz)
        assert (lhs - rhs).norm() < 1e-13


def test_schouten_a1():
    L = alg("A1")
    phi = 0.7 - 0.2j
    A = Wedge.wedge(L, {L.root_index(0): L.c(0)}, {L.root_index(1): L.c(1)}) * phi
    h = dict(L.h_alpha(0))
    E, F = {L.root_index(0): L.c(0)}, {L.root_index(1): L.c(1)}
    want = Wedge.wedge(L, h, E, F) * (2 * phi ** 2)
    assert (schouten_bracket(A, A) - want).norm() < 1e-14
    eps = 1.3j
    lam = Wedge.wedge(L, E, F) * (eps / 2)
    diff = schouten_bracket(lam, lam).to_tensor() - omega_12_23(L) * (eps ** 2 / 2)
    assert diff.norm() < 1e-14


def test_cyb_constant_a1():
    L = alg("A1")
    eps = 1j
    E, F = {L.root_index(0): L.c(0)}, {L.root_index(1): L.c(1)}
    r0 = omega_tensor(L) * (eps / 2) + Wedge.wedge(L, E, F).to_tensor() * (eps / 2)
    assert cyb_tensor(r0).norm() < 1e-14
    assert cyb_tensor(Tensor(L, 2, {})).norm() == 0


def principal_r(L, eps, s=1.0):
    """(eps/2)(Omega + s h ^ (e + f)) for the principal sl2-triple of sl3."""
    rs = L.rs
    h = np.zeros(L.dim, complex)
    for j in range(2):
        for m, c in L.coroot(j).items():
            h[m] += 2 * float(c)
    e = sum(L.E(k) for k in (0, 1))
    # f = c1 E_-a1 + c2 E_-a2 with [e, f] = h
    cols = [L.bracket_vec(e, L.E(rs.neg(k))) for k in (0, 1)]
    c, *_ = np.linalg.lstsq(np.array(cols).T, h, rcond=None)
    f = c[0] * L.E(rs.neg(0)) + c[1] * L.E(rs.neg(1))
    assert np.abs(L.bracket_vec(h, e) - 2 * e).max() < 1e-12
    assert np.abs(L.bracket_vec(h, f) + 2 * f).max() < 1e-12
    assert np.abs(L.bracket_vec(e, f) - h).max() < 1e-12
    sp = lambda v: {i: x for i, x in enumerate(v) if abs(x) > 0}
    A = Wedge.wedge(L, sp(h), sp(e + f))
    return omega_tensor(L) * (eps / 2) + A.to_tensor() * (eps / 2 * s)


def test_principal_triple_r_matrix_satisfies_cyb_sl3():
    """Checks CYB for (eps/2)(Omega + h ^ (e + f)) on sl3. The residual is nonzero for
    every rescaling of the h ^ (e + f) term, so this test fails."""
    L = alg("A2")
    r0 = principal_r(L, 1j)
    assert cyb_tensor(r0).norm() < 1e-10


def test_principal_triple_residual_never_vanishes_under_rescaling():
    L = alg("A2")
    scales = np.linspace(-3, 3, 61)
    res = [cyb_tensor(principal_r(L, 1j, s)).norm() for s in scales]
    assert min(res) > 0.04
    assert scales[int(np.argmin(res))] == 0.0


def test_compact_form_a1():
    L = alg("A1")
    cf = CompactForm(L)
    X, Y = cf.X(0), cf.Y(0)
    assert abs(L.kform(X, X) + 2) < 1e-14
    assert abs(L.kform(Y, Y) + 2) < 1e-14
    assert abs(L.kform(X, Y)) < 1e-14


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
def test_compact_form_structure(name):
    L = alg(name)
    cf = CompactForm(L)
    for k in range(L.rank):
        br = L.bracket_vec(cf.X(k), cf.Y(k))
        assert np.allclose(br, 2j * L.h_vec(k), atol=1e-13)
    cf.structure_constants()
    assert cf.closure_residual < 1e-12
    for v in cf.basis:
        assert np.allclose(cf.theta(v), v, atol=1e-14)
    geo = RealGeometry(L)
    fixed = geo.fixed_space(cf.theta, [np.eye(L.dim)[i] for i in range(L.dim)]
                            + [1j * np.eye(L.dim)[i] for i in range(L.dim)])
    assert len(fixed) == L.dim


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_tau_involution_and_fixed_points(name):
    L = alg(name)
    rs = L.rs
    cf = CompactForm(L)
    geo = RealGeometry(L)
    for X1 in ({0}, {1}, {0, 1}):
        rng = np.random.default_rng(0)
        v = rng.normal(size=L.dim) + 1j * rng.normal(size=L.dim)
        assert np.allclose(cf.tau(X1, cf.tau(X1, v)), v)
        for X in ({0}, {0, 1}):
            span = root_span_subset(rs, X)
            unit = np.eye(L.dim, dtype=complex)
            m = [unit[j] for j in range(rs.rank)] + [unit[L.root_index(k)] for k in sorted(span)]
            fixed = geo.fixed_space(lambda w: cf.tau(X1, w), m + [1j * x for x in m])
            assert len(fixed) == len(m)


@given(st.sampled_from(["A1", "A2", "B2"]), st.integers(0, 2 ** 31))
@settings(max_examples=25, deadline=None)
def test_wedge_embedding_antisymmetric(name, seed):
    L = alg(name)
    rng = np.random.default_rng(seed)
    idx = tuple(int(i) for i in rng.choice(L.dim, 3, replace=False))
    w = Wedge(L, 3, {idx: complex(rng.normal(), rng.normal())})
    t = w.to_tensor()
    assert t.skew_defect() < 1e-14
    assert (t.permute((1, 0, 2)) + t).norm() < 1e-14


@given(st.sampled_from(["A1", "A2", "B2"]), st.integers(0, 2 ** 31))
@settings(max_examples=25, deadline=None)
def test_real_wedges_fixed_by_theta(name, seed):
    L = alg(name)
    cf = CompactForm(L)
    rng = np.random.default_rng(seed)
    sp = lambda v: {i: x for i, x in enumerate(v) if abs(x) > 0}
    a, b = (sum(rng.normal() * v for v in cf.basis) for _ in range(2))
    assert Wedge.wedge(L, sp(a), sp(b)).is_real(1e-12)
    assert not Wedge.wedge(L, sp(1j * a), sp(b)).is_real(1e-6)
