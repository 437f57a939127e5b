import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dynpoisson.errors import (ChartSingularity, IrregularLambda, OffCell, OffManifold, Singular,
                               UnsupportedType)
from dynpoisson.homog import build_pi_spec
from dynpoisson.matrixrep import (
    MatrixModel, coordinate_bracket_table, group_bivector, hamiltonian_consistency, iwasawa,
    leaf_census, m1_defect, modular_field_numeric, moment_map_eval, r_pairing_defect, xy_table,
)
from dynpoisson.matrixrep.bivector import (
    Entry, Linear, random_kx, s2_functions, s2_point, s2_section, t_invariant_functions,
)
from dynpoisson.matrixrep.moment import (
    HAMILTONIAN_SIGN, hamiltonian_defects, su2_cell_coordinate, su2_cell_point,
)
from dynpoisson.matrixrep.modular import s2_grid

from conftest import alg


def model(name):
    return MatrixModel(alg(name))


# the defining representation

@pytest.mark.parametrize("name", ["A1", "A2", "A3"])
def test_homomorphism_and_killing_exact(name):
    M = model(name)
    assert M.homomorphism_residual() == 0
    assert M.killing_residual() == 0
    for j in range(M.n - 1):
        h = M.exact_images[j]
        assert all(h[a, b] == 0 for a in range(M.n) for b in range(M.n) if a != b)
        assert sum(h.diagonal()) == 0


def test_a1_images():
    M = model("A1")
    assert np.allclose(M.E(0), [[0, 0.5], [0, 0]])
    assert abs(M.kform(M.E(0), M.E(1)) - 1) < 1e-15


def test_unsupported_types():
    for name in ("B2", "A4"):
        with pytest.raises(UnsupportedType):
            MatrixModel(alg(name))


def test_manifold_checks():
    M = model("A1")
    with pytest.raises(OffManifold):
        M.check_su(np.diag([2, 0.5]))
    with pytest.raises(OffManifold):
        M.check_a(np.array([[1, 1], [0, 1]]))
    M.check_a(np.diag([2, 0.5]))


# Iwasawa

def gram_schmidt_kan(g):
    """Independent oracle: classical Gram-Schmidt on the columns of g."""
    n = g.shape[0]
    Q = np.zeros_like(g)
    R = np.zeros_like(g)
    for j in range(n):
        v = g[:, j].copy()
        for i in range(j):
            R[i, j] = Q[:, i].conj() @ g[:, j]
            v = v - R[i, j] * Q[:, i]
        R[j, j] = np.linalg.norm(v)
        Q[:, j] = v / R[j, j]
    a = np.diag(np.diag(R).real)
    return Q, a, np.linalg.solve(a, R)


def test_iwasawa_identity_and_unitary(rng):
    f = iwasawa(np.eye(3))
    assert np.allclose(f.k, np.eye(3)) and np.allclose(f.a, np.eye(3)) and np.allclose(f.n, np.eye(3))
    M = model("A2")
    k = M.random_su(rng)
    f = iwasawa(k)
    assert np.abs(f.k - k).max() < 1e-12 and np.abs(f.a - np.eye(3)).max() < 1e-12
    assert np.abs(f.n - np.eye(3)).max() < 1e-12


@pytest.mark.parametrize("z", [0.3 + 0.2j, 1 + 1j, -2.5])
def test_iwasawa_su2_cell(z):
    g = np.array([[1, z], [0, 1]]) @ np.array([[0, 1], [-1, 0]])
    a = iwasawa(g.astype(complex)).a
    s = np.sqrt(1 + abs(z) ** 2)
    assert np.allclose(np.diag(a), [s, 1 / s], atol=1e-14)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_iwasawa_against_gram_schmidt(n, rng):
    M = model(f"A{n - 1}")
    for _ in range(50):
        g = M.random_sl(rng)
        f = iwasawa(g)
        k, a, nn = gram_schmidt_kan(g)
        assert np.abs(f.k - k).max() < 1e-9
        assert np.abs(f.a - a).max() < 1e-9
        assert np.abs(f.n - nn).max() < 1e-9


@pytest.mark.parametrize("n", [2, 3, 4])
def test_iwasawa_round_trip(n, rng):
    M = model(f"A{n - 1}")
    for _ in range(1000):
        g = M.random_sl(rng)
        f = iwasawa(g)
        assert f.round_trip_error(g) <= 1e-12
    M.check_su(f.k)
    M.check_a(f.a)
    assert np.allclose(np.diag(f.n), 1) and np.allclose(np.tril(f.n, -1), 0)


def test_iwasawa_singular():
    with pytest.raises(Singular):
        iwasawa(np.array([[1, 2], [2, 4]]))


# brackets on SU(2)

def test_su2_coordinate_brackets(rng):
    M = model("A1")
    eps = 1j
    u, ub, v, vb = Entry(0, 0), Entry(0, 0, True), Entry(0, 1), Entry(0, 1, True)
    for _ in range(50):
        k = M.random_su(rng)
        a, b = k[0, 0], k[0, 1]
        assert abs(group_bivector("K", M, k, u, ub, eps) + eps / 4 * abs(b) ** 2) < 1e-10
        assert abs(group_bivector("K", M, k, u, v, eps) - eps / 8 * a * b) < 1e-10
        assert abs(group_bivector("K", M, k, u, vb, eps) - eps / 8 * a * np.conj(b)) < 1e-10
        assert abs(group_bivector("K", M, k, v, vb, eps)) < 1e-10


def test_su2_example_point():
    M = model("A1")
    v = 0.6
    k = np.array([[0.8, v], [-v, 0.8]], dtype=complex)
    assert abs(group_bivector("K", M, k, Entry(0, 0), Entry(0, 0, True), 1j) + 1j / 4 * v ** 2) < 1e-14


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_k_bracket_vanishes_at_identity(name):
    M = model(name)
    fs = [Entry(i, j, c) for i in range(M.n) for j in range(M.n) for c in (False, True)]
    e = np.eye(M.n, dtype=complex)
    assert max(abs(group_bivector("K", M, e, f, g)) for f in fs for g in fs) == 0


@pytest.mark.parametrize("lam", [0.37, -0.8])
def test_an_pairing(lam):
    M = model("A1")
    eps = 1j
    a = np.diag([np.exp(-lam / 2), np.exp(lam / 2)]).astype(complex)  # a = e^{-lambda}, alpha(lambda) = lam
    p = group_bivector("AN", M, a, M.X(0), M.Y(0), eps)
    assert abs(p - 2j / eps * (1 - np.exp(2 * lam))) < 1e-12
    spec = build_pi_spec(alg("A1"), (0,), (), (lam,), eps)
    assert abs(1 / p - spec.xy_coefficients[0]) < 1e-10


def test_an_pairing_a2():
    M = model("A2")
    eps = 1j
    lam = np.array([0.3, -0.5])
    H = M.cartan_from_values(lam)
    a = np.diag(np.exp(-np.diag(H))).astype(complex)
    spec = build_pi_spec(alg("A2"), (0, 1), (), lam)
    for k in alg("A2").rs.positive_set:
        p = group_bivector("AN", M, a, M.X(k), M.Y(k), eps)
        assert abs(1 / p - spec.xy_coefficients[k]) < 1e-10


def test_s2_embedding(rng):
    M = model("A1")
    for _ in range(20):
        k = M.random_su(rng)
        u, v = k[0, 0], k[0, 1]
        p = s2_point(k)
        assert abs(np.linalg.norm(p) - 1) < 1e-14
        display = np.array([abs(u) ** 2 - abs(v) ** 2, (-1j * (u * v - np.conj(u * v))).real,
                            (-(u * v + np.conj(u * v))).real])
        assert np.allclose(np.sort(np.abs(p)), np.sort(np.abs(display)), atol=1e-14)
        assert np.allclose(s2_point(s2_section(p)), p, atol=1e-13)
    with pytest.raises(ChartSingularity):
        s2_section([-1.0, 0.0, 0.0])


@pytest.mark.parametrize("a", [-1, 0, 0.3, 1, 2])
def test_s2_family_table(a):
    t = coordinate_bracket_table(model("A1"), 1j, a)
    assert t["fit_residual"] < 1e-9 and t["pattern_residual"] < 1e-9
    c = -1j * 1j / 4
    yz = t["table"]["{y,z}"]
    # {y,z} = c (x + 2a - 1) x = c x^2 + c (2a - 1) x
    assert abs(yz.get("xx", 0) - c) < 1e-9
    assert abs(yz.get("x", 0) - c * (2 * a - 1)) < 1e-9


def test_bruhat_table_has_x_minus_one():
    t = coordinate_bracket_table(model("A1"), 1j, 0)
    xy = t["table"]["{x,y}"]
    assert abs(xy["zx"] - 0.25) < 1e-9 and abs(xy["z"] + 0.25) < 1e-9


def test_leaf_census():
    M = model("A1")
    for a in (-1, 2):
        c = leaf_census(M, 1j, a, grid=1000)
        assert c["symplectic"] and c["min_abs_pfaffian"] > 0.1
    c = leaf_census(M, 1j, 0.3, grid=1000)
    assert not c["symplectic"] and abs(c["zero_circle_x"] - 0.4) < 1e-15
    assert c["max_abs_on_circle"] < 1e-12


def test_su3_xy_table():
    M = model("A2")
    spec = build_pi_spec(alg("A2"), (0, 1), (0,), (0.5, 0.4))
    t = xy_table(M, spec)
    for k, c in spec.xy_coefficients.items():
        assert abs(t[k] - c) < 1e-13


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_m1_poisson_map(name, rng):
    M = model(name)
    L = alg(name)
    fs = t_invariant_functions(M)
    for r in range(L.rank + 1):
        for X in itertools.combinations(range(L.rank), r):
            for X1 in ([(), X[:1]] if X else [()]):
                spec = build_pi_spec(L, X, X1, rng.uniform(0.2, 1, size=len(X)))
                for _ in range(3):
                    assert m1_defect(spec, M, M.random_su(rng), random_kx(M, spec, rng), fs) < 1e-6


@pytest.mark.parametrize("n", [2, 3, 4])
def test_r_element_pairing(n):
    M = model(f"A{n - 1}")
    for eps in (1j, 0.3j):
        assert r_pairing_defect(M, eps) < 1e-9


# moment maps

@pytest.mark.parametrize("eps", [1j, 0.5j])
@pytest.mark.parametrize("z", [0.3 + 0.2j, 1 + 1j, -2 + 0.5j, 0.01])
def test_bruhat_moment(eps, z):
    M = model("A1")
    v = moment_map_eval("bruhat", M, eps * M.h_rho, eps, word=(0,), k=su2_cell_point(z)).value
    assert abs(v + np.log(1 + abs(z) ** 2)) < 1e-10


def test_cell_coordinate_round_trip(rng):
    for _ in range(10):
        z = complex(rng.normal(), rng.normal())
        assert abs(su2_cell_coordinate(su2_cell_point(z)) - z) < 1e-12
    with pytest.raises(OffCell):
        su2_cell_coordinate(np.eye(2, dtype=complex))


def test_dressing_at_identity():
    M = model("A2")
    lam = [0.7, -0.3]
    x = 1j * M.h(0) + 0.4j * M.h(1)
    v = moment_map_eval("dressing", M, x, 1j, lam=lam, k=np.eye(3, dtype=complex))
    H = M.cartan_from_values(lam)
    assert abs(v.value - (2j / 1j * M.kform(-H, x).imag).real) < 1e-14
    assert all(isinstance(p, float) for p in v.pairings)


def test_dressing_irregular():
    M = model("A2")
    with pytest.raises(IrregularLambda):
        moment_map_eval("dressing", M, None, 1j, lam=[0.5, -0.5], k=np.eye(3, dtype=complex))


def test_limit_check():
    M = model("A1")
    vals = [abs(moment_map_eval("limit", M, 1j * M.h_rho, 1j, lam=[0.3], t=t, word=(0,),
                                k=su2_cell_point(1 + 1j)).value) for t in (1, 5, 10, 15)]
    assert vals[-1] < 1e-5
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_hamiltonian_dressing(rng):
    M = model("A1")
    x = 1j * M.h(0)
    for _ in range(20):
        k = M.random_su(rng)
        assert hamiltonian_consistency(M, "dressing", k, x, 1j, lam=[0.7]) < 1e-4
        d = hamiltonian_defects(M, "dressing", k, x, 1j, lam=[0.7])
        assert d[-HAMILTONIAN_SIGN] > 1e-2


def test_hamiltonian_bruhat(rng):
    M = model("A1")
    x = 1j * M.h(0)
    for _ in range(20):
        k = su2_cell_point(complex(rng.normal(), rng.normal()))
        assert hamiltonian_consistency(M, "bruhat", k, x, 1j) < 1e-4


def test_hamiltonian_zero_x(rng):
    M = model("A1")
    k = M.random_su(rng)
    assert hamiltonian_consistency(M, "dressing", k, np.zeros((2, 2), complex), 1j, lam=[0.7]) == 0


def test_hamiltonian_dressing_su3(rng):
    M = model("A2")
    x = 1j * M.h(0) - 0.3j * M.h(1)
    k = M.random_su(rng)
    assert hamiltonian_consistency(M, "dressing", k, x, 1j, lam=[0.7, 0.4]) < 1e-4


# modular field

def test_modular_grid_has_200_points():
    assert len(s2_grid(200)) == 200


@pytest.mark.parametrize("a", [-1, 0, 0.3, 2])
def test_modular_field(a):
    r = modular_field_numeric(model("A1"), a)
    assert r["independence_defect"] < 1e-5 and r["match_defect"] < 1e-5


def test_modular_field_preserves_area():
    grid = s2_grid(40)
    r = modular_field_numeric(model("A1"), 0.3, grid, with_divergence=True)
    assert r["divergence"] < 1e-5


@given(st.floats(-3, 3), st.integers(0, 2 ** 31))
@settings(max_examples=20, deadline=None)
def test_s2_brackets_follow_pattern(a, seed):
    M = model("A1")
    rng = np.random.default_rng(seed)
    fx, fy, fz = s2_functions(M)
    k = M.random_su(rng)
    x, y, z = s2_point(k)
    coeffs = {0: -1j * 1j / 2 * a}
    c = -1j * 1j / 4 * (x + 2 * a - 1)
    got = group_bivector("K/T", M, k, fx, fy, 1j, coeffs=coeffs)
    assert abs(got - c * z) < 1e-12
