"""Group-level Poisson brackets on K = SU(n), K/T and the dressing pairing on AN.

A bivector is a list of terms (c, x, y) meaning c x ^ y with x, y matrices in
k, paired with 1-forms by <x ^ y, df ^ dg> = df(x) dg(y) - df(y) dg(x).
Derivatives of a function f at k are d/dt f(exp(tx) k) (right-invariant
direction, written f^R_x) and d/dt f(k exp(tx)) (left-invariant, f^L_x).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..errors import ChartSingularity
from ..homog.pispec import PoissonHomSpec
from .model import MatrixModel

FD_STEP = 1e-5


class MatrixFunction:
    """A function on matrices with a directional derivative deriv(M, D)."""

    def value(self, M: np.ndarray):
        raise NotImplementedError

    def deriv(self, M: np.ndarray, D: np.ndarray):
        raise NotImplementedError

    def __call__(self, M):
        return self.value(M)


@dataclass
class Entry(MatrixFunction):
    i: int
    j: int
    conj: bool = False

    def value(self, M):
        v = M[self.i, self.j]
        return np.conj(v) if self.conj else v

    def deriv(self, M, D):
        v = D[self.i, self.j]
        return np.conj(v) if self.conj else v


@dataclass
class AdjointCoordinate(MatrixFunction):
    """Re or Im of the (i, j) entry of k D k^* (a T-invariant function when D is diagonal)."""

    D: np.ndarray
    i: int
    j: int
    part: str = "im"

    def _take(self, v):
        return v.imag if self.part == "im" else v.real

    def value(self, M):
        return self._take((M @ self.D @ M.conj().T)[self.i, self.j])

    def deriv(self, M, D):
        dM = D @ self.D @ M.conj().T + M @ self.D @ D.conj().T
        return self._take(dM[self.i, self.j])


@dataclass
class Linear(MatrixFunction):
    """f(M) = Re tr(B^* M) / Re tr(B^* B); dual to B on an orthogonal basis."""

    B: np.ndarray

    def value(self, M):
        return np.real(np.trace(self.B.conj().T @ M)) / np.real(np.trace(self.B.conj().T @ self.B))

    def deriv(self, M, D):
        return self.value(D)


@dataclass
class Numeric(MatrixFunction):
    """Arbitrary function on the group; derivative along the curve M exp(t M^-1 D)
    by central differences."""

    fn: object
    step: float = FD_STEP

    def value(self, M):
        return self.fn(M)

    def deriv(self, M, D):
        xi = np.linalg.solve(M, D)
        h = self.step
        return (self.fn(M @ scipy.linalg.expm(h * xi)) - self.fn(M @ scipy.linalg.expm(-h * xi))) / (2 * h)


def s2_functions(model: MatrixModel) -> tuple:
    """x = Im M11, y = Re M12, z = Im M12 of M = Ad_k diag(i, -i) on SU(2)/S^1."""
    D = np.diag([1j, -1j])
    return (AdjointCoordinate(D, 0, 0, "im"), AdjointCoordinate(D, 0, 1, "re"),
            AdjointCoordinate(D, 0, 1, "im"))


def s2_point(k: np.ndarray) -> np.ndarray:
    M = k @ np.diag([1j, -1j]) @ k.conj().T
    return np.array([M[0, 0].imag, M[0, 1].real, M[0, 1].imag])


# bivectors at the identity

def k_lambda(model: MatrixModel, epsilon: complex, u=None, positive=None) -> list:
    """Lambda = u - (i eps/2) sum X_a ^ Y_a / 2 as bivector terms."""
    rs = model.L.rs
    terms = []
    for k in (rs.positive_set if positive is None else positive):
        terms.append((-1j * epsilon / 4, model.X(k), model.Y(k)))
    if u is not None:
        r = rs.rank
        for i in range(r):
            for j in range(i + 1, r):
                if u[i][j]:
                    terms.append((u[i][j], 1j * model.h(i), 1j * model.h(j)))
    return terms


def xy_terms(model: MatrixModel, coeffs: dict) -> list:
    return [(c, model.X(k), model.Y(k)) for k, c in coeffs.items()]


def pair(terms: list, df, dg) -> complex:
    """<sum c x ^ y, df ^ dg> with df, dg callables on matrices."""
    return sum(c * (df(x) * dg(y) - df(y) * dg(x)) for c, x, y in terms)


def k_bracket(terms: list, k: np.ndarray, f: MatrixFunction, g: MatrixFunction) -> complex:
    """(R_k Lambda - L_k Lambda)(df, dg)."""
    right = pair(terms, lambda x: f.deriv(k, x @ k), lambda x: g.deriv(k, x @ k))
    left = pair(terms, lambda x: f.deriv(k, k @ x), lambda x: g.deriv(k, k @ x))
    return right - left


def left_bracket(terms: list, k: np.ndarray, f: MatrixFunction, g: MatrixFunction) -> complex:
    """(L_k B)(df, dg) for a bivector B at the identity."""
    return pair(terms, lambda x: f.deriv(k, k @ x), lambda x: g.deriv(k, k @ x))


def quotient_bracket(model: MatrixModel, epsilon: complex, coeffs: dict, k: np.ndarray,
                     f: MatrixFunction, g: MatrixFunction, u=None) -> complex:
    """p_* pi_K + (sum coeffs X ^ Y)^L on K/T, for T-invariant f, g."""
    return (k_bracket(k_lambda(model, epsilon, u), k, f, g)
            + left_bracket(xy_terms(model, coeffs), k, f, g))


def p_k(M: np.ndarray) -> np.ndarray:
    """Projection g -> k along a + n (upper triangular with real diagonal)."""
    low = np.tril(M, -1)
    return low - low.conj().T + 1j * np.diag(np.diag(M).imag)


def an_pairing(model: MatrixModel, a: np.ndarray, x: np.ndarray, y: np.ndarray, epsilon: complex) -> complex:
    """pi_AN(x^l, y^l)(a) = (2i/eps) Im <Ad_a x, p_k Ad_a y>."""
    ai = np.linalg.inv(a)
    ax, ay = a @ x @ ai, a @ y @ ai
    return 2j / epsilon * model.kform(ax, p_k(ay)).imag


def group_bivector(side: str, model: MatrixModel, point: np.ndarray, f, g, epsilon: complex = 1j,
                   spec: PoissonHomSpec | None = None, coeffs: dict | None = None, u=None) -> complex:
    """{f, g} at a point of K, K/T, or the dressing pairing of x = f, y = g at a in A."""
    if side == "K":
        model.check_su(point)
        return k_bracket(k_lambda(model, epsilon, u), point, f, g)
    if side == "AN":
        model.check_a(point)
        return an_pairing(model, point, f, g, epsilon)
    if side == "K/T":
        model.check_su(point)
        if coeffs is None:
            coeffs = spec.xy_coefficients if spec is not None else {}
        if spec is not None:
            epsilon, u = spec.epsilon, spec.u if u is None else u
        return quotient_bracket(model, epsilon, coeffs, point, f, g, u)
    raise ValueError(f"unknown side {side!r}")


# coordinate tables

def _monomials(P: np.ndarray) -> np.ndarray:
    x, y, z = P.T
    one = np.ones_like(x)
    return np.stack([one, x, y, z, x * x, y * y, x * y, y * z, z * x], axis=1)


# a basis of quadratic polynomials restricted to the sphere (z*z = 1 - x*x - y*y)
MONOMIALS = ("1", "x", "y", "z", "xx", "yy", "xy", "yz", "zx")


def s2_family_coeffs(model: MatrixModel, epsilon: complex, a: float) -> dict:
    """pi^a = pi_inf - (i eps/2) a pi_0."""
    return {model.L.rs.positive_set[0]: -1j * epsilon / 2 * a}


def s2_bracket_samples(model: MatrixModel, epsilon: complex, a: float, ks) -> tuple[np.ndarray, np.ndarray]:
    fx, fy, fz = s2_functions(model)
    coeffs = s2_family_coeffs(model, epsilon, a)
    P, B = [], []
    for k in ks:
        P.append(s2_point(k))
        B.append([quotient_bracket(model, epsilon, coeffs, k, f, g)
                  for f, g in ((fx, fy), (fy, fz), (fz, fx))])
    return np.array(P), np.array(B)


def coordinate_bracket_table(model: MatrixModel, epsilon: complex = 1j, a: float | None = None,
                             spec: PoissonHomSpec | None = None, samples: int = 60, seed: int = 0) -> dict:
    """Fitted quadratic polynomials for {x,y}, {y,z}, {z,x} on S^2 (family pi^a),
    or the X_a ^ Y_a coefficients of pi(e) for a spec."""
    if spec is not None:
        return xy_table(model, spec)
    rng = np.random.default_rng(seed)
    ks = [model.random_su(rng) for _ in range(samples)]
    P, B = s2_bracket_samples(model, epsilon, a, ks)
    V = _monomials(P)
    c = -1j * epsilon / 4
    x, y, z = P.T
    predicted = np.stack([c * (x + 2 * a - 1) * z, c * (x + 2 * a - 1) * x, c * (x + 2 * a - 1) * y], axis=1)
    table, fit_res = {}, 0.0
    for col, name in enumerate(("{x,y}", "{y,z}", "{z,x}")):
        coef, *_ = np.linalg.lstsq(V, B[:, col], rcond=None)
        fit_res = max(fit_res, float(np.abs(V @ coef - B[:, col]).max()))
        table[name] = {m: complex(v) for m, v in zip(MONOMIALS, coef) if abs(v) > 1e-9}
    return {"a": a, "table": table, "fit_residual": fit_res,
            "pattern_residual": float(np.abs(B - predicted).max())}


def xy_table(model: MatrixModel, spec: PoissonHomSpec) -> dict:
    """Coefficients of X_a ^ Y_a in pi(e), read off by pairing with dual linear functions."""
    e = np.eye(model.n, dtype=complex)
    out = {}
    for k in model.L.rs.positive_set:
        f, g = Linear(model.X(k)), Linear(model.Y(k))
        out[k] = group_bivector("K/T", model, e, f, g, spec=spec)
    return out


def pfaffian_function(model: MatrixModel, epsilon: complex, coeffs: dict, k: np.ndarray) -> complex:
    """F with {x,y} = F z and cyclic on S^2: F = {x,y} z + {y,z} x + {z,x} y."""
    fx, fy, fz = s2_functions(model)
    x, y, z = s2_point(k)
    b = [quotient_bracket(model, epsilon, coeffs, k, f, g) for f, g in ((fx, fy), (fy, fz), (fz, fx))]
    return b[0] * z + b[1] * x + b[2] * y


def leaf_census(model: MatrixModel, epsilon: complex, a: float, grid: int = 1000, rel_tol: float = 1e-2) -> dict:
    """Scan |F| over S^2 points; zero-rank points are where F = 0.  The structure
    counts as symplectic when min |F| stays above rel_tol * max |F| on the grid."""
    pts = fibonacci_sphere(grid)
    coeffs = s2_family_coeffs(model, epsilon, a)
    vals = np.array([abs(pfaffian_function(model, epsilon, coeffs, s2_section(p))) for p in pts])
    return {"a": a, "min_abs_pfaffian": float(vals.min()), "max_abs_pfaffian": float(vals.max()),
            "symplectic": bool(vals.min() > rel_tol * vals.max()),
            "zero_circle_x": float(1 - 2 * a),
            "max_abs_on_circle": circle_max(model, epsilon, a)}


def circle_max(model: MatrixModel, epsilon: complex, a: float, samples: int = 24) -> float | None:
    """max |F| on the circle x = 1 - 2a (None if it misses the sphere)."""
    x0 = 1 - 2 * a
    if abs(x0) >= 1:
        return None
    coeffs = s2_family_coeffs(model, epsilon, a)
    r = np.sqrt(1 - x0 * x0)
    vals = [abs(pfaffian_function(model, epsilon, coeffs,
                                  s2_section(np.array([x0, r * np.cos(t), r * np.sin(t)]))))
            for t in np.linspace(0, 2 * np.pi, samples, endpoint=False)]
    return float(max(vals))


def fibonacci_sphere(count: int) -> np.ndarray:
    """Nearly uniform points on S^2 with x = 1 - (2i + 1)/count."""
    i = np.arange(count)
    x = 1 - (2 * i + 1) / count
    r = np.sqrt(1 - x * x)
    phi = i * np.pi * (3 - np.sqrt(5))
    return np.stack([x, r * np.cos(phi), r * np.sin(phi)], axis=1)


def s2_section(p) -> np.ndarray:
    """k in SU(2) with Ad_k diag(i, -i) = p, choosing u real and positive."""
    x, y, z = p
    if 1 + x < 1e-10:
        raise ChartSingularity("the section u > 0 is singular at x = -1")
    u = np.sqrt((1 + x) / 2)
    v = 1j * (y + 1j * z) / (2 * u)
    return np.array([[u, v], [-np.conj(v), u]], dtype=complex)


# Poisson map property of m_1 : K x K_X/T -> K/T

def m1_defect(spec: PoissonHomSpec, model: MatrixModel, k: np.ndarray, k1: np.ndarray, fs) -> float:
    """Max over pairs of |{f o m1, g o m1}_product - {f, g}(k k1 T)|."""
    eps = spec.epsilon
    lam = k_lambda(model, eps)
    lam1 = k_lambda(model, eps, positive=spec.positive_span)
    A = xy_terms(model, spec.xy_coefficients)
    kk = k @ k1
    worst = 0.0
    for i, f in enumerate(fs):
        for g in fs[i + 1:]:
            # first factor: (R_k Lambda - L_k Lambda), direction D -> D k1 at kk
            right = pair(lam, lambda x: f.deriv(kk, x @ kk), lambda x: g.deriv(kk, x @ kk))
            left = pair(lam, lambda x: f.deriv(kk, k @ x @ k1), lambda x: g.deriv(kk, k @ x @ k1))
            # second factor on K_X/T: R_{k1} Lambda_1 - L_{k1} Lambda_1 + L_{k1} pi(e)
            r1 = pair(lam1, lambda x: f.deriv(kk, k @ x @ k1), lambda x: g.deriv(kk, k @ x @ k1))
            l1 = pair(lam1, lambda x: f.deriv(kk, kk @ x), lambda x: g.deriv(kk, kk @ x))
            la = pair(A, lambda x: f.deriv(kk, kk @ x), lambda x: g.deriv(kk, kk @ x))
            product = right - left + r1 - l1 + la
            direct = quotient_bracket(model, eps, spec.xy_coefficients, kk, f, g)
            worst = max(worst, abs(product - direct))
    return worst


def random_kx(model: MatrixModel, spec: PoissonHomSpec, rng) -> np.ndarray:
    """exp of a random element of k_X = t + span{X_a, Y_a : a in [X]}."""
    x = sum(rng.normal() * 1j * model.h(j) for j in range(model.n - 1))
    for k in spec.positive_span:
        x = x + rng.normal() * model.X(k) + rng.normal() * model.Y(k)
    return scipy.linalg.expm(x)


def t_invariant_functions(model: MatrixModel, seed: int = 7) -> list:
    """Re and Im parts of entries of Ad_k D for a regular diagonal D in t."""
    rng = np.random.default_rng(seed)
    d = rng.normal(size=model.n)
    D = 1j * np.diag(d - d.mean())
    out = []
    for i in range(model.n):
        out.append(AdjointCoordinate(D, i, i, "im"))
        for j in range(i + 1, model.n):
            out += [AdjointCoordinate(D, i, j, "re"), AdjointCoordinate(D, i, j, "im")]
    return out
