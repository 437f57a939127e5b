"""The defining representation of sl(n) and the matrix groups SU(n), A, N."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

import numpy as np
import scipy.linalg

from ..errors import OffManifold, UnsupportedType
from ..liealg.compact import CompactForm

MANIFOLD_TOL = 1e-10


def _frac_zeros(n: int) -> np.ndarray:
    return np.array([[Fraction(0)] * n for _ in range(n)], dtype=object)


class MatrixModel:
    """rho: g -> sl(n) on the Chevalley basis, with <x, y> = 2n tr(xy)."""

    def __init__(self, L):
        rs = L.rs
        if rs.family != "A" or rs.rank > 3:
            raise UnsupportedType(f"matrix model needs type A_(n-1) with n <= 4, got {rs.designator}")
        self.L = L
        self.n = n = rs.rank + 1
        self.killing_scale = 2 * n
        images = {}
        for j in range(rs.rank):
            h = _frac_zeros(n)
            h[j, j] = Fraction(1, 2 * n)
            h[j + 1, j + 1] = Fraction(-1, 2 * n)
            images[j] = h
        for k in range(len(rs.roots)):
            i, j = self.root_entry(k)
            if abs(i - j) == 1:
                m = _frac_zeros(n)
                m[i, j] = Fraction(1)
                images[L.root_index(k)] = m
        # higher roots from [e_a, e_b] = N_ab e_{a+b} with a simple
        for k in sorted(range(len(rs.roots)), key=lambda k: abs(rs.height(k))):
            if L.root_index(k) in images:
                continue
            for a in range(len(rs.roots)):
                rest = tuple(x - y for x, y in zip(rs.roots[k], rs.roots[a]))
                if abs(rs.height(a)) == 1 and rs.is_positive(a) == rs.is_positive(k) and rest in rs.index:
                    b = rs.index[rest]
                    x, y = images[L.root_index(a)], images[L.root_index(b)]
                    images[L.root_index(k)] = (x.dot(y) - y.dot(x)) / L.chevalley_N[(a, b)]
                    break
        self.exact_images = [images[i] for i in range(L.dim)]
        self.images = [np.array(m, dtype=complex) for m in self.exact_images]
        self._stack = np.array([m.reshape(-1) for m in self.images]).T

    def root_entry(self, k: int) -> tuple[int, int]:
        """(i, j) with alpha_k = eps_i - eps_j."""
        c = self.L.rs.roots[k]
        nz = [m for m, v in enumerate(c) if v != 0]
        lo, hi = nz[0], nz[-1] + 1
        return (lo, hi) if c[lo] > 0 else (hi, lo)

    def matrix(self, v) -> np.ndarray:
        """Image of a coordinate vector (numpy array or sparse dict)."""
        if isinstance(v, dict):
            return sum((complex(c) * self.images[i] for i, c in v.items()), np.zeros((self.n, self.n), complex))
        return np.tensordot(np.asarray(v, dtype=complex), np.array(self.images), axes=1)

    def coords(self, M: np.ndarray) -> np.ndarray:
        """Chevalley coordinates of a traceless matrix."""
        sol, *_ = np.linalg.lstsq(self._stack, np.asarray(M, dtype=complex).reshape(-1), rcond=None)
        return sol

    def kform(self, x: np.ndarray, y: np.ndarray) -> complex:
        return complex(self.killing_scale * np.trace(x @ y))

    def homomorphism_residual(self) -> Fraction:
        """Max |[rho x, rho y] - rho [x, y]| over basis pairs, exactly."""
        L = self.L
        worst = Fraction(0)
        for i in range(L.dim):
            for j in range(L.dim):
                x, y = self.exact_images[i], self.exact_images[j]
                d = x.dot(y) - y.dot(x)
                for k, c in L.bracket_basis(i, j).items():
                    d = d - self.exact_images[k] * c
                worst = max([worst] + [abs(v) for v in d.reshape(-1)])
        return worst

    def killing_residual(self) -> Fraction:
        L = self.L
        K = L.killing
        worst = Fraction(0)
        for i in range(L.dim):
            for j in range(L.dim):
                t = sum(self.exact_images[i].dot(self.exact_images[j]).diagonal())
                worst = max(worst, abs(self.killing_scale * t - K[i][j]))
        return worst

    # compact form and Cartan pieces

    @cached_property
    def compact_basis(self) -> list[np.ndarray]:
        return [self.matrix(v) for v in CompactForm(self.L).basis]

    def X(self, k: int) -> np.ndarray:
        return self.matrix(CompactForm(self.L).X(k))

    def Y(self, k: int) -> np.ndarray:
        return self.matrix(CompactForm(self.L).Y(k))

    def E(self, k: int) -> np.ndarray:
        return self.matrix(self.L.E(k))

    def h(self, j: int) -> np.ndarray:
        return self.images[j]

    def cartan_from_values(self, values) -> np.ndarray:
        """Diagonal H with alpha_i(H) = values[i] on simple roots."""
        n = self.n
        d = np.zeros(n, dtype=complex)
        for i, v in enumerate(values):  # d_i - d_{i+1} = v_i, sum d = 0
            d[i + 1] = d[i] - v
        return np.diag(d - d.mean())

    def alpha_value(self, k: int, H: np.ndarray) -> complex:
        i, j = self.root_entry(k)
        return complex(H[i, i] - H[j, j])

    @cached_property
    def h_rho(self) -> np.ndarray:
        """H_rho, the Killing dual of half the sum of positive roots."""
        rs = self.L.rs
        out = np.zeros((self.n, self.n), dtype=complex)
        for k in rs.positive_set:
            for j, c in enumerate(rs.roots[k]):
                out += c / 2 * self.images[j]
        return out

    def rho_check(self) -> np.ndarray:
        """Sum of fundamental coweights: alpha_i(rho_check) = 1."""
        return self.cartan_from_values([1.0] * (self.n - 1))

    def weyl_rep(self, word) -> np.ndarray:
        """Representative in SU(n) of a Weyl word: prod exp((pi/2)(e_i - e_-i)), a signed permutation."""
        g = np.eye(self.n, dtype=complex)
        for i in word:
            x = self.images[self.L.root_index(i)] - self.images[self.L.root_index(self.L.rs.neg(i))]
            g = g @ scipy.linalg.expm(np.pi / 2 * x)
        return g

    # group membership

    def check_su(self, k: np.ndarray, tol: float = MANIFOLD_TOL) -> None:
        k = np.asarray(k, dtype=complex)
        if k.shape != (self.n, self.n):
            raise OffManifold("wrong matrix size")
        err = max(np.abs(k.conj().T @ k - np.eye(self.n)).max(), abs(np.linalg.det(k) - 1))
        if err > tol:
            raise OffManifold(f"point is off SU({self.n}) by {err:.3g}")

    def check_a(self, a: np.ndarray, tol: float = MANIFOLD_TOL) -> None:
        a = np.asarray(a, dtype=complex)
        off = np.abs(a - np.diag(np.diag(a))).max()
        d = np.diag(a)
        if off > tol or np.abs(d.imag).max() > tol or d.real.min() <= 0 or abs(np.prod(d.real) - 1) > tol:
            raise OffManifold("point is not in A (positive diagonal, unit determinant)")

    def random_su(self, rng) -> np.ndarray:
        z = rng.normal(size=(self.n, self.n)) + 1j * rng.normal(size=(self.n, self.n))
        return project_su(z)

    def random_sl(self, rng) -> np.ndarray:
        z = rng.normal(size=(self.n, self.n)) + 1j * rng.normal(size=(self.n, self.n))
        return z / np.linalg.det(z) ** (1.0 / self.n)


def project_su(M: np.ndarray) -> np.ndarray:
    """Nearest unitary (polar factor), rescaled to determinant 1."""
    U, _, Vh = np.linalg.svd(np.asarray(M, dtype=complex))
    k = U @ Vh
    return k / np.linalg.det(k) ** (1.0 / k.shape[0])


def fundamental_rep(L) -> MatrixModel:
    return MatrixModel(L)
