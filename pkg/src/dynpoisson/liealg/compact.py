"""The compact real form k, its conjugation, and real-subspace geometry of g.

g is viewed as a real vector space of dimension 2*dim through the
coordinates (Re v, Im v).  Real subspaces are compared using the positive
definite form  B(x, y) = -Re <x, theta(y)>.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np
import scipy.linalg

from .tensors import Wedge, theta_vec


class CompactForm:
    def __init__(self, L):
        self.L = L

    def X(self, k: int) -> np.ndarray:
        L = self.L
        return L.E(k) - L.E(L.rs.neg(k))

    def Y(self, k: int) -> np.ndarray:
        L = self.L
        return 1j * (L.E(k) + L.E(L.rs.neg(k)))

    def it(self, j: int) -> np.ndarray:
        """i h_j for a simple root j."""
        return 1j * self.L.h_vec(j)

    @cached_property
    def basis(self) -> list[np.ndarray]:
        rs = self.L.rs
        out = [self.it(j) for j in range(rs.rank)]
        for k in rs.positive_set:
            out += [self.X(k), self.Y(k)]
        return out

    def basis_names(self) -> list[str]:
        rs = self.L.rs
        names = [f"ih{j + 1}" for j in range(rs.rank)]
        for k in rs.positive_set:
            tag = ",".join(map(str, rs.roots[k]))
            names += [f"X[{tag}]", f"Y[{tag}]"]
        return names

    def theta(self, v: np.ndarray) -> np.ndarray:
        return theta_vec(self.L, v)

    def tau(self, X1, v: np.ndarray) -> np.ndarray:
        """Ad_{exp(pi i rho_check_X1)} composed with theta."""
        return self.parity_sign(X1) * self.theta(v)

    def parity_sign(self, X1) -> np.ndarray:
        L, rs = self.L, self.L.rs
        sgn = np.ones(L.dim)
        for k in range(len(rs.roots)):
            if rs.coweight_value(k, X1) % 2:
                sgn[L.root_index(k)] = -1.0
        return sgn

    def xy_wedge(self, k: int) -> Wedge:
        """X_alpha ^ Y_alpha = 2i c_alpha**2 e_alpha ^ e_-alpha, exactly."""
        L = self.L
        a, b = L.root_index(k), L.root_index(L.rs.neg(k))
        return Wedge(L, 2, {(a, b): 2j * L.c2(k)})

    def structure_constants(self) -> np.ndarray:
        """Coordinates of [b_p, b_q] on the real basis of k (least squares)."""
        B = np.array(self.basis).T
        Br = np.vstack([B.real, B.imag])
        n = len(self.basis)
        out = np.zeros((n, n, n))
        resid = 0.0
        for p in range(n):
            for q in range(n):
                v = self.L.bracket_vec(self.basis[p], self.basis[q])
                vr = np.concatenate([v.real, v.imag])
                coef, *_ = np.linalg.lstsq(Br, vr, rcond=None)
                resid = max(resid, float(np.abs(Br @ coef - vr).max()))
                out[p, q] = coef
        self.closure_residual = resid
        return out


def compact_form(L) -> CompactForm:
    return CompactForm(L)


class RealGeometry:
    """Euclidean structure on g viewed as a real vector space."""

    def __init__(self, L):
        self.L = L
        n = L.dim
        units = [np.eye(n, dtype=complex)[i] for i in range(n)]
        units += [1j * u for u in units]
        G = np.array([[self.B(x, y) for y in units] for x in units])
        self._chol = np.linalg.cholesky(G).T  # G = R^T R

    def B(self, x: np.ndarray, y: np.ndarray) -> float:
        return float(-(self.L.kform(x, theta_vec(self.L, y))).real)

    def coords(self, vectors) -> np.ndarray:
        """Whitened real coordinates, one column per vector."""
        V = np.array(vectors, dtype=complex).reshape(len(vectors), -1).T
        return self._chol @ np.vstack([V.real, V.imag])

    def orthonormal(self, vectors, tol: float = 1e-10) -> np.ndarray:
        U, s, _ = np.linalg.svd(self.coords(vectors), full_matrices=False)
        return U[:, s > tol * max(1.0, s.max(initial=0.0))]

    def rank(self, vectors, tol: float = 1e-10) -> int:
        return self.orthonormal(vectors, tol).shape[1]

    def projector(self, vectors) -> np.ndarray:
        Q = self.orthonormal(vectors)
        return Q @ Q.T

    def distance(self, V1, V2) -> float:
        """Operator norm of the difference of orthogonal projectors."""
        return float(np.linalg.norm(self.projector(V1) - self.projector(V2), 2))

    def residual(self, v: np.ndarray, vectors) -> float:
        """Distance of v from the real span of vectors."""
        Q = self.orthonormal(vectors)
        w = self.coords([v])[:, 0]
        return float(np.linalg.norm(w - Q @ (Q.T @ w)))

    def intersection_dim(self, V1, V2) -> int:
        return self.rank(V1) + self.rank(V2) - self.rank(list(V1) + list(V2))

    def fixed_space(self, real_map, vectors) -> list[np.ndarray]:
        """Real basis of {v in span(vectors) : real_map(v) = v}."""
        Q = self.orthonormal(vectors)
        n = self.L.dim
        inv = scipy.linalg.solve_triangular(self._chol, np.eye(2 * n))

        def to_vec(w):
            x = inv @ w
            return x[:n] + 1j * x[n:]

        cols = [to_vec(Q[:, i]) for i in range(Q.shape[1])]
        M = np.array([self.coords([real_map(c)])[:, 0] for c in cols]).T - Q
        # solve (Q^T M) a = 0 restricted to the subspace
        _, s, vt = np.linalg.svd(M)
        null = vt[np.sum(s > 1e-10):].T
        return [to_vec(Q @ null[:, i]) for i in range(null.shape[1])]
