"""The bivectors pi_{X,X1,lambda}(e) on K/T and their Jacobi obstruction."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
import math

import numpy as np

from ..dynr import omega_12_23, phi_wedge
from ..errors import BadNesting, RegularityViolated
from ..liealg.compact import CompactForm
from ..liealg.tensors import Wedge, schouten_bracket
from ..rootsys import root_span_subset

REGULARITY_TOL = 1e-12


@dataclass
class PoissonHomSpec:
    """Data (X, X1, lambda_1) with lambda = lambda_1 + (i pi/2) rho_check_X1.

    lam1 lists the real numbers gamma(lambda_1) for gamma in sorted(X).
    """

    L: object
    X: frozenset
    X1: frozenset = frozenset()
    lam1: tuple = ()
    epsilon: complex = 1j
    u: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        rs = self.L.rs
        self.X = rs.check_subset(self.X)
        self.X1 = rs.check_subset(self.X1)
        if not self.X1 <= self.X:
            raise BadNesting("X1 must be contained in X")
        if len(self.lam1) != len(self.X):
            raise ValueError(f"need {len(self.X)} values gamma(lambda_1), got {len(self.lam1)}")
        self.lam1 = tuple(float(v) for v in self.lam1)
        self.epsilon = complex(self.epsilon)
        if abs(self.epsilon.real) > 1e-15 or self.epsilon == 0:
            raise ValueError("epsilon must be a nonzero imaginary number")
        if self.u is None:
            self.u = np.zeros((rs.rank, rs.rank))
        for k in self.positive_span:
            if rs.coweight_value(k, self.X1) % 2 == 0 and abs(self.alpha_lambda1(k)) < REGULARITY_TOL:
                raise RegularityViolated(f"alpha(lambda_1) = 0 for the even root {list(rs.roots[k])}")

    @cached_property
    def span(self) -> frozenset[int]:
        return root_span_subset(self.L.rs, self.X)

    @cached_property
    def positive_span(self) -> list[int]:
        return [k for k in self.L.rs.positive_set if k in self.span]

    @cached_property
    def lambda1_h(self) -> np.ndarray:
        """lambda_1 on the basis h_j (it lies in the real span of h_gamma, gamma in X)."""
        rs = self.L.rs
        idx = sorted(self.X)
        out = np.zeros(rs.rank)
        if idx:
            G = np.array([[float(rs.gram[i][j]) for j in idx] for i in idx])
            b = np.linalg.solve(G, np.array(self.lam1))
            out[idx] = b
        return out

    @cached_property
    def rho_check_h(self) -> np.ndarray:
        rs = self.L.rs
        out = np.zeros(rs.rank)
        for g in self.X1:
            out += np.array([float(c) for c in rs.fundamental_coweights[g]])
        return out

    @cached_property
    def lambda_h(self) -> np.ndarray:
        return self.lambda1_h + 1j * math.pi / 2 * self.rho_check_h

    def alpha_lambda1(self, k: int) -> float:
        rs = self.L.rs
        return float(sum(self.lambda1_h[j] * float(rs.ip(k, j)) for j in range(rs.rank)))

    def parity(self, k: int) -> int:
        return self.L.rs.coweight_value(k, self.X1) % 2

    def alpha_lambda(self, k: int) -> complex:
        return self.alpha_lambda1(k) + 1j * math.pi / 2 * self.L.rs.coweight_value(k, self.X1)

    def exp2(self, k: int) -> float:
        """e^{2 alpha(lambda)}, a real number."""
        return (-1.0) ** self.parity(k) * math.exp(2 * self.alpha_lambda1(k))

    @cached_property
    def k_alpha(self) -> dict[int, float]:
        out = {}
        for k in self.positive_span:
            a = 2 * self.alpha_lambda1(k)
            if a > 0:  # 1/(1 - s e^a) = -s e^-a / (1 - s e^-a)
                s = (-1.0) ** self.parity(k)
                out[k] = -s * math.exp(-a) / (1 - s * math.exp(-a))
            else:
                out[k] = 1.0 / (1.0 - self.exp2(k))
        return out

    def coth_e(self, k: int) -> float:
        """(e^{2a}+1)/(e^{2a}-1) on [X], and 1 off [X]; equals 1 - 2 k_alpha."""
        if k in self.k_alpha:
            return 1.0 - 2.0 * self.k_alpha[k]
        return 1.0

    @cached_property
    def xy_coefficients(self) -> dict[int, complex]:
        """Coefficient of X_alpha ^ Y_alpha in pi(e), for alpha in [X] positive."""
        return {k: -1j * self.epsilon / 2 * v for k, v in self.k_alpha.items()}

    @cached_property
    def pi_e(self) -> Wedge:
        cf = CompactForm(self.L)
        out = Wedge(self.L, 2, {})
        for k, c in self.xy_coefficients.items():
            out = out + cf.xy_wedge(k) * c
        return out

    @cached_property
    def phi(self) -> np.ndarray:
        """phi with pi(e) = sum (eps/2 - phi_alpha) E_alpha ^ E_-alpha."""
        rs = self.L.rs
        v = np.zeros(len(rs.roots), dtype=complex)
        for k in rs.positive_set:
            v[k] = self.epsilon / 2 * self.coth_e(k)
            v[rs.neg(k)] = -v[k]
        return v


def build_pi_spec(L, X, X1=frozenset(), lam1=(), epsilon: complex = 1j, u=None) -> PoissonHomSpec:
    return PoissonHomSpec(L, frozenset(X), frozenset(X1), tuple(lam1), epsilon, u)


def jacobi_obstruction(L, phi, eps: complex) -> float:
    """Norm of the part of [A,A] - (eps^2/2)[Omega12, Omega23] not in h ^ g ^ g,
    with A = sum over positive alpha of phi_alpha E_alpha ^ E_-alpha."""
    eps = complex(eps)
    A = phi_wedge(L, phi)
    B = schouten_bracket(A, A) - omega_12_23(L).to_wedge() * (eps * eps / 2)
    return B.transverse_to_cartan().norm()
