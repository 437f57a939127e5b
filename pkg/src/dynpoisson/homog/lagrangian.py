"""Lagrangian subalgebras of g attached to pi_{X,X1,lambda}, and Karolinsky triples."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
import cmath

import numpy as np

from ..liealg.compact import CompactForm, RealGeometry
from ..rootsys import root_span_subset
from .pispec import PoissonHomSpec


@lru_cache(maxsize=None)
def geometry(L) -> RealGeometry:
    return RealGeometry(L)


@dataclass
class LagrangianSubalgebra:
    """Real subspace of g spanned by complex coordinate vectors."""

    L: object
    basis: list
    spec: PoissonHomSpec | None = None

    @cached_property
    def geometry(self) -> RealGeometry:
        return geometry(self.L)

    def to_json(self) -> dict:
        return {"basis": [[[c.real, c.imag] for c in v] for v in self.basis]}


def lagrangian_subalgebra(spec: PoissonHomSpec) -> LagrangianSubalgebra:
    """t, E_b and iE_b for b in Sigma_+ minus [X], and
    g X_a + E_a, g Y_a + iE_a with g = 1/(e^{2a(lambda)} - 1) for a in [X]."""
    L = spec.L
    rs = L.rs
    cf = CompactForm(L)
    basis = [cf.it(j) for j in range(rs.rank)]
    for k in rs.positive_set:
        E = L.E(k)
        if k in spec.k_alpha:
            g = -spec.k_alpha[k]  # 1/(q - 1)
            basis += [g * cf.X(k) + E, g * cf.Y(k) + 1j * E]
        else:
            basis += [E, 1j * E]
    return LagrangianSubalgebra(L, basis, spec)


def conjugated_lagrangian(spec: PoissonHomSpec) -> LagrangianSubalgebra:
    """Ad_{e^lambda}(m_X^tau + n_X) built from the fixed points of tau_{X,X1}."""
    L = spec.L
    rs = L.rs
    geo = geometry(L)
    cf = CompactForm(L)
    span = root_span_subset(rs, spec.X)
    unit = np.eye(L.dim, dtype=complex)
    m = [unit[j] for j in range(rs.rank)] + [unit[L.root_index(k)] for k in sorted(span)]
    m = m + [1j * v for v in m]
    fixed = geo.fixed_space(lambda v: cf.tau(spec.X1, v), m)
    n = []
    for k in rs.positive_set:
        if k not in span:
            n += [unit[L.root_index(k)], 1j * unit[L.root_index(k)]]
    scale = np.ones(L.dim, dtype=complex)
    for k in range(len(rs.roots)):
        scale[L.root_index(k)] = cmath.exp(spec.alpha_lambda(k))
    return LagrangianSubalgebra(L, [scale * v for v in fixed + n], spec)


def verify_lagrangian(l: LagrangianSubalgebra) -> dict:
    L, geo = l.L, l.geometry
    dim = geo.rank(l.basis)
    iso = max((abs(L.kform(x, y).imag) for x in l.basis for y in l.basis), default=0.0)
    closure = 0.0
    for i, x in enumerate(l.basis):
        for y in l.basis[i + 1:]:
            closure = max(closure, geo.residual(L.bracket_vec(x, y), l.basis))
    return {"dim": dim, "expected_dim": L.dim, "dim_ok": dim == L.dim,
            "isotropy": float(iso), "closure": float(closure)}


def compact_intersection_dim(l: LagrangianSubalgebra) -> int:
    """Real dimension of l intersected with the compact form k."""
    return l.geometry.intersection_dim(l.basis, CompactForm(l.L).basis)


def subspace_distance(l1: LagrangianSubalgebra, l2: LagrangianSubalgebra) -> float:
    return l1.geometry.distance(l1.basis, l2.basis)


@dataclass
class KarolinskyTriple:
    L: object
    X: frozenset
    p: list  # basis indices of p_X (complex span)
    p_opp: list
    m: list
    eta: dict  # basis index -> eigenvalue of eta on m_X

    @property
    def fixed_dim(self) -> int:
        return sum(1 for v in self.eta.values() if abs(v - 1) < 1e-12)

    def to_json(self) -> dict:
        L = self.L
        return {"p": [L.name(i) for i in self.p], "p_opp": [L.name(i) for i in self.p_opp],
                "m": [L.name(i) for i in self.m],
                "eta": {L.name(i): [complex(v).real, complex(v).imag] for i, v in self.eta.items()}}


def karolinsky_triple(L, X, lam, epsilon: complex) -> KarolinskyTriple:
    """(p'_X, p_X, eta) with eta = Ad_{exp(eps h_lambda)} on m_X.

    lam gives the values <alpha_i, lambda> on simple roots.
    """
    rs = L.rs
    X = rs.check_subset(X)
    span = root_span_subset(rs, X)
    vals = lam.values if hasattr(lam, "values") else tuple(lam)
    cartan = list(range(rs.rank))
    p = cartan + [L.root_index(k) for k in range(len(rs.roots)) if k in span or rs.is_positive(k)]
    p_opp = cartan + [L.root_index(k) for k in range(len(rs.roots)) if k in span or not rs.is_positive(k)]
    m = cartan + [L.root_index(k) for k in sorted(span)]
    eta = {j: 1.0 + 0j for j in cartan}
    for k in sorted(span):
        ev = sum(c * complex(v) for c, v in zip(rs.roots[k], vals))
        eta[L.root_index(k)] = cmath.exp(complex(epsilon) * ev)
    return KarolinskyTriple(L, X, sorted(p), sorted(p_opp), m, eta)


def triple_lagrangian(t: KarolinskyTriple) -> np.ndarray:
    """Complex basis (rows) of {(x', x) in p' + p : eta(x'_m) = x_m} inside g + g."""
    L = t.L
    n = L.dim
    unit = np.eye(n, dtype=complex)
    rows = []
    for i in t.m:
        rows.append(np.concatenate([unit[i], t.eta[i] * unit[i]]))
    for i in t.p_opp:
        if i not in t.m:
            rows.append(np.concatenate([unit[i], np.zeros(n)]))
    for i in t.p:
        if i not in t.m:
            rows.append(np.concatenate([np.zeros(n), unit[i]]))
    return np.array(rows)


def phi_lagrangian(L, phi, epsilon: complex) -> np.ndarray:
    """Complex basis of the diagonal Cartan (h, h) plus
    ((phi_a - eps/2) E_a, (phi_a + eps/2) E_a) for every root a, in g + g."""
    n = L.dim
    eps = complex(epsilon)
    unit = np.eye(n, dtype=complex)
    rows = [np.concatenate([unit[j], unit[j]]) for j in range(L.rank)]
    for k in range(len(L.rs.roots)):
        i = L.root_index(k)
        rows.append(np.concatenate([(phi[k] - eps / 2) * unit[i], (phi[k] + eps / 2) * unit[i]]))
    return np.array(rows)


def complex_subspace_gap(A: np.ndarray, B: np.ndarray) -> float:
    """Projector distance between complex row spans."""
    def proj(M):
        U, s, _ = np.linalg.svd(M.T, full_matrices=False)
        U = U[:, s > 1e-10 * s.max()]
        return U @ U.conj().T
    return float(np.linalg.norm(proj(A) - proj(B), 2))
