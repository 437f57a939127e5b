"""Dynamical r-matrices of the form

    r(lambda) = (eps/2) Omega + sum C_ij h_i (x) h_j + sum_alpha phi_alpha(lambda) E_alpha (x) E_-alpha

and verification of the classical dynamical Yang-Baxter equation.

A point lambda of h* is given by the complex numbers <alpha_i, lambda> on the
reference simple roots.  Derivatives are taken along the dual basis of the
Cartan basis h_j = t_{alpha_j}, so that d<alpha, lambda> along direction j is
the j-th simple-root coordinate of alpha.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from functools import lru_cache
import math

import numpy as np

from .errors import NotClassifiable, PoleAt
from .liealg.tensors import Tensor, Wedge, cyb_tensor, leg_bracket, schouten_bracket
from .rootsys import WeylGroup, root_span_subset, word_to_perm

POLE_TOL = 1e-12
RESIDUAL_TOL = 1e-9


def coth(u: complex) -> complex:
    """coth with exp(-2|Re u|) arithmetic, safe for large |Re u|."""
    u = complex(u)
    s = 1.0 if u.real >= 0 else -1.0
    q = cmath.exp(-2 * s * u)
    return s * (1 + q) / (1 - q)


def pole_distance(u: complex) -> float:
    """Distance from u to the lattice pi*i*Z of coth poles."""
    m = round(u.imag / math.pi)
    return abs(u - 1j * math.pi * m)


@dataclass(frozen=True)
class EvaluationPoint:
    """lambda in h* through its values <alpha_i, lambda> on simple roots."""

    values: tuple

    def pair(self, coords) -> complex:
        return complex(sum(c * v for c, v in zip(coords, self.values)))

    def __sub__(self, other: "EvaluationPoint") -> "EvaluationPoint":
        return EvaluationPoint(tuple(complex(a) - complex(b) for a, b in zip(self.values, other.values)))


@dataclass(frozen=True)
class RMatrixSpec:
    """Data (eps, w Sigma_+, X, mu, C) of a dynamical r-matrix.

    X holds indices i of the simple roots w(alpha_i) of the positive system
    w(Sigma_+).
    """

    L: object
    epsilon: complex
    X: frozenset = frozenset()
    twist: tuple = ()
    mu: EvaluationPoint | None = None
    C: np.ndarray | None = field(default=None, compare=False)
    word: tuple = ()

    def __post_init__(self):
        rs = self.L.rs
        object.__setattr__(self, "X", rs.check_subset(self.X))
        if not self.twist:
            object.__setattr__(self, "twist", word_to_perm(rs, self.word))
        if self.mu is None:
            object.__setattr__(self, "mu", EvaluationPoint((0,) * rs.rank))
        C = np.zeros((rs.rank, rs.rank), dtype=complex) if self.C is None else np.asarray(self.C, dtype=complex)
        if C.shape != (rs.rank, rs.rank) or np.abs(C + C.T).max(initial=0) > 1e-14:
            raise ValueError("C must be an antisymmetric rank x rank matrix")
        object.__setattr__(self, "C", C)
        if self.epsilon == 0:
            raise ValueError("coupling constant must be nonzero")

    @property
    def positive(self) -> frozenset[int]:
        return frozenset(self.twist[k] for k in self.L.rs.positive_set)

    @property
    def span(self) -> frozenset[int]:
        return frozenset(self.twist[k] for k in root_span_subset(self.L.rs, self.X))


@dataclass
class PhiFunction:
    """phi on all roots, indexed by root id; dphi[k, j] is the derivative of
    phi_k along the j-th dual direction."""

    values: np.ndarray
    dphi: np.ndarray | None = None
    spec: RMatrixSpec | None = None
    point: EvaluationPoint | None = None

    def __getitem__(self, k: int) -> complex:
        return self.values[k]

    def odd_defect(self, rs) -> float:
        return max((abs(self.values[k] + self.values[rs.neg(k)]) for k in rs.positive_set), default=0.0)

    def act(self, w) -> "PhiFunction":
        """(w.phi)_alpha = phi_{w alpha}."""
        return PhiFunction(np.array([self.values[w[k]] for k in range(len(w))]))


def build_phi(spec: RMatrixSpec, lam: EvaluationPoint, pole_tol: float = POLE_TOL) -> PhiFunction:
    L, eps = spec.L, complex(spec.epsilon)
    rs = L.rs
    diff = lam - spec.mu
    vals = np.zeros(len(rs.roots), dtype=complex)
    d = np.zeros((len(rs.roots), rs.rank), dtype=complex)
    span, pos = spec.span, spec.positive
    for k, root in enumerate(rs.roots):
        if k in span:
            u = eps / 2 * diff.pair(root)
            if pole_distance(u) < pole_tol:
                raise PoleAt(root)
            ct = coth(u)
            vals[k] = eps / 2 * ct
            d[k] = eps / 2 * (1 - ct * ct) * eps / 2 * np.array(root)
        else:
            vals[k] = eps / 2 if k in pos else -eps / 2
    return PhiFunction(vals, d, spec, lam)


def triples(rs):
    """All ordered (a, b, c) of root ids with a + b + c = 0."""
    for a in range(len(rs.roots)):
        for b in range(len(rs.roots)):
            s = rs.add(a, b)
            if s is not None:
                yield a, b, rs.neg(s)


def check_phi_condition(phi, eps: complex, rs) -> float:
    v = phi.values if isinstance(phi, PhiFunction) else np.asarray(phi)
    e2 = complex(eps) ** 2 / 4
    return max((abs(v[a] * v[b] + v[b] * v[c] + v[c] * v[a] + e2) for a, b, c in triples(rs)),
               default=0.0)


@lru_cache(maxsize=None)
def omega_tensor(L) -> Tensor:
    return Tensor(L, 2, L.casimir)


@lru_cache(maxsize=None)
def omega_12_23(L) -> Tensor:
    om = omega_tensor(L)
    return leg_bracket(om, om, (0, 1), (1, 2))


def phi_wedge(L, values, positive=None) -> Wedge:
    """sum over positive alpha of phi_alpha E_alpha ^ E_-alpha."""
    rs = L.rs
    pos = rs.positive_set if positive is None else positive
    data = {}
    for k in pos:
        data[(L.root_index(k), L.root_index(rs.neg(k)))] = values[k] * L.c2(k)
    return Wedge(L, 2, data)


@dataclass
class RValue:
    r: Tensor
    A: Wedge
    phi: PhiFunction
    dA: list  # Wedge per dual direction j


def r_from_phi(L, eps: complex, phi: PhiFunction, C: np.ndarray) -> RValue:
    rs = L.rs
    cpart = {(i, j): C[i, j] for i in range(rs.rank) for j in range(i + 1, rs.rank) if C[i, j] != 0}
    A = phi_wedge(L, phi.values) + Wedge(L, 2, cpart)
    r = omega_tensor(L) * (complex(eps) / 2) + A.to_tensor()
    dA = []
    if phi.dphi is not None:
        for j in range(rs.rank):
            dA.append(phi_wedge(L, phi.dphi[:, j]))
    return RValue(r, A, phi, dA)


def eval_r(spec: RMatrixSpec, lam: EvaluationPoint) -> RValue:
    return r_from_phi(spec.L, spec.epsilon, build_phi(spec, lam), spec.C)


def alt_d(L, dA: list) -> Wedge:
    """Alt(dA) = sum_j h_j ^ dA/d lambda^j."""
    out = Wedge(L, 3, {})
    for j, w in enumerate(dA):
        out = out + Wedge(L, 1, {(j,): 1}).wedge_with(w)
    return out


def residuals(L, eps: complex, rv: RValue) -> dict:
    eps = complex(eps)
    r = rv.r
    zero_weight = max(r.ad({j: 1}).norm() for j in range(L.rank))
    unitarity = (r + r.flip() - omega_tensor(L) * eps).norm()
    alt = alt_d(L, rv.dA)
    cdybe_t = alt.to_tensor() + cyb_tensor(r)
    AA = schouten_bracket(rv.A, rv.A).to_tensor()
    mod_t = AA - omega_12_23(L) * (eps * eps / 2) + alt.to_tensor() * 2
    return {
        "zero_weight": zero_weight,
        "unitarity": unitarity,
        "cdybe": cdybe_t.norm(),
        "modified_cdybe": mod_t.norm(),
        "equivalence_gap": (mod_t - cdybe_t * 2).norm(),
    }


def verify_dynamical_r(spec: RMatrixSpec, lam: EvaluationPoint, phi_shift: dict | None = None) -> dict:
    """Residual norms (max absolute coefficient in the Chevalley basis).

    phi_shift maps positive root ids to additive perturbations of phi
    (applied oddly), for negative controls.
    """
    phi = build_phi(spec, lam)
    if phi_shift:
        rs = spec.L.rs
        vals = phi.values.copy()
        for k, dv in phi_shift.items():
            vals[k] += dv
            vals[rs.neg(k)] -= dv
        phi = PhiFunction(vals, phi.dphi, spec, lam)
    rv = r_from_phi(spec.L, spec.epsilon, phi, spec.C)
    return residuals(spec.L, spec.epsilon, rv)


def arccoth(v: complex) -> complex:
    return 0.5 * cmath.log((v + 1) / (v - 1))


@dataclass
class Classification:
    twist: tuple
    word: tuple
    positive: frozenset
    X: frozenset
    h: np.ndarray  # coefficients on h_j
    reconstruction_residual: float


def classify_phi(L, phi, eps: complex, tol: float = RESIDUAL_TOL, W: WeylGroup | None = None) -> Classification:
    """Recover (w Sigma_+, X', h) with phi_gamma = (eps/2) coth gamma(h) on X'."""
    rs = L.rs
    eps = complex(eps)
    vals = phi.values if isinstance(phi, PhiFunction) else np.asarray(phi, dtype=complex)
    if check_phi_condition(vals, eps, rs) > tol:
        raise NotClassifiable("phi violates the quadratic condition")
    W = W or WeylGroup(rs)
    Y = {k for k in range(len(rs.roots)) if abs(vals[k] - eps / 2) <= tol}
    w = next((w for w in W.elements if all(rs.is_positive(W.inv(w)[k]) for k in Y)), None)
    if w is None:
        raise NotClassifiable("no positive system contains the eps/2 roots")
    Xp = frozenset(i for i in range(rs.rank) if w[i] not in Y)
    idx = sorted(Xp)
    h = np.zeros(rs.rank, dtype=complex)
    if idx:
        u = np.array([arccoth(2 * vals[w[i]] / eps) for i in idx])
        # gamma_i(sum_b b_m t_{gamma_m}) = sum_m b_m <gamma_i, gamma_m>, W-invariant Gram
        G = np.array([[float(rs.gram[i][m]) for m in idx] for i in idx])
        b = np.linalg.solve(G, u)
        for bm, i in zip(b, idx):
            h += bm * np.array(rs.roots[w[i]], dtype=float)
    spec = RMatrixSpec(L, eps, X=Xp, twist=w)
    lam = EvaluationPoint(tuple(2 / eps * sum(h[j] * float(rs.gram[i][j]) for j in range(rs.rank))
                                for i in range(rs.rank)))
    rebuilt = build_phi(spec, lam)
    resid = float(np.abs(rebuilt.values - vals).max())
    return Classification(w, W.word(w), spec.positive, Xp, h, resid)
