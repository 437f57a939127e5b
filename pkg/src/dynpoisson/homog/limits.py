"""Limits of pi_{Y,X1,lambda + t rho_check_{Y-X}} towards pi_{X,X1,lambda}."""
from __future__ import annotations

from itertools import combinations

import numpy as np

from ..errors import BadNesting
from .lagrangian import geometry, lagrangian_subalgebra, subspace_distance
from .pispec import PoissonHomSpec


def shifted_spec(spec: PoissonHomSpec, Y, t: float) -> PoissonHomSpec:
    """The Y-spec at lambda_1 + t rho_check_{Y-X}: gamma(lambda_1) + t on Y-X."""
    rs = spec.L.rs
    Y = rs.check_subset(Y)
    if not spec.X <= Y:
        raise BadNesting("X must be contained in Y")
    vals = [spec.alpha_lambda1(g) + (t if g not in spec.X else 0.0) for g in sorted(Y)]
    return PoissonHomSpec(spec.L, Y, spec.X1, tuple(vals), spec.epsilon)


def bivector_distance(a: PoissonHomSpec, b: PoissonHomSpec) -> float:
    """Max difference of the X_alpha ^ Y_alpha coefficients of pi(e)."""
    ka, kb = a.xy_coefficients, b.xy_coefficients
    return max((abs(ka.get(k, 0) - kb.get(k, 0)) for k in set(ka) | set(kb)), default=0.0)


def limit_distance(spec: PoissonHomSpec, Y, t: float) -> dict:
    far = shifted_spec(spec, Y, t)
    return {
        "t": t,
        "bivector_dist": bivector_distance(far, spec),
        "subspace_dist": subspace_distance(lagrangian_subalgebra(far), lagrangian_subalgebra(spec)),
    }


def plucker_vector(L, vectors) -> np.ndarray:
    """Unit Plucker coordinates of a real subspace in whitened coordinates
    (all maximal minors; intended for sl2, where this is 20-dimensional)."""
    geo = geometry(L)
    Q = geo.orthonormal(vectors)
    k = Q.shape[1]
    return np.array([np.linalg.det(Q[list(rows), :]) for rows in combinations(range(Q.shape[0]), k)])


def plucker_distance(L, V1, V2) -> dict:
    """Projector distance from Plucker vectors: for k-planes with overlap
    <p1, p2>^2 = prod cos^2 theta_i.  Compared with the operator norm of the
    projector difference, which equals sin theta_max."""
    geo = geometry(L)
    p1, p2 = plucker_vector(L, V1), plucker_vector(L, V2)
    overlap = float(p1 @ p2) ** 2
    Q1, Q2 = geo.orthonormal(V1), geo.orthonormal(V2)
    cosines = np.linalg.svd(Q1.T @ Q2, compute_uv=False)
    return {
        "plucker_overlap": overlap,
        "principal_overlap": float(np.prod(cosines ** 2)),
        "projector_dist": geo.distance(V1, V2),
        "sin_max_angle": float(np.sqrt(max(0.0, 1 - cosines.min() ** 2))),
    }
