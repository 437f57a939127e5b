"""Numerical modular vector fields of the family pi^a on S^2 = SU(2)/T.

On S^2 every bivector is F times the bivector dual to the round area form mu,
and {x, y} = F z cyclically.  With pi = F pi_mu the modular field with respect
to mu is the pi_mu-Hamiltonian field of F, v = grad F x p.
"""
from __future__ import annotations

import numpy as np

from ..errors import ChartSingularity
from .bivector import fibonacci_sphere, pfaffian_function, s2_family_coeffs, s2_section
from .model import MatrixModel

STEP = 1e-5
DIV_STEP = 1e-4
POLE_MARGIN = 1e-3


def _F(model: MatrixModel, epsilon: complex, coeffs: dict, q: np.ndarray) -> complex:
    p = q / np.linalg.norm(q)
    return pfaffian_function(model, epsilon, coeffs, s2_section(p))


def modular_field(model: MatrixModel, epsilon: complex, a: float, p: np.ndarray, h: float = STEP) -> np.ndarray:
    """v_mu at p by central differences of F (extended homogeneously off the sphere)."""
    coeffs = s2_family_coeffs(model, epsilon, a)
    grad = np.zeros(3, dtype=complex)
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        grad[i] = (_F(model, epsilon, coeffs, p + e) - _F(model, epsilon, coeffs, p - e)) / (2 * h)
    return np.cross(grad, p)


def torus_generator(model: MatrixModel, p: np.ndarray) -> np.ndarray:
    """sigma_{iH_rho}(p) = d/dt Ad_{exp(t i H_rho)} p in (x, y, z) coordinates."""
    x, y, z = p
    M = np.array([[1j * x, y + 1j * z], [-y + 1j * z, -1j * x]])
    x_mat = 1j * model.h_rho
    dM = x_mat @ M - M @ x_mat
    return np.array([dM[0, 0].imag, dM[0, 1].real, dM[0, 1].imag])


def divergence(model: MatrixModel, epsilon: complex, a: float, p: np.ndarray, h: float = DIV_STEP) -> complex:
    """Divergence on S^2 of v (the radial-invariant extension has the same divergence)."""
    total = 0j
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        vp = modular_field(model, epsilon, a, (p + e) / np.linalg.norm(p + e))
        vm = modular_field(model, epsilon, a, (p - e) / np.linalg.norm(p - e))
        total += (vp[i] - vm[i]) / (2 * h)
    return total


def s2_grid(count: int = 200) -> np.ndarray:
    pts = fibonacci_sphere(count)
    return pts[1 + pts[:, 0] > POLE_MARGIN]


def modular_field_numeric(model: MatrixModel, a: float, grid=None, epsilon: complex = 1j,
                          reference_a: float = 0.0, with_divergence: bool = False) -> dict:
    grid = s2_grid() if grid is None else np.asarray(grid, dtype=float)
    if np.any(1 + grid[:, 0] <= POLE_MARGIN):
        raise ChartSingularity("grid point too close to the chart pole x = -1")
    samples, indep, match, div = [], 0.0, 0.0, 0.0
    for p in grid:
        v = modular_field(model, epsilon, a, p)
        v0 = modular_field(model, epsilon, reference_a, p)
        expected = -1j * epsilon * torus_generator(model, p)
        samples.append(v)
        indep = max(indep, float(np.abs(v - v0).max()))
        match = max(match, float(np.abs(v0 - expected).max()))
        if with_divergence:
            div = max(div, abs(divergence(model, epsilon, a, p)))
    out = {"a": a, "points": len(grid), "independence_defect": indep, "match_defect": match,
           "samples": np.array(samples)}
    if with_divergence:
        out["divergence"] = div
    return out
