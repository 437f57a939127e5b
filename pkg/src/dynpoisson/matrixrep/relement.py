"""The element R of g ^ g built from the decomposition g = k + (a + n)."""
from __future__ import annotations

import numpy as np

from .model import MatrixModel


def eps_pairing(model: MatrixModel, x: np.ndarray, y: np.ndarray, epsilon: complex) -> float:
    """<x, y>_eps = (2i/eps) Im <x, y>."""
    return float((2j / epsilon * model.kform(x, y).imag).real)


def orthonormal_a(model: MatrixModel) -> list[np.ndarray]:
    """Real traceless diagonal matrices, orthonormal for the Killing form."""
    n = model.n
    vecs = []
    for j in range(n - 1):
        d = np.zeros(n)
        d[: j + 1] = 1.0
        d[j + 1] = -(j + 1)
        vecs.append(d)
    return [np.diag(d / np.sqrt(model.kform(np.diag(d), np.diag(d)).real)).astype(complex) for d in vecs]


def r_element(model: MatrixModel, epsilon: complex = 1j) -> list:
    """Terms (c, x, y) of R = -(eps/2i)(sum (i h_j) ^ h_j + sum (-X_a ^ iE_a + Y_a ^ E_a))."""
    c = -epsilon / 2j
    terms = [(c, 1j * h, h) for h in orthonormal_a(model)]
    for k in model.L.rs.positive_set:
        E = model.E(k)
        terms += [(-c, model.X(k), 1j * E), (c, model.Y(k), E)]
    return terms


def pair_wedges(model: MatrixModel, terms: list, u: tuple, v: tuple, epsilon: complex) -> complex:
    """<R, u ^ v> with <a ^ b, c ^ d> = <a,c><b,d> - <a,d><b,c> in <,>_eps."""
    p = lambda x, y: eps_pairing(model, x, y, epsilon)  # noqa: E731
    (x, y) = u, v
    return sum(c * (p(a, x) * p(b, y) - p(a, y) * p(b, x)) for c, a, b in terms)


def random_k(model: MatrixModel, rng) -> np.ndarray:
    z = rng.normal(size=(model.n, model.n)) + 1j * rng.normal(size=(model.n, model.n))
    m = z - z.conj().T
    return m - np.trace(m) / model.n * np.eye(model.n)


def random_an(model: MatrixModel, rng) -> np.ndarray:
    d = rng.normal(size=model.n)
    up = np.triu(rng.normal(size=(model.n, model.n)) + 1j * rng.normal(size=(model.n, model.n)), 1)
    return np.diag(d - d.mean()).astype(complex) + up


def r_pairing_defect(model: MatrixModel, epsilon: complex = 1j, samples: int = 20, seed: int = 0) -> float:
    """max |<R, (x1+y1) ^ (x2+y2)> - (<x1,y2> - <x2,y1>)| over random x_i in k, y_i in a + n."""
    rng = np.random.default_rng(seed)
    R = r_element(model, epsilon)
    worst = 0.0
    for _ in range(samples):
        x1, x2 = random_k(model, rng), random_k(model, rng)
        y1, y2 = random_an(model, rng), random_an(model, rng)
        lhs = pair_wedges(model, R, x1 + y1, x2 + y2, epsilon)
        rhs = eps_pairing(model, x1, y2, epsilon) - eps_pairing(model, x2, y1, epsilon)
        worst = max(worst, abs(lhs - rhs))
    return worst
