"""Iwasawa decomposition G = KAN of SL(n, C) via a phase-fixed QR factorization."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import Singular

COND_LIMIT = 1e12


@dataclass
class IwasawaFactors:
    k: np.ndarray      # special unitary
    a: np.ndarray      # positive diagonal, determinant 1
    n: np.ndarray      # upper unitriangular
    scale: complex = 1.0  # g = scale * k a n (scale**n = det g)

    def product(self) -> np.ndarray:
        return self.scale * self.k @ self.a @ self.n

    def round_trip_error(self, g: np.ndarray) -> float:
        return float(np.abs(self.product() - g).max())


def iwasawa(g: np.ndarray) -> IwasawaFactors:
    g = np.asarray(g, dtype=complex)
    size = g.shape[0]
    if np.linalg.cond(g) > COND_LIMIT:
        raise Singular("matrix is singular or too badly conditioned for an Iwasawa factorization")
    scale = np.linalg.det(g) ** (1.0 / size)
    q, r = np.linalg.qr(g / scale)
    d = np.diag(r)
    phase = d / np.abs(d)
    k = q * phase  # q @ diag(phase)
    r = r / phase[:, None]
    diag = r.diagonal().real
    n = r / diag[:, None]
    return IwasawaFactors(k, np.diag(diag).astype(complex), n, scale)


def p_a(g: np.ndarray) -> np.ndarray:
    """The A factor of g = kan."""
    return iwasawa(g).a
