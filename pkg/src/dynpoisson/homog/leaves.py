"""Symplectic leaves of pi_{X,0,lambda} and ranks at Weyl points."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import UnsupportedX1
from ..rootsys import WeylGroup, coset_decomposition, root_span_subset
from .pispec import PoissonHomSpec


@dataclass
class Leaf:
    rep: tuple
    cells: list
    dim: int
    open_dense: bool


@dataclass
class LeafAtlas:
    X: frozenset
    leaves: list
    W: WeylGroup

    def to_json(self) -> dict:
        name = self.W.word_name
        return {"leaves": [{"rep": name(l.rep), "cells": [name(c) for c in l.cells],
                            "dim": l.dim, "open_dense": l.open_dense} for l in self.leaves]}


def enumerate_leaves(spec_or_L, X=None, W: WeylGroup | None = None) -> LeafAtlas:
    """One leaf per w1 in W^X, made of the cells w1 w2 for w2 in W_X."""
    if isinstance(spec_or_L, PoissonHomSpec):
        if spec_or_L.X1:
            raise UnsupportedX1("leaves are classified only for X1 empty")
        L, X = spec_or_L.L, spec_or_L.X
    else:
        L = spec_or_L
    rs = L.rs
    X = rs.check_subset(X or ())
    W = W or WeylGroup(rs)
    dec = coset_decomposition(W, X)
    extra = 2 * sum(1 for k in root_span_subset(rs, X) if rs.is_positive(k))
    leaves = []
    for w1 in dec.W__X:
        cells = [W.mul(w1, w2) for w2 in dec.W_X]
        leaves.append(Leaf(w1, cells, 2 * W.length(w1) + extra, w1 == dec.longest_rep))
    return LeafAtlas(X, leaves, W)


def weyl_point_coefficients(spec: PoissonHomSpec, w) -> dict:
    """X_alpha ^ Y_alpha coefficients of l_{w^-1} pi(wT) on k/t."""
    rs = spec.L.rs
    c = -1j * spec.epsilon / 4
    out = {}
    for k in rs.positive_set:
        s = -1.0 if not rs.is_positive(w[k]) else 1.0
        out[k] = c * (s - spec.coth_e(k))
    return out


def rank_at_weyl_point(spec: PoissonHomSpec, w, tol: float = 1e-10) -> int:
    rs = spec.L.rs
    coeffs = weyl_point_coefficients(spec, w)
    n = 2 * len(rs.positive_set)
    M = np.zeros((n, n), dtype=complex)
    for i, k in enumerate(rs.positive_set):
        M[2 * i, 2 * i + 1] = coeffs[k]
        M[2 * i + 1, 2 * i] = -coeffs[k]
    return int(np.linalg.matrix_rank(M, tol=tol))
