"""Complex simple Lie algebras in a Chevalley basis.

Coordinates are taken in the basis
    h_1, ..., h_r, e_alpha (alpha in Sigma)
where h_i = t_{alpha_i} is the Killing dual of the simple root alpha_i and
e_alpha is an integral Chevalley basis: [e_alpha, e_-alpha] is the coroot and
[e_alpha, e_beta] = +-(p+1) e_{alpha+beta}.  All structure constants are
rational.  The unit-normalized root vectors with <E_alpha, E_-alpha> = 1 are
E_alpha = c_alpha e_alpha with c_alpha**2 = <alpha,alpha>/2; they are only
needed through products c_alpha**2 (rational) or numerically.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
import math

import numpy as np

from .. import exact
from ..rootsys import RootSystem


def _chevalley_signs(rs: RootSystem) -> dict[tuple[int, int], int]:
    """Integral structure constants N_{a,b} for all root pairs with a+b a root.

    Signs on extraspecial pairs are +1; everything else follows from the
    standard identities of a Chevalley basis.
    """
    P = rs.n_positive
    length = {k: rs.ip(k, k) for k in range(len(rs.roots))}
    table: dict[tuple[int, int], int] = {}

    def N(a: int, b: int) -> int:
        s = rs.add(a, b)
        if s is None:
            return 0
        if (a, b) in table:
            return table[(a, b)]
        pa, pb = rs.is_positive(a), rs.is_positive(b)
        if pa and pb:
            raise KeyError((a, b))  # positive pairs are filled by height order
        if not pa and not pb:
            val = -N(rs.neg(a), rs.neg(b))
        else:
            c = rs.neg(s)  # a + b + c = 0 and N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
            if rs.is_positive(c) == pb:
                val = Fraction(N(b, c)) * length[c] / length[a]
            else:
                val = Fraction(N(c, a)) * length[c] / length[b]
            assert val.denominator == 1
        table[(a, b)] = int(val)
        return table[(a, b)]

    by_height = sorted(range(P), key=rs.height)
    for xi in by_height:
        pairs = [(a, b) for a in range(P) for b in range(P)
                 if a < b and rs.add(a, b) == xi]
        if not pairs:
            continue
        ex_a = min(a for a, _ in pairs + [(b, a) for a, b in pairs])
        ex_b = rs.index[tuple(x - y for x, y in zip(rs.roots[xi], rs.roots[ex_a]))]
        nab = rs.string_p(ex_a, ex_b) + 1
        table[(ex_a, ex_b)] = nab
        table[(ex_b, ex_a)] = -nab
        for g, d in pairs:
            if {g, d} == {ex_a, ex_b}:
                continue
            # Four-root identity applied to (alpha, beta, -gamma, -delta).
            a, b = ex_a, ex_b
            term = Fraction(0)
            bg = rs.add(b, rs.neg(g))
            if bg is not None:
                term += Fraction(N(b, rs.neg(g)) * N(a, rs.neg(d))) / length[bg]
            ag = rs.add(a, rs.neg(g))
            if ag is not None:
                term += Fraction(N(rs.neg(g), a) * N(b, rs.neg(d))) / length[ag]
            val = length[xi] * term / nab
            assert val.denominator == 1
            table[(g, d)] = int(val)
            table[(d, g)] = -int(val)
    full = {}
    n = len(rs.roots)
    for a in range(n):
        for b in range(n):
            if rs.add(a, b) is not None:
                full[(a, b)] = N(a, b)
    return full


class LieAlgebra:
    """The simple Lie algebra attached to a root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = r = rs.rank
        self.dim = r + len(rs.roots)
        self.chevalley_N = _chevalley_signs(rs)
        self._table = self._build_brackets()

    # -- indexing ------------------------------------------------------------

    def root_index(self, k: int) -> int:
        """Basis index of the root vector e_alpha for root id k."""
        return self.rank + k

    def root_of(self, i: int) -> int | None:
        return i - self.rank if i >= self.rank else None

    def is_cartan(self, i: int) -> bool:
        return i < self.rank

    def name(self, i: int) -> str:
        if i < self.rank:
            return f"h{i + 1}"
        return "e[" + ",".join(map(str, self.rs.roots[i - self.rank])) + "]"

    @cached_property
    def names(self) -> list[str]:
        return [self.name(i) for i in range(self.dim)]

    # -- structure constants -------------------------------------------------

    def coroot(self, k: int) -> dict[int, Fraction]:
        """H_alpha = 2 t_alpha/<alpha,alpha> on the basis h_j."""
        rs = self.rs
        scale = Fraction(2) / rs.ip(k, k)
        return {j: scale * c for j, c in enumerate(rs.roots[k]) if c}

    def h_alpha(self, k: int) -> dict[int, Fraction]:
        """h_alpha = [E_alpha, E_-alpha] = t_alpha on the basis h_j."""
        return {j: Fraction(c) for j, c in enumerate(self.rs.roots[k]) if c}

    def _build_brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        rs, r = self.rs, self.rank
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i in range(r):
            for k in range(len(rs.roots)):
                val = rs.ip(i, k)
                if val:
                    table[(i, r + k)] = {r + k: val}
                    table[(r + k, i)] = {r + k: -val}
        for a in range(len(rs.roots)):
            for b in range(len(rs.roots)):
                if b == rs.neg(a):
                    table[(r + a, r + b)] = self.coroot(a)
                elif (a, b) in self.chevalley_N:
                    table[(r + a, r + b)] = {r + rs.add(a, b): Fraction(self.chevalley_N[(a, b)])}
        return table

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        return self._table.get((i, j), {})

    def bracket(self, x, y) -> dict:
        """Bracket of two sparse vectors {index: coefficient}."""
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.bracket_basis(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v != 0}

    @cached_property
    def structure_tensor(self) -> np.ndarray:
        """Dense f[i, j, k]: coefficient of basis k in [b_i, b_j]."""
        f = np.zeros((self.dim, self.dim, self.dim))
        for (i, j), vec in self._table.items():
            for k, c in vec.items():
                f[i, j, k] = float(c)
        return f

    def bracket_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.structure_tensor)

    def ad_matrix(self, i: int) -> np.ndarray:
        return self.structure_tensor[i].T.copy()

    # -- normalization -------------------------------------------------------

    def c2(self, k: int) -> Fraction:
        """c_alpha**2 = <alpha,alpha>/2 with E_alpha = c_alpha e_alpha."""
        return self.rs.ip(k, k) / 2

    def c(self, k: int) -> float:
        return math.sqrt(self.c2(k))

    def N(self, a: int, b: int) -> float:
        """Structure constant in the unit-normalized basis: [E_a, E_b] = N E_{a+b}."""
        s = self.rs.add(a, b)
        if s is None:
            return 0.0
        return self.chevalley_N[(a, b)] * self.c(a) * self.c(b) / self.c(s)

    def E(self, k: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[self.root_index(k)] = self.c(k)
        return v

    def h_vec(self, k: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        for j, c in self.h_alpha(k).items():
            v[j] = float(c)
        return v

    def cartan_vec(self, coeffs) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[: self.rank] = coeffs
        return v

    # -- Killing form and Casimir --------------------------------------------

    @cached_property
    def killing(self) -> list[list[Fraction]]:
        """Killing form predicted from root data."""
        n, r, rs = self.dim, self.rank, self.rs
        K = [[Fraction(0)] * n for _ in range(n)]
        for i in range(r):
            for j in range(r):
                K[i][j] = rs.gram[i][j]
        for k in range(len(rs.roots)):
            K[r + k][r + rs.neg(k)] = 2 / rs.ip(k, k)
        return K

    def killing_adjoint(self, i: int, j: int) -> Fraction:
        """trace(ad b_i ad b_j) from the structure constants."""
        total = Fraction(0)
        for m in range(self.dim):
            for l, c1 in self.bracket_basis(j, m).items():
                c2 = self.bracket_basis(i, l).get(m)
                if c2:
                    total += c1 * c2
        return total

    @cached_property
    def killing_np(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.killing])

    def kform(self, x: np.ndarray, y: np.ndarray) -> complex:
        return x @ self.killing_np @ y

    @cached_property
    def casimir(self) -> dict[tuple[int, int], Fraction]:
        """Omega as {(i, j): coefficient} of b_i (x) b_j."""
        r, rs = self.rank, self.rs
        ginv = exact.inverse(rs.gram)
        om = {}
        for i in range(r):
            for j in range(r):
                if ginv[i][j]:
                    om[(i, j)] = ginv[i][j]
        for k in range(len(rs.roots)):
            om[(r + k, r + rs.neg(k))] = self.c2(k)
        return om

    @cached_property
    def gram_inverse(self) -> list[list[Fraction]]:
        return exact.inverse(self.rs.gram)


def build_chevalley(rs: RootSystem) -> LieAlgebra:
    return LieAlgebra(rs)
