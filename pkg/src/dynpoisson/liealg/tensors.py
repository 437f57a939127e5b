"""Sparse tensors and wedges over a Lie algebra, the CYB operator and the
Schouten bracket.

Wedges embed into tensors by
    x_1 ^ ... ^ x_k  ->  sum_sigma sign(sigma) x_sigma(1) (x) ... (x) x_sigma(k)
with no 1/k! factor.  Coefficients may be exact (Fraction) or complex floats.
"""
from __future__ import annotations

from itertools import permutations

import numpy as np

from ..errors import DegreeMismatch


def _perm_sign(p) -> int:
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def _sort_with_sign(idx) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple (sign 0 on repeats)."""
    if len(set(idx)) < len(idx):
        return 0, ()
    order = sorted(range(len(idx)), key=lambda i: idx[i])
    return _perm_sign(order), tuple(idx[i] for i in order)


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v != 0}


class _Sparse:
    def __init__(self, L, degree: int, data=None):
        self.L = L
        self.degree = degree
        self.data = _clean(dict(data or {}))

    def _check(self, other):
        if other.L is not self.L or other.degree != self.degree or type(other) is not type(self):
            raise DegreeMismatch("operands live in different spaces")

    def __add__(self, other):
        self._check(other)
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, 0) + v
        return type(self)(self.L, self.degree, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)(self.L, self.degree, {k: -v for k, v in self.data.items()})

    def __mul__(self, s):
        return type(self)(self.L, self.degree, {k: s * v for k, v in self.data.items()})

    __rmul__ = __mul__

    def norm(self) -> float:
        return max((abs(complex(v)) for v in self.data.values()), default=0.0)

    def __eq__(self, other) -> bool:
        return (type(other) is type(self) and other.L is self.L
                and other.degree == self.degree and (self - other).data == {})

    def __repr__(self) -> str:
        return f"{type(self).__name__}(degree={self.degree}, terms={len(self.data)})"

    def to_json(self) -> list:
        out = []
        for key in sorted(self.data):
            c = complex(self.data[key])
            out.append({"basis": [self.L.name(i) for i in key], "coeff": [c.real, c.imag]})
        return out


class Tensor(_Sparse):
    """Element of the k-fold tensor power of g, keyed by index tuples."""

    def permute(self, perm) -> "Tensor":
        """Move the factor in slot i to slot perm[i]."""
        out = {}
        for key, v in self.data.items():
            new = [0] * self.degree
            for i, p in enumerate(perm):
                new[p] = key[i]
            out[tuple(new)] = v
        return Tensor(self.L, self.degree, out)

    def flip(self) -> "Tensor":
        return self.permute((1, 0))

    def to_dense(self) -> np.ndarray:
        arr = np.zeros((self.L.dim,) * self.degree, dtype=complex)
        for key, v in self.data.items():
            arr[key] = complex(v)
        return arr

    def to_wedge(self) -> "Wedge":
        """Read off wedge coefficients of a skew tensor (no skewness check)."""
        return Wedge(self.L, self.degree,
                     {k: v for k, v in self.data.items() if list(k) == sorted(set(k))})

    def skew_defect(self) -> float:
        return (self - self.to_wedge().to_tensor()).norm()

    def ad(self, x: dict) -> "Tensor":
        """Action of x in g on the tensor: sum over slots."""
        out: dict = {}
        L = self.L
        for key, v in self.data.items():
            for slot in range(self.degree):
                for i, a in x.items():
                    for k, c in L.bracket_basis(i, key[slot]).items():
                        nk = key[:slot] + (k,) + key[slot + 1:]
                        out[nk] = out.get(nk, 0) + a * c * v
        return Tensor(L, self.degree, out)

    @classmethod
    def from_dense(cls, L, arr: np.ndarray, tol: float = 0.0) -> "Tensor":
        data = {tuple(int(i) for i in idx): complex(arr[idx])
                for idx in zip(*np.nonzero(np.abs(arr) > tol))}
        return cls(L, arr.ndim, data)

    @classmethod
    def outer(cls, L, *vectors: dict) -> "Tensor":
        data = {(): 1}
        for vec in vectors:
            data = {k + (i,): a * b for k, a in data.items() for i, b in vec.items()}
        return cls(L, len(vectors), data)


class Wedge(_Sparse):
    """Element of the k-th exterior power, keyed by strictly increasing tuples."""

    def __init__(self, L, degree: int, data=None):
        norm: dict = {}
        for key, v in dict(data or {}).items():
            sign, skey = _sort_with_sign(key)
            if sign:
                norm[skey] = norm.get(skey, 0) + sign * v
        super().__init__(L, degree, norm)

    def to_tensor(self) -> Tensor:
        out = {}
        for key, v in self.data.items():
            for p in permutations(range(self.degree)):
                out[tuple(key[i] for i in p)] = _perm_sign(p) * v
        return Tensor(self.L, self.degree, out)

    @classmethod
    def wedge(cls, L, *vectors: dict) -> "Wedge":
        """x_1 ^ ... ^ x_k for sparse vectors."""
        return cls(L, len(vectors), Tensor.outer(L, *vectors).data)

    def wedge_with(self, other: "Wedge") -> "Wedge":
        data = {}
        for k1, v1 in self.data.items():
            for k2, v2 in other.data.items():
                data[k1 + k2] = data.get(k1 + k2, 0) + v1 * v2
        return Wedge(self.L, self.degree + other.degree, data)

    def theta(self) -> "Wedge":
        return Wedge(self.L, self.degree, _theta_terms(self.L, self.data))

    def real_defect(self) -> float:
        """Distance from the real subspace of the compact form (theta-fixed)."""
        return (self.theta() - self).norm()

    def is_real(self, tol: float = 1e-12) -> bool:
        return self.real_defect() <= tol

    def component(self, keep) -> "Wedge":
        return Wedge(self.L, self.degree, {k: v for k, v in self.data.items() if keep(k)})

    def transverse_to_cartan(self) -> "Wedge":
        """Part with no Cartan factor (the complement of h ^ g ^ ... )."""
        return self.component(lambda k: not any(self.L.is_cartan(i) for i in k))


def _theta_basis(L, i: int):
    """theta(b_i) = sign * b_j (theta(h) = -h, theta(e_a) = -e_-a)."""
    if L.is_cartan(i):
        return -1, i
    return -1, L.root_index(L.rs.neg(L.root_of(i)))


def _theta_terms(L, data: dict) -> dict:
    out = {}
    for key, v in data.items():
        sign, nk = 1, []
        for i in key:
            s, j = _theta_basis(L, i)
            sign *= s
            nk.append(j)
        conj = v.conjugate() if hasattr(v, "conjugate") else v
        out[tuple(nk)] = out.get(tuple(nk), 0) + sign * conj
    return out


def theta_tensor(T: Tensor) -> Tensor:
    return Tensor(T.L, T.degree, _theta_terms(T.L, T.data))


def theta_vec(L, v: np.ndarray) -> np.ndarray:
    """The conjugation of g with respect to the compact form, on coordinates."""
    out = np.zeros_like(v, dtype=complex)
    for i in range(L.dim):
        s, j = _theta_basis(L, i)
        out[j] += s * np.conj(v[i])
    return out


def cyb_tensor(r: Tensor) -> Tensor:
    """CYB(r) = [r12, r13] + [r12, r23] + [r13, r23]."""
    if r.degree != 2:
        raise DegreeMismatch("CYB needs a 2-tensor")
    L = r.L
    out: dict = {}
    items = list(r.data.items())
    for (a, b), c1 in items:
        for (a2, b2), c2 in items:
            cc = c1 * c2
            for k, f in L.bracket_basis(a, a2).items():
                key = (k, b, b2)
                out[key] = out.get(key, 0) + cc * f
            for k, f in L.bracket_basis(b, a2).items():
                key = (a, k, b2)
                out[key] = out.get(key, 0) + cc * f
            for k, f in L.bracket_basis(b, b2).items():
                key = (a, a2, k)
                out[key] = out.get(key, 0) + cc * f
    return Tensor(L, 3, out)


def leg_bracket(r: Tensor, s: Tensor, legs_r, legs_s) -> Tensor:
    """[r^{legs_r}, s^{legs_s}] in the triple tensor power for 2-tensors r, s.

    legs are pairs of slots out of (0, 1, 2); the two pairs share one slot,
    where the bracket is taken.
    """
    L = r.L
    common = set(legs_r) & set(legs_s)
    if len(common) != 1:
        raise ValueError("legs must share exactly one slot")
    out: dict = {}
    for kr, c1 in r.data.items():
        for ks, c2 in s.data.items():
            key = [None, None, None]
            x = y = None
            for slot, i in zip(legs_r, kr):
                if slot in common:
                    x = i
                else:
                    key[slot] = i
            for slot, i in zip(legs_s, ks):
                if slot in common:
                    y = i
                else:
                    key[slot] = i
            (cs,) = common
            for k, f in L.bracket_basis(x, y).items():
                key[cs] = k
                t = tuple(key)
                out[t] = out.get(t, 0) + c1 * c2 * f
    return Tensor(L, 3, out)


def schouten_bracket(A: Wedge, B: Wedge) -> Wedge:
    """Schouten bracket of multivectors on g.

    [x_1^...^x_p, y_1^...^y_q] =
        sum_{i,j} (-1)^{i+j} [x_i, y_j] ^ x_1..^x_i^..x_p ^ y_1..^y_j^..y_q
    """
    if A.L is not B.L:
        raise DegreeMismatch("elements live over different algebras")
    L = A.L
    p, q = A.degree, B.degree
    raw: dict = {}
    for ka, va in A.data.items():
        for kb, vb in B.data.items():
            for i in range(p):
                rest_a = ka[:i] + ka[i + 1:]
                for j in range(q):
                    sign = -1 if (i + j) % 2 else 1
                    rest = rest_a + kb[:j] + kb[j + 1:]
                    for k, f in L.bracket_basis(ka[i], kb[j]).items():
                        key = (k,) + rest
                        raw[key] = raw.get(key, 0) + sign * va * vb * f
    return Wedge(L, p + q - 1, raw)
