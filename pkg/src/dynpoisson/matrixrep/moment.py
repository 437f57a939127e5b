"""Moment maps for the T-action on symplectic leaves of pi_{X,0,lambda} on K/T."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import IrregularLambda, OffCell
from ..homog.pispec import build_pi_spec
from .bivector import Numeric, quotient_bracket, s2_functions, t_invariant_functions
from .iwasawa import iwasawa
from .model import MatrixModel

# {H_x, f} = HAMILTONIAN_SIGN * sigma_x(f) for the moment maps below, where
# sigma_x(f)(kT) = d/dt f(exp(tx) kT).  Pinned by the SU(2) dressing case.
HAMILTONIAN_SIGN = -1.0
CELL_TOL = 1e-12


@dataclass
class MomentValue:
    """Pairings of a t*-valued moment with the basis i h_j, and with a chosen x."""

    pairings: list
    value: float | None = None
    normalization: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"pairings": list(map(float, self.pairings)), "value": self.value,
                "normalization": self.normalization}


def _pair(model: MatrixModel, H: np.ndarray, x: np.ndarray, epsilon: complex) -> float:
    """(2i/eps) Im <H, x>, real for imaginary eps."""
    return float((2j / epsilon * model.kform(H, x).imag).real)


def log_diag(a: np.ndarray) -> np.ndarray:
    return np.diag(np.log(np.diag(a).real)).astype(complex)


def _moment(model: MatrixModel, H: np.ndarray, x, epsilon: complex, **norm) -> MomentValue:
    basis = [1j * model.h(j) for j in range(model.n - 1)]
    value = None if x is None else _pair(model, H, x, epsilon)
    return MomentValue([_pair(model, H, b, epsilon) for b in basis], value, norm)


# Bruhat cells

def bruhat_log_a(model: MatrixModel, word, n_elem: np.ndarray) -> np.ndarray:
    """Ad_{w-dot} log a_w(n) with a_w(n) = P_A(n w-dot)."""
    wd = model.weyl_rep(word)
    la = log_diag(iwasawa(n_elem @ wd).a)
    return wd @ la @ np.linalg.inv(wd)


def su2_cell_coordinate(k: np.ndarray) -> complex:
    """z with kT = j_w([[1, z], [0, 1]]) on the big cell of SU(2)/T."""
    if abs(k[0, 1]) < CELL_TOL:
        raise OffCell("kT is the base point, outside the cell of s_alpha")
    return complex(-k[0, 0] / np.conj(k[0, 1]))


def su2_cell_point(z: complex) -> np.ndarray:
    """The K factor of [[1, z], [0, 1]] w-dot."""
    return iwasawa(np.array([[1, z], [0, 1]], dtype=complex) @ np.array([[0, 1], [-1, 0]], dtype=complex)).k


def bruhat_moment(model: MatrixModel, word, x=None, epsilon: complex = 1j,
                   n_elem: np.ndarray | None = None, k: np.ndarray | None = None) -> MomentValue:
    """<phi_w, x>(kT) = (2i/eps) Im <Ad_w log a_w(j_w^-1(kT)), x>.

    The cell point is given either by n in N_w or, on SU(2), by k.
    """
    if n_elem is None:
        if model.n != 2 or tuple(word) != (0,):
            raise OffCell("cell coordinates from k are only implemented for the big cell of SU(2)")
        z = su2_cell_coordinate(k)
        n_elem = np.array([[1, z], [0, 1]], dtype=complex)
    H = bruhat_log_a(model, word, n_elem)
    return _moment(model, H, x, epsilon, base_point="phi_w(w) = 0")


# dressing orbits

def check_regular(model: MatrixModel, lam: np.ndarray, tol: float = 1e-12) -> None:
    rs = model.L.rs
    for k in rs.positive_set:
        if abs(model.alpha_value(k, lam)) < tol:
            raise IrregularLambda(f"alpha(lambda) = 0 for the root {list(rs.roots[k])}")


def dressing_log_a(model: MatrixModel, lam: np.ndarray, k: np.ndarray) -> np.ndarray:
    """log P_A(k e^{-lambda} k^-1)."""
    e = np.diag(np.exp(-np.diag(lam)))
    return log_diag(iwasawa(k @ e @ k.conj().T).a)


def dressing_moment(model: MatrixModel, lam_values, k: np.ndarray, x=None, epsilon: complex = 1j) -> MomentValue:
    """<Phi_lambda, x>(kT) = (2i/eps) Im <log P_A(k e^{-lambda} k^-1), x>."""
    lam = model.cartan_from_values(np.real(lam_values))
    check_regular(model, lam)
    return _moment(model, dressing_log_a(model, lam, k), x, epsilon)


def limit_check(model: MatrixModel, lam_values, t: float, word, k=None, n_elem=None, x=None,
                epsilon: complex = 1j) -> MomentValue:
    """Phi_{lambda + t rho_check}(kT) - Phi_{lambda + t rho_check}(w) - phi_w(kT)."""
    if n_elem is None:
        z = su2_cell_coordinate(k)
        n_elem = np.array([[1, z], [0, 1]], dtype=complex)
    wd = model.weyl_rep(word)
    kk = iwasawa(n_elem @ wd).k
    vals = np.real(lam_values) + t
    lam = model.cartan_from_values(vals)
    check_regular(model, lam)
    H = dressing_log_a(model, lam, kk) - dressing_log_a(model, lam, wd) - bruhat_log_a(model, word, n_elem)
    return _moment(model, H, x, epsilon, t=t)


def moment_map_eval(kind: str, model: MatrixModel, x=None, epsilon: complex = 1j, **kw) -> MomentValue:
    if kind == "bruhat":
        return bruhat_moment(model, kw["word"], x, epsilon, kw.get("n_elem"), kw.get("k"))
    if kind == "dressing":
        return dressing_moment(model, kw["lam"], kw["k"], x, epsilon)
    if kind == "limit":
        return limit_check(model, kw["lam"], kw["t"], kw["word"], kw.get("k"), kw.get("n_elem"), x, epsilon)
    raise ValueError(f"unknown moment kind {kind!r}")


# Hamiltonian consistency: {<Phi, x>, f} = sign * sigma_x f

def hamiltonian_defects(model: MatrixModel, kind: str, k: np.ndarray, x: np.ndarray,
                        epsilon: complex = 1j, lam=None) -> dict:
    """|{H, f} - s sigma_x(f)| over coordinate functions f, for both signs s."""
    if kind == "dressing":
        lam = np.real(lam)
        spec = build_pi_spec(model.L, range(model.n - 1), (), lam, epsilon)
        coeffs = spec.xy_coefficients
        H = Numeric(lambda m: dressing_moment(model, lam, m, x, epsilon).value)
    elif kind == "bruhat":
        coeffs = {}
        H = Numeric(lambda m: bruhat_moment(model, (0,), x, epsilon, k=m).value)
    else:
        raise ValueError(f"unknown moment kind {kind!r}")
    fs = s2_functions(model) if model.n == 2 else t_invariant_functions(model)
    out = {1.0: 0.0, -1.0: 0.0}
    for f in fs:
        br = quotient_bracket(model, epsilon, coeffs, k, H, f)
        sigma = f.deriv(k, x @ k)
        for s in out:
            out[s] = max(out[s], abs(br - s * sigma))
    return out


def hamiltonian_consistency(model: MatrixModel, kind: str, k: np.ndarray, x: np.ndarray,
                            epsilon: complex = 1j, lam=None) -> float:
    return hamiltonian_defects(model, kind, k, x, epsilon, lam)[HAMILTONIAN_SIGN]
