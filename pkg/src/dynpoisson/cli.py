"""Command-line frontend: JSON reports, exit 0 on pass, 1 on failure or domain error, 2 on usage error."""
from __future__ import annotations

import argparse
from datetime import datetime, timezone
import json
import os
import sys

import numpy as np

from . import __version__
from .errors import DynPoissonError, UnsupportedX1
from .liealg import build_chevalley
from .report import jsonable
from .rootsys import WeylGroup, build_root_system, parse_designator

DEFAULT_TOL = 1e-9
NUMERIC_TOL = 1e-5  # for quantities obtained by finite differences
TOL_ENV = "DYNPOISSON_TOL"


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    t = str(text).strip().replace(" ", "").lower()
    if t.endswith("i"):
        t = t[:-1] + "j"
        if t in ("j", "+j", "-j"):
            t = t.replace("j", "1j")
    try:
        return complex(t)
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def parse_list(text: str | None, conv=float) -> list:
    if text is None or not text.strip():
        return []
    try:
        return [conv(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"cannot parse list {text!r}") from None


def load_algebra(designator: str):
    try:
        return build_chevalley(build_root_system(*parse_designator(designator)))
    except DynPoissonError as e:
        raise UsageError(f"{e.kind}: {e}") from None


def names(rs, text: str | None) -> list[int]:
    """Simple roots in the order listed, e.g. "a2,a1" -> [1, 0]."""
    out = []
    for nm in parse_list(text, str):
        try:
            (i,) = rs.parse_simple([nm])
        except DynPoissonError as e:
            raise UsageError(f"{e.kind}: {e}") from None
        if i not in out:
            out.append(i)
    return out


def lam1_in_sorted_order(X: list[int], values: list[float]) -> list[float]:
    if len(values) != len(X):
        raise UsageError(f"--lambda needs {len(X)} values (one per root of X), got {len(values)}")
    given = dict(zip(X, values))
    return [given[g] for g in sorted(X)]


def check_imaginary(eps: complex) -> complex:
    if eps == 0 or abs(eps.real) > 1e-15:
        raise UsageError("--epsilon must be a nonzero imaginary number here (e.g. 1i)")
    return eps


# subcommands: each returns (passed, result)

def cmd_algebra(args, tol):
    L = load_algebra(args.algebra)
    rs = L.rs
    W = WeylGroup(rs)
    return True, {
        "designator": rs.designator, "rank": rs.rank, "dim": L.dim,
        "simple_roots": [rs.simple_name(i) for i in range(rs.rank)],
        "cartan_matrix": rs.cartan_matrix, "killing_gram": rs.gram,
        "positive_roots": [list(rs.roots[k]) for k in rs.positive_set],
        "weyl_order": len(W), "basis": L.names,
        "killing_check": max(abs(L.killing_adjoint(i, j) - L.killing[i][j])
                             for i in range(L.dim) for j in range(L.dim)) == 0,
    }


def _rmatrix_spec(args):
    from .dynr import EvaluationPoint, RMatrixSpec
    L = load_algebra(args.algebra)
    rs = L.rs
    X = names(rs, args.X)
    lam = parse_list(args.lam, parse_complex)
    if len(lam) != rs.rank:
        raise UsageError(f"--lambda needs {rs.rank} values <alpha_i, lambda>, got {len(lam)}")
    eps = parse_complex(args.epsilon)
    if eps == 0:
        raise UsageError("--epsilon must be nonzero")
    word = [i - 1 for i in parse_list(args.twist, int)]
    if any(not 0 <= i < rs.rank for i in word):
        raise UsageError("--twist entries must be simple reflection numbers 1..rank")
    spec = RMatrixSpec(L, eps, X=frozenset(X), word=tuple(word))
    return spec, EvaluationPoint(tuple(lam))


def cmd_rmatrix(args, tol):
    from .dynr import eval_r
    spec, lam = _rmatrix_spec(args)
    rv = eval_r(spec, lam)
    L = spec.L
    terms = {f"{L.name(i)}*{L.name(j)}": c for (i, j), c in sorted(rv.r.data.items()) if abs(c) > 0}
    return True, {"phi": {L.name(L.root_index(k)): v for k, v in enumerate(rv.phi.values)},
                  "r": terms}


def cmd_cdybe(args, tol):
    from .dynr import verify_dynamical_r
    spec, lam = _rmatrix_spec(args)
    res = verify_dynamical_r(spec, lam)
    checked = ("zero_weight", "unitarity", "cdybe", "modified_cdybe")
    return all(res[k] <= tol for k in checked), {"residuals": res}


def _pi_spec(args):
    from .homog import build_pi_spec
    L = load_algebra(args.algebra)
    rs = L.rs
    X = names(rs, args.X)
    X1 = names(rs, args.X1)
    lam1 = lam1_in_sorted_order(X, parse_list(args.lam))
    eps = check_imaginary(parse_complex(args.epsilon))
    return build_pi_spec(L, X, X1, lam1, eps)


def _xy(spec) -> dict:
    L = spec.L
    return {L.name(L.root_index(k)): v for k, v in spec.xy_coefficients.items()}


def cmd_poisson(args, tol):
    from .homog import jacobi_obstruction
    spec = _pi_spec(args)
    L = spec.L
    jac = jacobi_obstruction(L, spec.phi, spec.epsilon)
    return jac <= tol, {
        "k_alpha": {L.name(L.root_index(k)): v for k, v in spec.k_alpha.items()},
        "xy_coefficients": _xy(spec),
        "phi": {L.name(L.root_index(k)): v for k, v in enumerate(spec.phi)},
        "jacobi_obstruction": jac,
    }


def cmd_lagrangian(args, tol):
    from .homog import (compact_intersection_dim, conjugated_lagrangian, lagrangian_subalgebra,
                        subspace_distance, verify_lagrangian)
    spec = _pi_spec(args)
    l = lagrangian_subalgebra(spec)
    v = verify_lagrangian(l)
    d = subspace_distance(l, conjugated_lagrangian(spec))
    meet = compact_intersection_dim(l)
    ok = v["dim_ok"] and max(v["isotropy"], v["closure"], d) <= tol and meet == spec.L.rank
    return ok, {"basis": l.to_json()["basis"], "checks": v, "compact_intersection_dim": meet,
                "conjugated_distance": d}


def cmd_leaves(args, tol):
    from .homog import enumerate_leaves
    L = load_algebra(args.algebra)
    X = names(L.rs, args.X)
    if names(L.rs, args.X1):
        raise UnsupportedX1("leaves are classified only for X1 empty")
    atlas = enumerate_leaves(L, X)
    return True, atlas.to_json()


def cmd_limits(args, tol):
    from .homog import limit_distance
    spec = _pi_spec(args)
    Y = names(spec.L.rs, args.Y)
    sweep = [limit_distance(spec, Y, t) for t in parse_list(args.t)]
    ok = all(a[k] > b[k] for a, b in zip(sweep, sweep[1:]) for k in ("bivector_dist", "subspace_dist"))
    return ok, {"Y": [spec.L.rs.simple_name(i) for i in Y], "sweep": sweep}


def cmd_moment(args, tol):
    from .matrixrep import MatrixModel, hamiltonian_defects, moment_map_eval
    from .matrixrep.moment import HAMILTONIAN_SIGN, su2_cell_point
    L = load_algebra(args.algebra)
    M = MatrixModel(L)
    eps = check_imaginary(parse_complex(args.epsilon))
    x = eps * M.h_rho
    rng = np.random.default_rng(args.seed)
    k = su2_cell_point(parse_complex(args.z)) if args.z is not None else M.random_su(rng)
    kw = {"k": k}
    if args.kind in ("bruhat", "limit"):
        if M.n != 2:
            raise UsageError("Bruhat and limit moment maps are available on A1 only")
        kw["word"] = (0,)
    lam = parse_list(args.lam)
    if args.kind in ("dressing", "limit"):
        if len(lam) != L.rank:
            raise UsageError(f"--lambda needs {L.rank} values alpha_i(lambda)")
        kw["lam"] = lam
    if args.kind == "limit":
        kw["t"] = args.t_value
    value = moment_map_eval(args.kind, M, x, eps, **kw)
    out = {"kind": args.kind, "point": k, "moment": value.to_json()}
    ok = True
    if args.kind == "limit":
        ok = abs(value.value) < NUMERIC_TOL
    elif args.kind == "bruhat" or M.n == 2:
        d = hamiltonian_defects(M, args.kind, k, 1j * M.h(0), eps, lam=lam or None)
        out["hamiltonian"] = {"sign": HAMILTONIAN_SIGN, "defect": d[HAMILTONIAN_SIGN],
                              "opposite_sign_defect": d[-HAMILTONIAN_SIGN]}
        ok = d[HAMILTONIAN_SIGN] < NUMERIC_TOL
    return ok, out


def cmd_modular(args, tol):
    from .matrixrep import MatrixModel, modular_field_numeric
    from .matrixrep.modular import s2_grid
    M = MatrixModel(load_algebra("A1"))
    eps = check_imaginary(parse_complex(args.epsilon))
    grid = s2_grid(args.grid)
    runs = [modular_field_numeric(M, a, grid, eps) for a in parse_list(args.a)]
    runs = [{k: r[k] for k in ("a", "points", "independence_defect", "match_defect")} for r in runs]
    ok = all(max(r["independence_defect"], r["match_defect"]) < NUMERIC_TOL for r in runs)
    return ok, {"runs": runs}


def cmd_suite(args, tol):
    from .acceptance import run_suite
    numbers = parse_list(args.criteria, int) or None
    if numbers and any(not 1 <= n <= 11 for n in numbers):
        raise UsageError("--criteria entries must lie in 1..11")
    results = run_suite(numbers)
    for r in results:
        print(r.line(), file=sys.stderr)
    return all(r.passed for r in results), {"criteria": [r.to_json() for r in results]}


COMMANDS = {
    "algebra": cmd_algebra, "rmatrix": cmd_rmatrix, "cdybe": cmd_cdybe, "poisson": cmd_poisson,
    "lagrangian": cmd_lagrangian, "leaves": cmd_leaves, "limits": cmd_limits, "moment": cmd_moment,
    "modular": cmd_modular, "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("compact", "pretty"), default="pretty")
    common.add_argument("--output", help="write the JSON report here instead of standard output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None,
                        help=f"residual pass threshold (default {DEFAULT_TOL}, or ${TOL_ENV})")

    def add(name, help, algebra=True, default_algebra=None):
        p = sub.add_parser(name, parents=[common], help=help)
        if algebra:
            p.add_argument("--algebra", required=default_algebra is None, default=default_algebra,
                           help="designator such as A2, B3, G2")
        return p

    def rm_opts(p):
        p.add_argument("--X", default="", help="simple roots, e.g. a1,a2")
        p.add_argument("--lambda", dest="lam", default="", help="values <alpha_i, lambda> on all simple roots")
        p.add_argument("--epsilon", default="1")
        p.add_argument("--twist", default="", help="Weyl word as simple reflection numbers, e.g. 1,2")

    def pi_opts(p):
        p.add_argument("--X", default="", help="simple roots, e.g. a1,a2")
        p.add_argument("--X1", default="", help="subset of X carrying the i pi/2 coweight shift")
        p.add_argument("--lambda", dest="lam", default="", help="gamma(lambda_1) for gamma in X, in X's order")
        p.add_argument("--epsilon", default="1i")

    parser = argparse.ArgumentParser(prog="dynpoisson", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    add("algebra", "root system and basis data")
    rm_opts(add("rmatrix", "evaluate r(lambda)"))
    rm_opts(add("cdybe", "verify the dynamical Yang-Baxter equation"))
    pi_opts(add("poisson", "bivector pi(e) and its Jacobi obstruction"))
    pi_opts(add("lagrangian", "Lagrangian subalgebra and its checks"))
    p = add("leaves", "symplectic leaves for X1 empty")
    p.add_argument("--X", default="")
    p.add_argument("--X1", default="")
    p = add("limits", "distance sweep towards a limit structure")
    pi_opts(p)
    p.add_argument("--Y", required=True, help="simple roots containing X")
    p.add_argument("--t", default="1,5,10,20")
    p = add("moment", "moment map values and Hamiltonian consistency", default_algebra="A1")
    p.add_argument("--kind", choices=("bruhat", "dressing", "limit"), required=True)
    p.add_argument("--epsilon", default="1i")
    p.add_argument("--z", default=None, help="cell coordinate of the point on SU(2)/T")
    p.add_argument("--lambda", dest="lam", default="", help="alpha_i(lambda) on simple roots")
    p.add_argument("--t-value", type=float, default=15.0)
    p = add("modular", "modular vector field on the S^2 family", algebra=False)
    p.add_argument("--a", default="-1,0,0.3,2")
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--epsilon", default="1i")
    p = add("suite", "run the acceptance criteria", algebra=False)
    p.add_argument("--criteria", default="", help="e.g. 1,3,11 (default: all)")
    return parser


def resolve_tol(args) -> float:
    if args.tol is not None:
        return args.tol
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"${TOL_ENV} is not a number: {env!r}") from None
    return DEFAULT_TOL


def emit(report: dict, args) -> None:
    indent = 2 if args.format == "pretty" else None
    seps = None if indent else (",", ":")
    text = json.dumps(jsonable(report), indent=indent, separators=seps, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    invocation = {k: v for k, v in vars(args).items() if k not in ("format", "output")}
    report = {"tool_version": __version__, "invocation": invocation,
              "timestamp": datetime.now(timezone.utc).isoformat()}
    try:
        tol = resolve_tol(args)
        report["tolerances"] = {"residual": tol, "numeric": NUMERIC_TOL}
        passed, result = COMMANDS[args.command](args, tol)
    except UsageError as e:
        print(f"dynpoisson {args.command}: error: {e}", file=sys.stderr)
        return 2
    except (DynPoissonError, ValueError) as e:
        err = e.to_json() if isinstance(e, DynPoissonError) else {"error": "ValueError", "message": str(e)}
        report.update(passed=False, error=err)
        emit(report, args)
        return 1
    report.update(passed=bool(passed), result=result)
    emit(report, args)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
