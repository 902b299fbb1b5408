"""Command-line front end.

Subcommands construct witnesses (quaternion solutions, matrix
realizations, trace and power-gap style probes) or run verification
sweeps (telescoping identity, norm bounds, sphere averages, empirical
constants).  Output is canonical JSON (sorted keys, fixed indent) or CSV,
so a fixed argument list produces byte-identical output.

Exit codes: 0 success, 2 rejected input, 3 a verification failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import norms
from .matrix import CC, GenericMatrix, telescoping_expand
from .matrix import poly_commutator as matrix_poly_commutator
from .poly import Polynomial
from .quat import (
    VerificationError,
    factor_into_two_commutators,
    solve_poly_commutator,
)
from .quat import poly_commutator as quat_poly_commutator
from .realize import (
    DegreeNotBoundedError,
    algebraic_degree_probe,
    nonzero_trace_witness,
    realize_traceless,
    realize_zero_diagonal,
)
from .sampling import (
    complex_gaussian_matrix,
    np_stream,
    quaternion_matrix,
    rational_matrix,
    stream,
)
from .serialize import (
    DecodeError,
    decode_matrix,
    decode_quaternion,
    dumps_canonical,
    encode_matrix,
    encode_polynomial,
    encode_quaternion,
    encode_witness,
    polynomial_from_text,
)

SCHEMA = 1


def _load_json(text_or_path: str):
    s = text_or_path.strip()
    if s.startswith(("{", "[")):
        return json.loads(s)
    with open(text_or_path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit_json(doc: dict) -> None:
    sys.stdout.write(dumps_canonical(doc))


def _emit_csv(fieldnames, rows) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        out = {}
        for key in fieldnames:
            value = row.get(key)
            if isinstance(value, bool):
                value = "true" if value else "false"
            elif value is None:
                value = ""
            out[key] = value
        writer.writerow(out)
    sys.stdout.write(buf.getvalue())


def _finite(x):
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return x


def _require_exact(p: Polynomial, what: str) -> None:
    if not p.is_exact():
        raise DecodeError(f"{what} needs exact integer or rational coefficients")


def _cmd_solve_quat(args) -> int:
    p = polynomial_from_text(args.poly)
    v = decode_quaternion(_load_json(args.input), exact=False)
    sol = solve_poly_commutator(p, v, tol=args.tolerance)
    target = v.to_float().im()
    residual = (quat_poly_commutator(p, sol.a, sol.b) - target).norm()
    verified = residual <= args.tolerance * (1.0 + target.norm())
    _emit_json(
        {
            "schema": SCHEMA,
            "command": "solve-quat",
            "polynomial": encode_polynomial(p),
            "target": encode_quaternion(v.to_float()),
            "a": encode_quaternion(sol.a),
            "b": encode_quaternion(sol.b),
            "t": sol.t,
            "residual": residual,
            "verified": verified,
        }
    )
    return 0 if verified else 3


def _cmd_factor_quat(args) -> int:
    p = polynomial_from_text(args.poly)
    alpha = decode_quaternion(_load_json(args.input), exact=False).to_float()
    pairs = factor_into_two_commutators(p, alpha, tol=args.tolerance)
    d1 = quat_poly_commutator(p, *pairs[0])
    d2 = quat_poly_commutator(p, *pairs[1])
    residual = (d1 * d2 - alpha).norm()
    verified = residual <= args.tolerance * (1.0 + alpha.norm())
    _emit_json(
        {
            "schema": SCHEMA,
            "command": "factor-quat",
            "polynomial": encode_polynomial(p),
            "target": encode_quaternion(alpha),
            "pairs": [[encode_quaternion(a), encode_quaternion(b)] for a, b in pairs],
            "factors": [encode_quaternion(d1), encode_quaternion(d2)],
            "residual": residual,
            "verified": verified,
        }
    )
    return 0 if verified else 3


def _cmd_realize_matrix(args) -> int:
    p = polynomial_from_text(args.poly)
    _require_exact(p, "matrix realization")
    data = _load_json(args.input)
    g = None
    if isinstance(data, dict) and "matrix" in data:
        a = decode_matrix(data["matrix"])
        if "conjugator" in data:
            g = decode_matrix(data["conjugator"])
    else:
        a = decode_matrix(data)
    witness = realize_zero_diagonal(p, a, g=g)
    verified = witness.verify()
    _emit_json(
        {
            "schema": SCHEMA,
            "command": "realize-matrix",
            "witness": encode_witness(witness),
            "verified": verified,
        }
    )
    return 0 if verified else 3


def _cmd_realize_traceless(args) -> int:
    p = polynomial_from_text(args.poly)
    _require_exact(p, "matrix realization")
    a = decode_matrix(_load_json(args.input))
    witness = realize_traceless(p, a)
    verified = witness.verify()
    _emit_json(
        {
            "schema": SCHEMA,
            "command": "realize-traceless",
            "witness": encode_witness(witness),
            "verified": verified,
        }
    )
    return 0 if verified else 3


def _cmd_trace_witness(args) -> int:
    p = polynomial_from_text(args.poly)
    _require_exact(p, "the trace witness search")
    a, b = nonzero_trace_witness(p, args.n, seed=args.seed, attempts=args.trials)
    tr = matrix_poly_commutator(p, a, b).trace()
    verified = not tr.is_zero()
    _emit_json(
        {
            "schema": SCHEMA,
            "command": "trace-witness",
            "polynomial": encode_polynomial(p),
            "n": args.n,
            "seed": args.seed,
            "a": encode_matrix(a),
            "b": encode_matrix(b),
            "trace": encode_quaternion(tr),
            "verified": verified,
        }
    )
    return 0 if verified else 3


def _cmd_probe_degree(args) -> int:
    data = _load_json(args.input)
    if isinstance(data, list):
        element = decode_quaternion(data, exact=True)
    elif isinstance(data, dict):
        element = decode_matrix(data)
        if not element.ring.exact:
            raise DecodeError("the degree probe needs an exact backend")
    else:
        raise DecodeError("input must be a quaternion array or a matrix object")
    result = algebraic_degree_probe(element, trials=args.trials, seed=args.seed)
    _emit_json(
        {
            "schema": SCHEMA,
            "command": "probe-degree",
            "seed": args.seed,
            "trials_per_degree": result.trials_per_degree,
            "estimated_degree": result.estimated_degree,
            "vanish_pattern": {str(m): v for m, v in result.vanish_pattern.items()},
            "verified": True,
        }
    )
    return 0


_CHECK_NAMES = ("bottcher-wenzel", "frobenius", "numerical-radius", "sphere-average")


def _cmd_verify_bounds(args) -> int:
    p = polynomial_from_text(args.poly)
    gen = np_stream(args.seed, "verify-bounds")
    rows = []
    all_ok = True
    for trial in range(args.trials):
        a = complex_gaussian_matrix(gen, args.n)
        b = complex_gaussian_matrix(gen, args.n)
        reports = (
            norms.check_bottcher_wenzel(a, b, seed=args.seed),
            norms.check_frobenius_bound(p, a, b, seed=args.seed),
            norms.check_numrad_bound(p, a, b, seed=args.seed),
            norms.check_average_bound(p, a, b, samples=args.samples, seed=args.seed),
        )
        for name, rep in zip(_CHECK_NAMES, reports):
            all_ok = all_ok and rep.satisfied
            rows.append(
                {
                    "check": name,
                    "trial": trial,
                    "seed": args.seed,
                    "n": rep.n,
                    "degree": rep.degree,
                    "lhs": rep.lhs,
                    "rhs": rep.rhs,
                    "ratio": _finite(rep.ratio),
                    "mc_margin": rep.mc_margin,
                    "satisfied": rep.satisfied,
                }
            )
    if args.format == "csv":
        _emit_csv(
            [
                "check",
                "trial",
                "seed",
                "n",
                "degree",
                "lhs",
                "rhs",
                "ratio",
                "mc_margin",
                "satisfied",
            ],
            rows,
        )
    else:
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "verify-bounds",
                "polynomial": encode_polynomial(p),
                "n": args.n,
                "seed": args.seed,
                "trials": args.trials,
                "samples": args.samples,
                "checks": rows,
                "all_satisfied": all_ok,
            }
        )
    return 0 if all_ok else 3


def _decode_sphere_input(data):
    if isinstance(data, dict):
        return norms.as_complex_array(decode_matrix(data))
    if isinstance(data, list):
        n = len(data)
        for row in data:
            if not isinstance(row, list) or len(row) != n:
                raise DecodeError("bare matrix input must be a square array")
            for v in row:
                if isinstance(v, bool) or not isinstance(v, (int, float)):
                    raise DecodeError(
                        "bare matrix entries must be real numbers; use a"
                        " ring-tagged object for complex entries"
                    )
        return norms.as_complex_array(data)
    raise DecodeError("input must be a matrix object or a square number array")


def _cmd_sphere_avg(args) -> int:
    arr = _decode_sphere_input(_load_json(args.input))
    est = norms.spherical_average(arr, args.samples, args.seed)
    deviation = abs(est.mean - est.exact_value)
    verified = deviation <= 4.0 * est.std_error + 1e-12 * (1.0 + est.exact_value)
    _emit_json(
        {
            "schema": SCHEMA,
            "command": "sphere-avg",
            "n": int(arr.shape[0]),
            "seed": args.seed,
            "samples": est.samples,
            "mean": est.mean,
            "std_error": est.std_error,
            "exact_value": est.exact_value,
            "deviation": deviation,
            "verified": verified,
        }
    )
    return 0 if verified else 3


def _cmd_sweep_constants(args) -> int:
    p = polynomial_from_text(args.poly)
    rows = []
    best_product = 0.0
    best_commutator = 0.0
    skipped = 0
    for row in norms.constant_sweep_rows(p, args.n, args.trials, args.seed):
        best_product = max(best_product, row["ratio"])
        if row["ratio_commutator"] is None:
            skipped += 1
        else:
            best_commutator = max(best_commutator, row["ratio_commutator"])
        rows.append({"seed": args.seed, **row})
    if args.format == "csv":
        _emit_csv(
            [
                "trial",
                "seed",
                "n",
                "degree",
                "lhs",
                "rhs",
                "ratio",
                "commutator_norm",
                "ratio_commutator",
            ],
            rows,
        )
    else:
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "sweep-constants",
                "polynomial": encode_polynomial(p),
                "n": args.n,
                "seed": args.seed,
                "trials": args.trials,
                "ratio_norm_product": best_product,
                "ratio_commutator": best_commutator,
                "skipped_near_commuting": skipped,
            }
        )
    return 0


def _telescope_pairs(ring: str, n: int, trials: int, seed: int):
    if ring == "complex":
        gen = np_stream(seed, "telescope")
        for _ in range(trials):
            a = GenericMatrix.from_rows(CC, complex_gaussian_matrix(gen, n).tolist())
            b = GenericMatrix.from_rows(CC, complex_gaussian_matrix(gen, n).tolist())
            yield a, b
        return
    rng = stream(seed, "telescope")
    for _ in range(trials):
        if ring == "rational":
            yield (
                rational_matrix(rng, n, denominators=(1, 1, 2, 3)),
                rational_matrix(rng, n, denominators=(1, 1, 2, 3)),
            )
        else:
            yield quaternion_matrix(rng, n), quaternion_matrix(rng, n)


def _cmd_verify_telescope(args) -> int:
    p = polynomial_from_text(args.poly)
    if args.ring in ("rational", "quaternion"):
        _require_exact(p, f"the {args.ring} backend")
    detail = []
    all_equal = True
    worst = 0.0
    for trial, (a, b) in enumerate(
        _telescope_pairs(args.ring, args.n, args.trials, args.seed)
    ):
        report = telescoping_expand(p, a, b, tol=args.tolerance)
        all_equal = all_equal and report.equal
        worst = max(worst, report.max_entry_deviation)
        detail.append(
            {
                "trial": trial,
                "equal": report.equal,
                "max_entry_deviation": report.max_entry_deviation,
            }
        )
    _emit_json(
        {
            "schema": SCHEMA,
            "command": "verify-telescope",
            "polynomial": encode_polynomial(p),
            "ring": args.ring,
            "n": args.n,
            "seed": args.seed,
            "trials": args.trials,
            "all_equal": all_equal,
            "max_entry_deviation": worst,
            "detail": detail,
        }
    )
    return 0 if all_equal else 3


def _add_common(sp, *, poly=False, inp=False, tolerance=None):
    if poly:
        sp.add_argument(
            "--poly",
            required=True,
            help="coefficients, constant first, comma separated (e.g. 0,1,2)",
        )
    if inp:
        sp.add_argument(
            "--input", required=True, help="inline JSON or a path to a JSON file"
        )
    if tolerance is not None:
        sp.add_argument("--tolerance", type=float, default=tolerance)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polycomm",
        description="Witness constructions and verification sweeps for "
        "p(ab) - p(ba) over quaternions and matrices.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser(
        "solve-quat", help="solve p(ab) - p(ba) = v for an imaginary quaternion v"
    )
    _add_common(sp, poly=True, inp=True, tolerance=1e-8)
    sp.set_defaults(func=_cmd_solve_quat)

    sp = sub.add_parser(
        "factor-quat",
        help="write any quaternion as a product of two p-differences",
    )
    _add_common(sp, poly=True, inp=True, tolerance=1e-8)
    sp.set_defaults(func=_cmd_factor_quat)

    sp = sub.add_parser(
        "realize-matrix",
        help="realize a zero-diagonal exact matrix as p(AB) - p(BA)",
    )
    _add_common(sp, poly=True, inp=True)
    sp.set_defaults(func=_cmd_realize_matrix)

    sp = sub.add_parser(
        "realize-traceless",
        help="realize a traceless rational matrix as p(AB) - p(BA)",
    )
    _add_common(sp, poly=True, inp=True)
    sp.set_defaults(func=_cmd_realize_traceless)

    sp = sub.add_parser(
        "trace-witness",
        help="quaternion matrices where p(AB) - p(BA) has nonzero trace",
    )
    _add_common(sp, poly=True)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=200, help="random attempts")
    sp.set_defaults(func=_cmd_trace_witness)

    sp = sub.add_parser(
        "probe-degree",
        help="estimate the algebraic degree of a quaternion or exact matrix",
    )
    _add_common(sp, inp=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=8, help="trials per degree level")
    sp.set_defaults(func=_cmd_probe_degree)

    sp = sub.add_parser(
        "verify-bounds", help="check the norm bounds on random complex matrices"
    )
    _add_common(sp, poly=True)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--samples", type=int, default=4000, help="Monte Carlo samples")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=_cmd_verify_bounds)

    sp = sub.add_parser(
        "sphere-avg",
        help="Monte Carlo check of the sphere-average identity for ||A||_F^2",
    )
    _add_common(sp, inp=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=20000)
    sp.set_defaults(func=_cmd_sphere_avg)

    sp = sub.add_parser(
        "sweep-constants",
        help="empirical max of ||p(AB)-p(BA)||_F against two reference scales",
    )
    _add_common(sp, poly=True)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=_cmd_sweep_constants)

    sp = sub.add_parser(
        "verify-telescope",
        help="check the telescoped commutator expansion on random pairs",
    )
    _add_common(sp, poly=True)
    sp.add_argument(
        "--ring", choices=("rational", "complex", "quaternion"), default="rational"
    )
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--tolerance", type=float, default=1e-10)
    sp.set_defaults(func=_cmd_verify_telescope)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        return args.func(args)
    except (VerificationError, DegreeNotBoundedError, norms.ConvergenceError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
