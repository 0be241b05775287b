"""Batch command-line front end with machine-readable JSON output.

A job is either a JSON JobSpec (via --job FILE or stdin) or a named
verification suite (--suite NAME --seed N --count N [--tol X]).  Output is a
single JSON object on stdout; exit codes: 0 all residuals within tolerance,
1 residual exceeded, 2 usage error, 3 resource/convergence error.

JobSpec: {"command": <name>, "params": {...}, "tol": float, "seed": int}
with command one of theta, theta-sum, maslov, cocycle, covariance,
verify-suite, casimir, multiplicity.  Matrices are row-major nested arrays,
complex scalars [re, im].
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__, serialize
from .errors import ConvergenceError, DomainError, ResourceError
from .groups import IwasawaCoords, SiegelJacobiPoint
from .jacobi_theta import LatticePair, theta_sum_f
from .maass import casimir_km, multiplicity, sample_function
from .maslov import Lagrangian, cocycle_clm, cocycle_sl2, maslov3, maslov_chain
from .states import ground_state
from .suites import SUITES, run_suite
from .theta import theta_M
from .weil import covariance_residual

SCHEMA = "1"


def _decode_word(spec):
    word = []
    for item in spec:
        kind, par = item[0], item[1]
        word.append((kind, None if par is None else serialize.decode_real_matrix(par)))
    return word


def _job_theta(params, tol, threads):
    tol = 1e-9 if tol is None else tol
    mm = serialize.decode_real_matrix(params["M"])
    m = int(params.get("m", mm.shape[0]))
    n = params.get("n")
    shape_o = (int(n), int(n)) if n is not None else None
    shape_z = (m, int(n)) if n is not None else None
    p = SiegelJacobiPoint(serialize.decode_complex_matrix(params["omega"], shape_o),
                          serialize.decode_complex_matrix(params["z"], shape_z))
    tv = theta_M(mm, p, tol, threads=threads)
    return {"value": serialize.encode_complex(tv.value)}, {
        "radius": tv.truncation.radius, "tail_bound": tv.truncation.tail_bound}, True


def _job_theta_sum(params, tol, threads):
    tol = 1e-9 if tol is None else tol
    n = int(params["n"])
    f = serialize.decode_state(params["f"]) if "f" in params else ground_state(n)
    coords = IwasawaCoords(serialize.decode_complex(params["tau"]),
                           float(params.get("theta", 0.0)))
    xi = LatticePair(np.asarray(params.get("lambda", [0.0] * n), dtype=float),
                     np.asarray(params.get("mu", [0.0] * n), dtype=float))
    tv = theta_sum_f(f, coords, xi, t=float(params.get("t", 0.0)), tol=tol,
                     threads=threads)
    return {"value": serialize.encode_complex(tv.value)}, {
        "radius": tv.truncation.radius, "tail_bound": tv.truncation.tail_bound}, True


def _job_maslov(params, tol, threads):
    ls = [Lagrangian(serialize.decode_real_matrix(b)) for b in params["lagrangians"]]
    if len(ls) < 3:
        raise DomainError("need at least three Lagrangians")
    value = maslov3(*ls) if len(ls) == 3 else maslov_chain(ls)
    return {"index": value}, {}, True


def _job_cocycle(params, tol, threads):
    variant = params.get("type", "sl2")
    if variant == "sl2":
        val = cocycle_sl2(serialize.decode_real_matrix(params["M1"]),
                          serialize.decode_real_matrix(params["M2"]),
                          int(params.get("n", 1)))
    elif variant == "clm":
        val = cocycle_clm(float(params.get("m", 1.0)),
                          Lagrangian(serialize.decode_real_matrix(params["lagrangian"])),
                          serialize.decode_symplectic(params["g1"]),
                          serialize.decode_symplectic(params["g2"]))
    else:
        raise DomainError(f"unknown cocycle type {variant!r}")
    return {"value": serialize.encode_complex(val)}, {}, True


def _job_covariance(params, tol, threads):
    mm = serialize.decode_real_matrix(params["M"])
    word = _decode_word(params["word"])
    h = serialize.decode_heisenberg(params["heisenberg"])
    p = serialize.decode_point(params["point"])
    branch = params.get("branch", "auto")
    if branch != "auto":
        branch = serialize.decode_complex(branch)
    res, eps = covariance_residual(mm, word, h, p, branch=branch)
    return ({"residual": res, "eps": serialize.encode_complex(eps)}, {},
            res <= (1e-9 if tol is None else tol))


def _job_casimir(params, tol, threads):
    func = sample_function(params.get("function", "poly-exp"))
    h = float(params.get("h", 1e-3))
    val = casimir_km(func, int(params["k"]), int(params["m"]),
                     serialize.decode_complex(params["tau"]),
                     serialize.decode_complex(params["z"]), h)
    return {"value": serialize.encode_complex(val)}, {"step": h}, True


def _job_multiplicity(params, tol, threads):
    val = multiplicity(params["taus"], int(params["m"]), int(params["n"]))
    return {"multiplicity": val}, {}, True


def _job_verify_suite(params, tol, threads):
    report = run_suite(params["name"], int(params.get("seed", 0)),
                       int(params.get("count", 20)),
                       None if tol is None else tol)
    cert = {"max_residual": report["max_residual"], "tol": report["tol"]}
    return report, cert, bool(report["passed"])


_COMMANDS = {
    "theta": _job_theta,
    "theta-sum": _job_theta_sum,
    "maslov": _job_maslov,
    "cocycle": _job_cocycle,
    "covariance": _job_covariance,
    "verify-suite": _job_verify_suite,
    "casimir": _job_casimir,
    "multiplicity": _job_multiplicity,
}


def run_job(spec: dict, threads: int = 1) -> tuple[dict, int]:
    """Execute a JobSpec; returns (JobResult dict, exit code)."""
    t0 = time.perf_counter()
    command = spec.get("command")
    if command not in _COMMANDS:
        raise DomainError(f"unknown command {command!r}; available: {sorted(_COMMANDS)}")
    params = spec.get("params", {})
    if not isinstance(params, dict):
        raise DomainError("params must be an object")
    tol = spec.get("tol")
    if tol is not None and tol <= 0:
        raise DomainError("tol must be positive")
    outputs, certification, ok = _COMMANDS[command](params, tol, threads)
    result = {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "inputs": {"params": params, "tol": tol, "seed": spec.get("seed")},
        "outputs": outputs,
        "certification": certification,
        "passed": bool(ok),
        "wall_time": time.perf_counter() - t0,
    }
    return result, 0 if ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="jacobiweil",
        description="Evaluation and verification jobs with JSON output")
    parser.add_argument("--job", help="path to a JobSpec JSON file ('-' for stdin)")
    parser.add_argument("--suite", choices=sorted(SUITES), help="named verification suite")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=20)
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args(argv)

    try:
        if args.suite is not None:
            spec = {"command": "verify-suite", "tol": args.tol, "seed": args.seed,
                    "params": {"name": args.suite, "seed": args.seed,
                               "count": args.count}}
        elif args.job is not None:
            raw = sys.stdin.read() if args.job == "-" else open(args.job).read()
            spec = json.loads(raw)
        else:
            parser.print_usage(sys.stderr)
            return 2
        result, code = run_job(spec, threads=max(1, args.threads))
    except (DomainError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(json.dumps({"schema": SCHEMA, "error": f"usage: {exc}"}), file=sys.stdout)
        return 2
    except (ResourceError, ConvergenceError) as exc:
        print(json.dumps({"schema": SCHEMA, "error": f"resource: {exc}"}), file=sys.stdout)
        return 3
    print(json.dumps(result, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
