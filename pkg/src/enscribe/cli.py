"""Batch command-line front end emitting deterministic JSON reports.

Exit codes: 0 success/feasible, 2 well-formed negative result (illegible or
infeasible input), 1 error. Verbosity is controlled by the ENSCRIBE_LOG
environment variable (error, info, debug).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from . import engine, files, machine, procedures, texts, verification
from .errors import EnscribeError
from .search import SearchOptions, feasibility_search

log = logging.getLogger("enscribe")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def _emit(report: dict, output: str | None) -> None:
    text = files.dump_json(_jsonable(report))
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _inputs(args) -> list:
    if not args.input:
        raise EnscribeError("at least one --input file is required")
    return args.input


def _load_text(args) -> texts.QuantumText:
    return files.load_text(_inputs(args)[0])


def _is_real_uniform(text: texts.QuantumText) -> float | None:
    g = texts.gram(text)
    n = text.n_states
    if n < 3:
        return None
    off = g[np.triu_indices(n, 1)]
    if np.max(np.abs(off.imag)) > 1e-9:
        return None
    vals = off.real
    if np.max(vals) - np.min(vals) > 1e-9:
        return None
    return float(np.mean(vals))


def _search_options(args) -> SearchOptions:
    return SearchOptions(seed=args.seed, starts=args.starts, accept_tol=args.tolerance, q_grid=args.q_grid)


def cmd_classify(args) -> int:
    text = _load_text(args)
    cls = texts.classify(text)
    screen = engine.illegibility_screen(text)
    report = {
        "classification": {
            "classical": cls.classical,
            "fully_quantum": cls.fully_quantum,
            "efficient": cls.efficient,
            "thick": cls.thick,
            "dialect_dimension": cls.dialect_dimension,
        },
        "gram": [[_jsonable(complex(v)) for v in row] for row in texts.gram(text)],
        "illegibility": {
            "efficient_ok": screen.efficient_ok,
            "lemma2_pattern_ok": screen.lemma2_pattern_ok,
            "eigen_sign_ok": screen.eigen_sign_ok,
            "eigen_sign": screen.eigen_sign,
            "uniform_threshold_ok": screen.uniform_threshold_ok,
            "verdict": screen.verdict,
        },
    }
    _emit(report, args.output)
    return 2 if screen.illegible else 0


def cmd_gram(args) -> int:
    text = _load_text(args)
    g = texts.gram(text)
    eigs = np.linalg.eigvalsh(g)
    report = {
        "dimension": text.dimension,
        "n_states": text.n_states,
        "gram": [[_jsonable(complex(v)) for v in row] for row in g],
        "eigenvalues": [float(v) for v in eigs],
    }
    _emit(report, args.output)
    return 0


def _solve_dispatch(text: texts.QuantumText, args):
    """Closed-form solvers first, the numeric search as fallback or on request."""
    uniform_z = _is_real_uniform(text)
    if args.q is None and not args.search:
        if text.n_states == 2:
            log.info("dispatching to the 2-text central solver")
            return engine.solve_two_text(text), None
        if uniform_z is not None:
            log.info("dispatching to the real-uniform central solver (z=%g)", uniform_z)
            return engine.solve_real_uniform_central(text.n_states, uniform_z), None
    options = _search_options(args)
    result = feasibility_search(text, args.q, options)
    if result.feasible:
        return result.certificate, result
    return None, result


def cmd_solve(args) -> int:
    text = _load_text(args)
    try:
        cert, result = _solve_dispatch(text, args)
    except EnscribeError as exc:
        log.info("solver reported: %s", exc)
        _emit({"feasible": False, "reason": str(exc)}, args.output)
        return 2
    if cert is None:
        report = {
            "feasible": False,
            "best_residual": result.best_residual,
            "verdict": result.verdict,
        }
        _emit(report, args.output)
        return 2
    report = files.certificate_to_dict(cert)
    report["feasible"] = bool(cert.residual < args.tolerance)
    _emit(report, args.output)
    return 0 if cert.residual < args.tolerance else 2


def cmd_qrange(args) -> int:
    text = _load_text(args)
    if text.n_states == 2:
        z = abs(complex(texts.gram(text)[0, 1]))
        rng_result = engine.q_range_two_text(z)
    else:
        uniform_z = _is_real_uniform(text)
        if uniform_z is None:
            raise EnscribeError("no closed-form Q range for this text (need a 2-text or a real uniform text)")
        rng_result = engine.q_range_real_uniform(text.n_states, uniform_z)
    report = {
        "empty": rng_result.empty,
        "intervals": [
            {
                "lower": iv.lower,
                "upper": iv.upper,
                "lower_closed": iv.lower_closed,
                "upper_closed": iv.upper_closed,
                "lower_flavor": iv.lower_flavor,
                "upper_flavor": iv.upper_flavor,
            }
            for iv in rng_result.intervals
        ],
    }
    _emit(report, args.output)
    return 2 if rng_result.empty else 0


def _certificate_for(args, text):
    paths = _inputs(args)
    if len(paths) > 1:
        return files.load_certificate(paths[1], text)
    cert, _ = _solve_dispatch(text, args)
    if cert is None:
        raise EnscribeError("no certificate found for the input text")
    return cert


def cmd_build_procedure(args) -> int:
    text = _load_text(args)
    cert = _certificate_for(args, text)
    u = procedures.build_procedure(text, cert, accept_tol=args.tolerance)
    defect = procedures.verify_procedure(u, text, cert)
    report = files.procedure_to_dict(u)
    report["verification_error"] = defect
    _emit(report, args.output)
    return 0


def cmd_clone(args) -> int:
    text = _load_text(args)
    cert = _certificate_for(args, text)
    u = procedures.build_procedure(text, cert, accept_tol=args.tolerance)
    rows = []
    q = complex(cert.params.q)
    for i in range(text.n_states):
        outcome = machine.run_clone(text, cert, i, procedure=u, accept_tol=args.tolerance)
        if abs(q.imag) < 1e-12:
            ov = abs(np.vdot(text.state(i), cert.params.tablet)) ** 2
            p_real = (1.0 + cert.params.Q * ov) / (1.0 + abs(cert.params.Q))
            sym = machine.failure_state_symmetry_check(text, cert, i)
            sym_text = "n/a" if sym.expected_parity is None else f"{sym.expected_parity:+d}"
        else:
            p_real = None
            sym_text = "n/a"
        rows.append(
            {
                "i": i,
                "p_success": outcome.p_success,
                "p_formula_real_q": p_real,
                "fidelity": outcome.fidelity,
                "failure_symmetry": sym_text,
            }
        )
    _emit({"results": rows, "Q": cert.params.Q}, args.output)
    return 0


def cmd_verify_theorems(args) -> int:
    results = verification.run_checks(only=args.only, seed=args.seed)
    report = {
        "checks": [
            {"name": r.name, "passed": r.passed, "details": _jsonable(r.details)}
            for r in results
        ],
        "all_passed": bool(results) and all(r.passed for r in results),
    }
    _emit(report, args.output)
    for r in results:
        print(("PASS " if r.passed else "FAIL ") + r.name, file=sys.stderr)
    return 0 if report["all_passed"] else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enscribe",
        description="Entangled-cloning feasibility analysis for finite sets of quantum states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument(
            "--input",
            action="append",
            help="input JSON file; repeat to pass a text then a certificate",
        )
        p.add_argument("--output", help="write the JSON report here instead of stdout")
        p.add_argument("--tolerance", type=float, default=1e-8)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--starts", type=int, default=64)
        p.add_argument("--q", type=float, default=None, help="fix the entanglement parameter")
        p.add_argument("--q-grid", dest="q_grid", type=float, default=0.01)
        p.add_argument("--only", default=None, help="filter verification checks by name")
        p.add_argument("--search", action="store_true", help="force the numeric search path")

    for name, fn in (
        ("classify", cmd_classify),
        ("gram", cmd_gram),
        ("solve", cmd_solve),
        ("qrange", cmd_qrange),
        ("build-procedure", cmd_build_procedure),
        ("clone", cmd_clone),
        ("verify-theorems", cmd_verify_theorems),
    ):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(func=fn)
    return parser


def _validate(args) -> None:
    if args.tolerance <= 0:
        raise EnscribeError("tolerance must be positive")
    if args.starts < 1:
        raise EnscribeError("starts must be at least 1")
    if not 0.0 < args.q_grid < 0.5:
        raise EnscribeError("q-grid must lie in (0, 0.5)")


def main(argv=None) -> int:
    level = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        os.environ.get("ENSCRIBE_LOG", "error").lower(), logging.ERROR
    )
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        _validate(args)
        return args.func(args)
    except (EnscribeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
