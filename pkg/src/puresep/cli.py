"""Command line front end.

Exit codes: 0 separable, 1 entangled, 2 usage or parse error, 3 numerical
failure or conflicting criteria.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np

from . import bench as _bench
from .criteria import ALL, classify
from .errors import CriteriaConflict, NotNormalizedError, NumericalFailure, ShapeError
from .io import StateFileError, format_state, parse_state
from .oracle import oracle_schmidt
from .state import (
    DEFAULT_TOL,
    ToleranceConfig,
    basis_state,
    cat_state,
    random_product_state,
    random_state,
    w_state,
)

EXIT_SEPARABLE, EXIT_ENTANGLED, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3


def _num(x):
    """JSON form of a real or complex number."""
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    return float(x)


def _evidence(verdict) -> list:
    return [{"party": e.party, "value": _num(e.value), "threshold": float(e.threshold),
             "passed": bool(e.passed)} for e in verdict.per_party]


def _witness(w) -> dict | None:
    if w is None:
        return None
    return {"criterion": w.criterion, "party": w.party, "value": _num(w.value),
            "threshold": float(w.threshold), "rows": list(w.rows), "cols": list(w.cols)}


def _emit(record: dict, machine: bool, human: str, out=None) -> None:
    out = out or sys.stdout
    text = json.dumps(record, sort_keys=True) + "\n" if machine else human + "\n"
    out.write(text)
    out.flush()


def _read_input(path: str, tol: ToleranceConfig):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        state = parse_state(text, tol)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return state


def _tolerances(args) -> ToleranceConfig:
    return ToleranceConfig(
        norm=DEFAULT_TOL.norm,
        zero=args.tol_zero if args.tol_zero is not None else DEFAULT_TOL.zero,
        det=args.tol_det if args.tol_det is not None else DEFAULT_TOL.det,
        rank=args.tol_rank if args.tol_rank is not None else DEFAULT_TOL.rank,
        fid=DEFAULT_TOL.fid,
    )


def _error_record(kind: str, exc: Exception, code: int, **extra) -> dict:
    rec = {"verdict": "error", "exit_code": code, "error": {"class": kind, "message": str(exc)}}
    rec["error"].update(extra)
    return rec


def _format_factor(f) -> str:
    return "(" + ", ".join(f"{a.real:.6g}{a.imag:+.6g}j" for a in f.amplitudes) + ")"


def cmd_check(args) -> int:
    try:
        tol = _tolerances(args)
        state = _read_input(args.input, tol)
    except (StateFileError, NotNormalizedError, ShapeError, ValueError, OSError) as exc:
        _emit(_error_record("usage", exc, EXIT_USAGE, input=args.input), args.machine,
              f"error: {exc}", sys.stdout if args.machine else sys.stderr)
        return EXIT_USAGE
    names = ALL if args.criterion == "all" else (args.criterion,)
    base = {"input": args.input, "dims": list(state.dims), "criteria": list(names)}
    try:
        verdict = classify(state, tol, names, exhaustive=args.exhaustive)
    except CriteriaConflict as exc:
        rec = dict(base, **_error_record("conflict", exc, EXIT_NUMERICAL, pair=list(exc.pair)))
        rec["evidence"] = {k: {"separable": v.separable, "per_party": _evidence(v),
                               "witness": _witness(v.witness)} for k, v in exc.verdicts.items()}
        lines = [f"error: {exc}"]
        for k, v in exc.verdicts.items():
            vals = ", ".join(f"{_num(e.value)!r}" for e in v.per_party)
            lines.append(f"  {k:<7} {'separable' if v.separable else 'entangled'}: {vals}")
        _emit(rec, args.machine, "\n".join(lines))
        return EXIT_NUMERICAL
    except NumericalFailure as exc:
        rec = dict(base, **_error_record("numerical", exc, EXIT_NUMERICAL, fidelity=exc.fidelity))
        _emit(rec, args.machine, f"error: {exc}")
        return EXIT_NUMERICAL

    code = EXIT_SEPARABLE if verdict.separable else EXIT_ENTANGLED
    rec = dict(base)
    rec.update({
        "verdict": "separable" if verdict.separable else "entangled",
        "exit_code": code,
        "evidence": {k: _evidence(v) for k, v in verdict.components.items()},
        "witnesses": {k: _witness(v.witness) for k, v in verdict.components.items()},
        "factors": None if verdict.factors is None
        else [[_num(a) for a in f.amplitudes] for f in verdict.factors],
        "fidelity": verdict.fidelity,
    })
    lines = [f"state dims {state.dims}: {rec['verdict'].upper()}"]
    for k, v in verdict.components.items():
        lines.append(f"  {k}:")
        for e in v.per_party:
            mark = "ok" if e.passed else "VIOLATED"
            lines.append(f"    party {e.party + 1}: value {_num(e.value)!r} "
                         f"(threshold {e.threshold:.3g}) {mark}")
        if v.witness is not None:
            w = v.witness
            where = f" rows {tuple(w.rows)} cols {tuple(w.cols)}" if w.rows else ""
            lines.append(f"    witness: party {w.party + 1}{where} value {_num(w.value)!r}")
    if verdict.factors is not None:
        for j, f in enumerate(verdict.factors):
            lines.append(f"  factor {j + 1}: {_format_factor(f)}")
        lines.append(f"  fidelity: {verdict.fidelity:.17g}")
    _emit(rec, args.machine, "\n".join(lines))
    return code


def cmd_gen(args) -> int:
    try:
        if args.kind in ("cat", "w"):
            if args.n is None:
                raise ValueError(f"gen {args.kind} needs --n")
            state = cat_state(args.n, args.levels) if args.kind == "cat" else w_state(args.n)
            dims = state.dims
        else:
            if not args.dims:
                raise ValueError(f"gen {args.kind} needs --dims")
            dims = tuple(args.dims)
            if args.n is not None and args.n != len(dims):
                raise ValueError(f"--n {args.n} does not match {len(dims)} dimensions")
            if args.kind == "product":
                state = basis_state(dims, (0,) * len(dims))
            elif args.kind == "random":
                state = random_state(dims, args.seed)
            else:
                state = random_product_state(dims, args.seed)
    except (ValueError, ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    comments = [f"kind={args.kind}", f"dims={' '.join(map(str, dims))}"]
    if args.kind in ("random", "random-product"):
        comments.append(f"seed={args.seed}")
    text = format_state(state, comments)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return 0


def cmd_bench(args) -> int:
    names = [c for chunk in args.criteria for c in chunk.split(",") if c]
    try:
        dims_list = _bench.sweep_points(args.dims_family, args.n_min, args.n_max)
        report = _bench.run_bench(dims_list, names, reps=args.reps, seed=args.seed,
                                  max_bytes=args.max_bytes, dense_max_r=args.dense_max_r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.machine:
        for p in report.points:
            _emit({"record": "point", "criterion": p.criterion, "n": p.n, "dims": list(p.dims),
                   "d": p.d, "r": p.r, "counts": p.counts, "fitted_count": p.fitted_count,
                   "seconds": p.seconds}, True, "")
        for name, fit in report.fits.items():
            _emit(dict(fit, record="fit", criterion=name), True, "")
    else:
        print(_bench.format_table(report))
    return 0


def cmd_oracle(args) -> int:
    try:
        tol = _tolerances(args)
        state = _read_input(args.input, tol)
        rep = oracle_schmidt(state, tol)
    except (StateFileError, NotNormalizedError, ShapeError, ValueError, OSError) as exc:
        _emit(_error_record("usage", exc, EXIT_USAGE, input=args.input), args.machine,
              f"error: {exc}", sys.stdout if args.machine else sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        _emit(_error_record("numerical", exc, EXIT_NUMERICAL), args.machine, f"error: {exc}")
        return EXIT_NUMERICAL
    code = EXIT_SEPARABLE if rep.separable else EXIT_ENTANGLED
    rec = {
        "input": args.input, "dims": list(state.dims),
        "verdict": "separable" if rep.separable else "entangled", "exit_code": code,
        "cuts": [{"party": k, "singular_values": sv.tolist(),
                  "schmidt_coefficients_squared": (sv**2).tolist(),
                  "schmidt_number": rep.schmidt_numbers[k], "margin": rep.margins[k]}
                 for k, sv in enumerate(rep.singular_values)],
    }
    lines = [f"state dims {state.dims}: {rec['verdict'].upper()}"]
    for cut in rec["cuts"]:
        sq = " ".join(f"{x:.10g}" for x in cut["schmidt_coefficients_squared"])
        lines.append(f"  cut {cut['party'] + 1}|rest: schmidt number {cut['schmidt_number']}, "
                     f"sigma^2 = ({sq})")
    _emit(rec, args.machine, "\n".join(lines))
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="puresep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def tol_flags(p):
        p.add_argument("--tol-rank", type=float, default=None)
        p.add_argument("--tol-det", type=float, default=None)
        p.add_argument("--tol-zero", type=float, default=None)

    p = sub.add_parser("check", help="decide separability of a state file")
    p.add_argument("--input", required=True, help="state file, or - for stdin")
    p.add_argument("--criterion", choices=["det", "rank", "minors", "prop", "all"], default="all")
    tol_flags(p)
    p.add_argument("--machine", action="store_true", help="one JSON record on stdout")
    p.add_argument("--exhaustive", action="store_true",
                   help="scan every minor/column and report the largest violation")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="write a test state")
    p.add_argument("kind", choices=["cat", "w", "product", "random", "random-product"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--dims", type=int, nargs="+", default=None)
    p.add_argument("--levels", type=int, default=2, help="local dimension of cat states")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="operation-count sweep with slope fits")
    p.add_argument("--dims-family", choices=sorted(_bench.FAMILIES), default="qubit")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--criteria", nargs="+", default=["prop,minors,det-dense"],
                   help="comma or space separated subset of " + ",".join(_bench.RUNNERS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-bytes", type=int, default=1 << 30)
    p.add_argument("--dense-max-r", type=int, default=64)
    p.add_argument("--machine", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="Schmidt spectra of every single-party cut")
    p.add_argument("--input", required=True)
    tol_flags(p)
    p.add_argument("--machine", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
