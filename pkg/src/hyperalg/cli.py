"""Command-line front end.

Exit codes: 0 success, 1 domain error (singular element, malformed signal,
...), 2 usage error (bad flags, unparsable expression).
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import coupling, schrodinger, search, spectral
from .algebra import HNum, SingularElement, get_algebra
from .analytic import NoConvergence, SeriesConfig, phi_wave_closed
from .expr import EvaluationError, ExpressionSyntaxError, evaluate, parse_expression

DOMAIN_ERRORS = (
    SingularElement,
    NoConvergence,
    EvaluationError,
    spectral.MalformedSignal,
    schrodinger.GridTooCoarse,
    schrodinger.ZeroWave,
    coupling.DegenerateExpectation,
    OverflowError,
)


class UsageError(Exception):
    pass


def _hnum_json(x: HNum) -> dict:
    coeffs = [str(c) for c in x.coeffs] if x.exact else list(x.coeffs)
    return {"text": str(x), "mode": x.mode, "coefficients": coeffs}


def _emit(args, payload, text: str, csv_rows=None) -> None:
    if args.output == "json":
        print(json.dumps(payload, indent=1, sort_keys=True))
    elif args.output == "csv" and csv_rows is not None:
        for row in csv_rows:
            print(",".join(str(v) for v in row))
    else:
        print(text)


def _series(args) -> SeriesConfig:
    return SeriesConfig(tol=args.tol) if args.tol else SeriesConfig()


def _resolve_algebra(name: str):
    try:
        return get_algebra(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


# -- subcommands ----------------------------------------------------------------

def cmd_eval(args) -> int:
    alg = _resolve_algebra(args.algebra)
    try:
        tree = parse_expression(args.expression)
    except ExpressionSyntaxError as exc:
        print(f"syntax error: {exc}\n  {args.expression}\n  {' ' * exc.position}^", file=sys.stderr)
        return 2
    value = evaluate(tree, alg, series=_series(args))
    _emit(args, {"algebra": alg.name, "expression": args.expression, "result": _hnum_json(value)},
          str(value), [("a", "b", "c", "d"), tuple(str(c) if value.exact else repr(c) for c in value.coeffs)])
    return 0


def cmd_props(args) -> int:
    alg = _resolve_algebra(args.algebra)
    rep = alg.properties
    d = rep.to_dict()
    lines = [f"algebra: {alg.name}", str(alg.table)]
    lines += [f"{key}: {d[key]}" for key in ("unital", "commutative", "associative")]
    zd = d["zero_divisor_witness"]
    lines.append("zero divisor: " + (f"({zd['x']}) * ({zd['y']}) = 0" if zd else "none found"))
    lines.append("closed subalgebras: " + ", ".join("{" + ",".join(s) + "}" for s in d["closed_subalgebras"]))
    for cs in d["complex_structures"]:
        lines.append(f"complex structure on {{{','.join(cs['subset'])}}}: unity {cs['unity']}, imaginary {cs['imaginary']}")
    _emit(args, {"algebra": alg.name, "table": alg.table.to_strings(), "properties": d}, "\n".join(lines))
    return 0


def cmd_search(args) -> int:
    preds = frozenset(p.strip() for p in args.predicates.split(",")) if args.predicates else frozenset(search.PREDICATES)
    try:
        cfg = search.SearchConfig(
            require_commutative=args.commutative,
            require_i_squared_minus_one=args.i2 == "-1",
            predicates=preds,
            worker_count=args.workers or search.default_workers(),
            output_path=args.out,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = search.search(cfg)
    text = "\n".join([
        f"constraint level: {res.constraint_level}",
        f"candidates: {res.total_candidates}",
        "first-failure census: " + ", ".join(f"{k}={v}" for k, v in res.census.items()),
        f"survivors: {len(res.survivors)} raw, {len(res.canonical)} up to symmetry",
        *(f"canonical form (x{m}):\n{t}" for t, m in res.canonical),
    ])
    _emit(args, res.to_dict(), text)
    return 0


def cmd_dft(args) -> int:
    x = spectral.read_signal_csv(args.input)
    out = spectral.dft(x, "inverse" if args.inverse else "forward", args.kind)
    if args.out:
        spectral.write_signal_csv(args.out, out)
    rows = [("index", "a", "b", "c", "d")] + [(n, *map(repr, map(float, r))) for n, r in enumerate(out)]
    _emit(args, {"kind": args.kind, "inverse": args.inverse, "spectrum": out.tolist()},
          "\n".join(f"{n:4d}  {HNum(*map(float, r))}" for n, r in enumerate(out)), rows)
    return 0


def cmd_schrodinger(args) -> int:
    grids = [args.grid // 8, args.grid // 4, args.grid // 2, args.grid]
    energy = HNum(0.0, 0.0, 0.0, 0.5)
    residuals = [schrodinger.eigencheck(schrodinger.GridWave.sample(phi_wave_closed, m), energy) for m in grids]
    slope = float(np.polyfit(np.log([2 * math.pi / m for m in grids]), np.log(residuals), 1)[0])
    cls = schrodinger.classify_energy(energy, tol=args.tol or 1e-10).classification
    box = schrodinger.box_spectrum(args.levels, math.pi, args.grid)
    if args.out:
        schrodinger.write_spectrum_csv(args.out, box)
    payload = {
        "energy": _hnum_json(energy),
        "classification": cls,
        "grids": grids,
        "residuals": residuals,
        "convergence_slope": slope,
        "box_spectrum": [ev.value.coeffs[0] for ev in box],
    }
    text = "\n".join([
        f"phi plane wave q(y) = k cos y + j sin y, energy {energy} ({cls})",
        *(f"  M={m:5d}  residual {r!r}" for m, r in zip(grids, residuals)),
        f"  log-log slope {slope!r}",
        f"box [0, pi] lowest levels: " + ", ".join(repr(ev.value.coeffs[0]) for ev in box),
    ])
    rows = [("level", "a", "b", "c", "d", "classification")] + [
        (n, *map(repr, ev.value.coeffs), ev.classification) for n, ev in enumerate(box, 1)]
    _emit(args, payload, text, rows)
    return 0


def cmd_couple(args) -> int:
    cfg = coupling.CouplingConfig(delta=args.delta, base_phases=(args.theta1, args.theta2),
                                  samples=args.samples, rng_seed=args.seed)
    try:
        res = coupling.run_experiment(cfg)
    except coupling.DegenerateExpectation as exc:
        print(f"error: {exc}; counts {exc.counts}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(res.to_json() + "\n")
    if args.batches:
        coupling.write_batches_csv(args.batch_out or "batches.csv", coupling.batch_counts(cfg, args.batches))
    text = "\n".join([
        f"null probability {res.null_probability!r}, modulated {res.expected_probability!r}",
        f"counts {res.counts}, chi-square {res.chi_square!r}, p-value {res.p_value!r}",
    ])
    _emit(args, res.to_dict(), text, [("outcome0", "outcome1"), res.counts])
    return 0


def repl(args, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    alg = _resolve_algebra(args.algebra)
    last = None
    while True:
        stdout.write("Ω> ")
        stdout.flush()
        line = stdin.readline()
        if not line:
            stdout.write("\n")
            return 0
        line = line.strip()
        if not line:
            continue
        if line in (":q", ":quit"):
            return 0
        if line.startswith(":algebra"):
            try:
                alg = _resolve_algebra(line.split(None, 1)[1])
                stdout.write(f"algebra: {alg.name}\n")
            except (IndexError, UsageError) as exc:
                stdout.write(f"error: {exc}\n")
            continue
        try:
            last = evaluate(parse_expression(line), alg, last, _series(args))
            stdout.write(f"{last}\n")
        except ExpressionSyntaxError as exc:
            stdout.write(f"syntax error: {exc}\n")
        except DOMAIN_ERRORS as exc:
            stdout.write(f"error: {type(exc).__name__}: {exc}\n")


def cmd_repl(args) -> int:
    return repl(args)


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="omega", help="omega, quaternion, complex or file:<path>")
    common.add_argument("--output", choices=("text", "json", "csv"), default="text")
    common.add_argument("--tol", type=float, default=None, help="series / classification tolerance")

    p = argparse.ArgumentParser(prog="hyperalg", description="Hypercomplex algebra workbench")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    s.add_argument("expression")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("props", parents=[common], help="structural property report")
    s.set_defaults(func=cmd_props)

    s = sub.add_parser("search", parents=[common], help="enumerate and filter Cayley tables")
    s.add_argument("--commutative", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--i2", choices=("-1", "any"), default="-1", help="pin i*i = -1 or leave it free")
    s.add_argument("--predicates", default="", help="comma-separated subset of " + ",".join(search.PREDICATES))
    s.add_argument("--workers", type=int, default=None, help="default: $OMEGA_WORKERS or 1")
    s.add_argument("--out", default=None, help="write the SearchResult JSON here")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("dft", parents=[common], help="hypercomplex DFT of a CSV signal")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", default=None)
    s.add_argument("--kind", choices=spectral.KINDS, default="phi")
    s.add_argument("--inverse", action="store_true")
    s.set_defaults(func=cmd_dft)

    s = sub.add_parser("schrodinger", parents=[common], help="phi plane-wave energy demonstration")
    s.add_argument("--grid", type=int, default=512)
    s.add_argument("--levels", type=int, default=3)
    s.add_argument("--out", default=None, help="write the box spectrum CSV here")
    s.set_defaults(func=cmd_schrodinger)

    s = sub.add_parser("couple", parents=[common], help="phase-coupling Monte-Carlo experiment")
    s.add_argument("--delta", type=float, default=math.pi)
    s.add_argument("--theta1", type=float, default=0.0)
    s.add_argument("--theta2", type=float, default=math.pi / 3)
    s.add_argument("--samples", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default=None, help="write the result JSON here")
    s.add_argument("--batches", type=int, default=0)
    s.add_argument("--batch-out", default=None)
    s.set_defaults(func=cmd_couple)

    s = sub.add_parser("repl", parents=[common], help="interactive evaluator")
    s.set_defaults(func=cmd_repl)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
