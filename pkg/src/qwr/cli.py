"""Command line surface.

One subcommand per operation; files are UTF-8 JSON written canonically so
identical runs produce identical bytes. Domain failures exit 1 with a JSON
error object on standard error; argparse handles usage errors with exit 2.
Set QWR_THREADS to cap internal parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cone import (
    ConeInput,
    build_b_complex,
    cone_code,
    reduce_cone,
    with_cycle_redundancies,
)
from .copygauge import x_reduce
from .errors import QwrError
from .fixtures import big_face_torus, punctured_sphere, steane, toric
from .io import canonical_json, code_to_dict, read_code, write_code
from .metrics import distance_estimate, distance_exact
from .model import encoded_dimension, is_reasonable, validate
from .pipeline import reduce_applic, reduce_full
from .randapplic import RandomCodeSpec, build_applic_code
from .robustify import connect, improve_soundness
from .thicken import (
    HeightAssignment,
    choose_heights_coloring,
    choose_heights_random,
    thicken,
)

__all__ = ["main"]


def _tool_header() -> dict:
    return {"name": "qwr", "version": __version__}


def _emit(doc: dict, path=None) -> None:
    text = canonical_json(dict(doc, tool=_tool_header()))
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_reports(path, reports) -> None:
    if path:
        _emit({"reports": [r.as_dict() for r in reports]}, path)


# ---------------------------------------------------------------------------
# subcommand bodies


def _cmd_validate(args) -> int:
    code = read_code(args.infile)
    params = validate(code)
    decision = is_reasonable(code)
    witness = None
    if not decision.ok:
        witness = {
            "z_row": decision.witness[0],
            "qubits": list(decision.witness[1]),
        }
    _emit(
        {
            "valid": True,
            "params": params.as_dict(),
            "reasonable": decision.ok,
            "witness": witness,
        },
        args.out,
    )
    return 0


def _cmd_params(args) -> int:
    code = read_code(args.infile)
    _emit({"params": validate(code).as_dict()}, args.out)
    return 0


def _cmd_distance(args) -> int:
    code = read_code(args.infile)
    if args.method == "exact":
        res = distance_exact(code, side=args.side, budget=args.budget)
    else:
        res = distance_estimate(
            code, side=args.side, trials=args.trials, seed=args.seed
        )
    _emit(
        {
            "distance": {
                "value": res.value,
                "method": res.method,
                "side": res.side,
                "witness": None if res.witness is None else list(res.witness),
            }
        },
        args.out,
    )
    return 0


def _cmd_copy_gauge(args) -> int:
    code = read_code(args.infile)
    out, plan, report = x_reduce(code)
    write_code(args.outfile, out)
    _write_reports(args.report, [report])
    return 0


def _cmd_thicken(args) -> int:
    code = read_code(args.infile)
    if args.strategy == "coloring":
        ell, heights = choose_heights_coloring(code)
    elif args.strategy == "uniform":
        ell = args.ell
        heights = HeightAssignment.uniform(ell, code.num_z_stabs)
    else:
        ell = args.ell
        heights = choose_heights_random(
            code, ell, args.target_w, seed=args.seed
        )
    out, report = thicken(code, ell, heights)
    write_code(args.outfile, out)
    _write_reports(args.report, [report])
    return 0


def _parse_direct(spec: str, code) -> tuple:
    if spec == "auto":
        if "interval_rows" in code.meta:
            return tuple(code.meta["interval_rows"])
        return ()
    if not spec:
        return ()
    return tuple(sorted({int(t) for t in spec.split(",")}))


def _cmd_cone(args) -> int:
    code = read_code(args.infile)
    supports = code.z_stabs.row_supports
    direct = _parse_direct(args.direct_z, code)
    if args.sets == "auto":
        chosen = [i for i in range(len(supports)) if i not in set(direct)]
        q_sets = [tuple(supports[i]) for i in chosen]
    else:
        with open(args.sets, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        q_sets = [tuple(sorted(set(s))) for s in doc]
    inp = ConeInput.build(code, direct, q_sets)
    complexes = [
        with_cycle_redundancies(build_b_complex(code, qs)[0]) for qs in q_sets
    ]
    cone, rep_cone = cone_code(inp, complexes)
    if args.ell_prime == "auto":
        out, rep_red = reduce_cone(
            cone, ell_prime=1, seed=args.seed, threshold=args.threshold
        )
        needed = rep_red.notes["ell_prime_needed"]
        if needed > 1:
            out, rep_red = reduce_cone(
                cone, ell_prime=needed, seed=args.seed, threshold=args.threshold
            )
    else:
        out, rep_red = reduce_cone(
            cone,
            ell_prime=int(args.ell_prime),
            seed=args.seed,
            threshold=args.threshold,
        )
    write_code(args.outfile, out)
    _write_reports(args.report, [rep_cone, rep_red])
    return 0


def _cmd_connect(args) -> int:
    code = read_code(args.infile)
    out, plan, report = connect(code)
    write_code(args.outfile, out)
    if args.plan:
        _emit({"plan": plan.as_dict()}, args.plan)
    _write_reports(args.report, [report])
    return 0


def _cmd_improve_soundness(args) -> int:
    code = read_code(args.infile)
    supports = code.z_stabs.row_supports
    if args.sets == "auto":
        q_sets = [tuple(s) for s in supports if s]
    else:
        with open(args.sets, "r", encoding="utf-8") as fh:
            q_sets = [tuple(sorted(set(s))) for s in json.load(fh)]
    graphs, report = improve_soundness(
        code, q_sets, args.target_h, seed=args.seed
    )
    _emit(
        {
            "graphs": [
                {
                    "num_vertices": g.num_vertices,
                    "edges": [list(e) for e in g.edges],
                }
                for g in graphs
            ],
            "report": report.as_dict(),
        },
        args.out,
    )
    return 0


def _cmd_reduce(args) -> int:
    code = read_code(args.infile)
    config = None
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    out, reports = reduce_full(code, config, seed=args.seed)
    write_code(args.outfile, out)
    _write_reports(args.report, reports)
    return 0


def _cmd_reduce_applic(args) -> int:
    spec = RandomCodeSpec(
        n=args.n, beta=args.beta, z_count=args.z_count, seed=args.seed
    )
    config = {"ell_factor": args.ell_factor}
    if args.ell is not None:
        config["ell"] = args.ell
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            config.update(json.load(fh))
    out, reports = reduce_applic(spec, config)
    write_code(args.outfile, out)
    _write_reports(args.report, reports)
    return 0


def _cmd_random(args) -> int:
    spec = RandomCodeSpec(
        n=args.n, beta=args.beta, z_count=args.z_count, seed=args.seed
    )
    code, diagnostics = build_applic_code(spec)
    write_code(args.outfile, code)
    if args.diagnostics:
        _emit({"diagnostics": diagnostics}, args.diagnostics)
    return 0


def _cmd_gen_fixture(args) -> int:
    if args.name == "toric":
        code = toric(args.size or 3)
    elif args.name == "steane":
        code = steane()
    elif args.name == "fig1":
        code = big_face_torus(args.size or 6)
    else:
        code = punctured_sphere(args.size or 3)
    write_code(args.outfile, code)
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwr",
        description="Weight reduction for CSS codes over GF(2).",
    )
    parser.add_argument(
        "--version", action="version", version=f"qwr {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        return p

    p = add("validate", _cmd_validate, help="check a code file and report params")
    p.add_argument("infile")
    p.add_argument("--out")

    p = add("params", _cmd_params, help="print the parameter ledger")
    p.add_argument("infile")
    p.add_argument("--out")

    p = add("distance", _cmd_distance, help="exact or estimated distance")
    p.add_argument("infile")
    p.add_argument("--side", choices=("x", "z", "both"), default="both")
    p.add_argument("--method", choices=("exact", "estimate"), default="exact")
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("--trials", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = add("copy-gauge", _cmd_copy_gauge, help="reduce X weight and degree")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.add_argument("--report")

    p = add("thicken", _cmd_thicken, help="interval product plus height choice")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.add_argument("--ell", type=int, default=2)
    p.add_argument(
        "--strategy", choices=("random", "coloring", "uniform"), default="random"
    )
    p.add_argument("--target-w", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")

    p = add("cone", _cmd_cone, help="cone chosen Z-supports and reduce")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.add_argument("--sets", default="auto")
    p.add_argument("--direct-z", default="auto")
    p.add_argument("--ell-prime", default="auto")
    p.add_argument("--threshold", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")

    p = add("connect", _cmd_connect, help="join disconnected Z-check supports")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.add_argument("--plan")
    p.add_argument("--report")

    p = add(
        "improve-soundness",
        _cmd_improve_soundness,
        help="augment set graphs into expanders",
    )
    p.add_argument("infile")
    p.add_argument("--target-h", type=float, required=True)
    p.add_argument("--sets", default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = add("reduce", _cmd_reduce, help="full reduction chain")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.add_argument("--config")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")

    p = add("reduce-applic", _cmd_reduce_applic, help="random draw end to end")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--z-count", type=int)
    p.add_argument("--ell-factor", type=float, default=1 / 16)
    p.add_argument("--ell", type=int)
    p.add_argument("--config")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--report")

    p = add("random", _cmd_random, help="sample the random sparse code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--z-count", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--diagnostics")

    p = add("gen-fixture", _cmd_gen_fixture, help="write a named fixture")
    p.add_argument(
        "name", choices=("toric", "steane", "fig1", "punctured-sphere")
    )
    p.add_argument("--size", type=int)
    p.add_argument("--out", dest="outfile", required=True)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QwrError, ValueError, OSError) as err:
        code = getattr(err, "code", "value-error")
        if isinstance(err, OSError):
            code = "io-error"
        details = getattr(err, "details", {})
        payload = {
            "error": {
                "code": code,
                "message": str(err),
                "details": details,
            }
        }
        print(json.dumps(payload, sort_keys=True, default=str), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
