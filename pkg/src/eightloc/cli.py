"""Command-line front end.

Every command prints a JSON report (``"schema": 1``) and exits with

    0  property holds / build succeeded
    1  property fails (witness in the report)
    2  UNKNOWN verdicts present
    3  input or configuration error
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import warnings
from pathlib import Path

from . import __version__
from .complex import ComplexFormatError, NotFlagError, SimplicialComplex, diameter, dumps, is_flag, loads
from .conditions import (
    LocationStatus,
    check_sd_prime,
    check_sd_prime_all,
    is_k_large,
    is_locally_k_large,
    is_m_located,
)
from .cover import EDGE_RULES, CoverInvariantError, CoverState, build_cover, verify_covering
from .generators import generate
from .hyperbolicity import four_point_delta, max_interval_diameter
from .loops import DEFAULT_BUDGET

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3
SCHEMA = 1
THIN_BOUND = 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_input(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("input", nargs="?", help="complex file")
    src.add_argument("--gen", metavar="SPEC", help="generator spec instead of a file, e.g. 'cycle(6)'")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eightloc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        return p

    p = command("info", "counts, flagness, diameter")
    _add_input(p)

    p = command("check-location", "decide m-location")
    _add_input(p)
    p.add_argument("-m", type=int, default=8)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = command("check-klarge", "decide (local) k-largeness")
    _add_input(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--local", action="store_true", help="check every vertex link")

    p = command("check-sd", "check SD'_n(O)")
    _add_input(p)
    p.add_argument("--base", type=int, help="base vertex (default: every vertex)")
    p.add_argument("-n", type=int, help="radius (default: eccentricity of the base)")

    p = command("build-cover", "grow the truncated universal cover")
    _add_input(p)
    p.add_argument("--base", type=int, default=0)
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--emit-stages", metavar="DIR")
    p.add_argument("--edge-rule", choices=EDGE_RULES, default="literal")

    p = command("thinness", "largest geodesic-interval layer diameter")
    _add_input(p)

    p = command("delta", "exact four-point delta")
    _add_input(p)

    p = command("verify-hyperbolic", "check location, build the cover, measure it")
    _add_input(p)
    p.add_argument("-m", type=int, default=8)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--base", type=int, default=0)
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--emit-stages", metavar="DIR")
    p.add_argument("--edge-rule", choices=EDGE_RULES, default="literal")

    p = sub.add_parser("generate", help="write a generated complex in the text format")
    p.add_argument("spec")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    return parser


def _load(args) -> tuple[SimplicialComplex, dict]:
    if args.gen is not None:
        try:
            X = generate(args.gen)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        data = dumps(X).encode()
        meta = {"generator": args.gen}
    else:
        try:
            data = Path(args.input).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
        try:
            X = loads(data.decode("utf-8"))
        except (ComplexFormatError, UnicodeDecodeError) as exc:
            raise InputError(f"{args.input}: {exc}") from None
        meta = {"path": args.input}
    meta["sha256"] = hashlib.sha256(data).hexdigest()
    return X, meta


def _config(args) -> dict:
    skip = {"input", "gen", "output"}
    return {k.replace("_", "-"): v for k, v in sorted(vars(args).items()) if k not in skip}


def _need_base(X, base):
    if not 0 <= base < X.n_vertices:
        raise InputError(f"base vertex {base} out of range")


def _emit_stages(directory) -> callable:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)

    def write(state: CoverState):
        (out / f"stage_{state.stage:02d}.cx").write_text(dumps(state.btilde), encoding="utf-8")
        fmap = {"stage": state.stage, "base": state.base, "f": state.f, "layer_of": state.layer_of}
        (out / "f.json").write_text(json.dumps(fmap) + "\n", encoding="utf-8")
        classes = [
            {"vertex": v, "layer": state.layer_of[v], "z": members[0][1], "members": [list(m) for m in members]}
            for v, members in sorted(state.provenance.items())
        ]
        (out / "classes.json").write_text(json.dumps({"classes": classes}) + "\n", encoding="utf-8")

    return write


def _cover_section(state: CoverState) -> dict:
    sd = check_sd_prime(state.btilde, 0, max(state.stage - 1, 1))
    return {
        **state.summary(),
        "covering": verify_covering(state).to_dict(),
        "sd_prime_at_base": sd.to_dict(),
        "f": state.f,
    }


# -- commands -------------------------------------------------------------


def cmd_info(X, args):
    conn = X.is_connected()
    body = {
        "condition": "info",
        "status": "OK",
        "witnesses": [],
        "n_vertices": X.n_vertices,
        "n_edges": X.n_edges,
        "n_triangles": len(X.simplices(2)),
        "flag": is_flag(X),
        "connected": conn,
        "components": len(X.components()),
        "diameter": diameter(X) if conn else None,
    }
    return body, EXIT_OK


def _location_exit(status: LocationStatus) -> int:
    return {
        LocationStatus.LOCATED: EXIT_OK,
        LocationStatus.NOT_LOCATED: EXIT_FAIL,
        LocationStatus.UNKNOWN: EXIT_UNKNOWN,
    }[status]


def cmd_check_location(X, args):
    verdict = is_m_located(X, args.m, args.budget)
    return verdict.to_dict(), _location_exit(verdict.status)


def cmd_check_klarge(X, args):
    res = (is_locally_k_large if args.local else is_k_large)(X, args.k)
    return res.to_dict(), EXIT_OK if res.holds else EXIT_FAIL


def cmd_check_sd(X, args):
    if args.base is not None:
        _need_base(X, args.base)
        reports = {args.base: check_sd_prime(X, args.base, args.n)}
    else:
        reports = check_sd_prime_all(X, args.n)
    ok = all(r.ok for r in reports.values())
    witnesses = [{"base": O, **f.to_dict()} for O, r in reports.items() for f in r.failures]
    body = {
        "condition": "SD'" if args.base is None else f"SD'({args.base})",
        "status": "OK" if ok else "FAIL",
        "witnesses": witnesses,
        "radius_checked": {str(O): r.radius_checked for O, r in reports.items()},
    }
    return body, EXIT_OK if ok else EXIT_FAIL


def _build(X, args):
    _need_base(X, args.base)
    hook = _emit_stages(args.emit_stages) if args.emit_stages else None
    return build_cover(X, args.base, args.radius, check_location=False, on_stage=hook, edge_rule=args.edge_rule)


def cmd_build_cover(X, args):
    if not X.is_connected():
        raise InputError("cover construction needs a connected complex")
    try:
        state = _build(X, args)
    except CoverInvariantError as exc:
        return {"condition": "cover", "status": "INVARIANT_VIOLATION", "witnesses": [exc.to_dict()]}, EXIT_FAIL
    return {"condition": "cover", "status": "OK", "witnesses": [], "cover": _cover_section(state)}, EXIT_OK


def _connected(X):
    if not X.is_connected():
        raise InputError("metric measurements need a connected complex")


def cmd_thinness(X, args):
    _connected(X)
    value, witness = max_interval_diameter(X)
    thin = value <= THIN_BOUND
    body = {
        "condition": f"interval layers of diameter <= {THIN_BOUND}",
        "status": "THIN" if thin else "NOT_THIN",
        "witnesses": [witness] if not thin else [],
        "max_interval_diameter": value,
        "extremal": witness,
    }
    return body, EXIT_OK if thin else EXIT_FAIL


def cmd_delta(X, args):
    _connected(X)
    rep = four_point_delta(X, threads=args.threads)
    return {"condition": "four-point delta", "status": "MEASURED", "witnesses": [], **rep.to_dict()}, EXIT_OK


def cmd_verify_hyperbolic(X, args):
    if not X.is_connected():
        raise InputError("cover construction needs a connected complex")
    _need_base(X, args.base)
    verdict = is_m_located(X, args.m, args.budget)
    body = {"condition": "verify-hyperbolic", "location": verdict.to_dict()}
    if verdict.status is LocationStatus.NOT_LOCATED:
        body.update(status="FAIL", witnesses=verdict.to_dict()["witnesses"])
        return body, EXIT_FAIL
    try:
        state = _build(X, args)
    except CoverInvariantError as exc:
        body.update(status="FAIL", witnesses=[exc.to_dict()])
        return body, EXIT_FAIL
    body["cover"] = _cover_section(state)
    rep = four_point_delta(state.btilde, threads=args.threads)
    body["hyperbolicity"] = rep.to_dict()
    thin = rep.max_interval_diameter <= THIN_BOUND
    if not thin:
        status, code = "FAIL", EXIT_FAIL
    elif verdict.status is LocationStatus.UNKNOWN:
        status, code = "UNKNOWN", EXIT_UNKNOWN
    else:
        status, code = "PASS", EXIT_OK
    witnesses = [] if thin else [rep.interval_witness]
    body.update(status=status, witnesses=witnesses)
    return body, code


COMMANDS = {
    "info": cmd_info,
    "check-location": cmd_check_location,
    "check-klarge": cmd_check_klarge,
    "check-sd": cmd_check_sd,
    "build-cover": cmd_build_cover,
    "thinness": cmd_thinness,
    "delta": cmd_delta,
    "verify-hyperbolic": cmd_verify_hyperbolic,
}


def _write(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate":
        try:
            text = dumps(generate(args.spec))
        except ValueError as exc:
            print(f"eightloc: {exc}", file=sys.stderr)
            return EXIT_INPUT
        _write(text, args.output)
        return EXIT_OK

    report = {
        "schema": SCHEMA,
        "tool": "eightloc",
        "version": __version__,
        "command": args.command,
        "config": _config(args),
    }
    try:
        X, meta = _load(args)
        report["input"] = meta
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            body, code = COMMANDS[args.command](X, args)
    except (InputError, NotFlagError, ValueError) as exc:
        report.update(status="INPUT_ERROR", error=str(exc))
        _write(json.dumps(report, indent=2) + "\n", args.output)
        print(f"eightloc: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report.update(body)
    report["exit_code"] = code
    _write(json.dumps(report, indent=2) + "\n", args.output)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
