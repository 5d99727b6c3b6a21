"""Command-line client for the analysis service.

Runs the service handlers in-process by default; with --server URL the same
request goes to a running instance over HTTP instead. Exit codes: 0 success
(and locally distinguishable for analyze), 2 locally indistinguishable,
3 oracle disagreement, 1 any error.

The LOCC_LAB_TOL environment variable overrides the default tolerance; an
explicit --tol beats both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .protocol import format_report_text
from .service import handlers, models

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INDISTINGUISHABLE = 2
EXIT_DISAGREEMENT = 3


class CliError(Exception):
    """Any failure the CLI should report on stderr and exit 1 for."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors, which would collide with
    # the "indistinguishable" exit code; route through CliError instead.
    def error(self, message):
        raise CliError(message)


def _default_tol() -> float:
    raw = os.environ.get("LOCC_LAB_TOL")
    if raw is None:
        return 1e-8
    try:
        value = float(raw)
    except ValueError:
        raise CliError(f"LOCC_LAB_TOL is not a number: {raw!r}")
    if value <= 0:
        raise CliError(f"LOCC_LAB_TOL must be positive: {raw!r}")
    return value


def _add_common(sub: argparse.ArgumentParser, with_format: bool = True) -> None:
    sub.add_argument("--tol", type=float, default=None, help="numeric tolerance (default 1e-8, or LOCC_LAB_TOL)")
    if with_format:
        sub.add_argument("--format", choices=("text", "json"), default="text", help="output rendering")
    sub.add_argument("--out", type=Path, default=None, help="write output to this file instead of stdout")
    sub.add_argument("--server", default=None, help="base URL of a running service instance")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="locc-lab", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("analyze", help="classify a product set and synthesize its protocol")
    p.add_argument("--builtin", help="builtin corpus name")
    p.add_argument("--input", type=Path, help="path to a product-set JSON document")
    p.add_argument("--max-rounds", type=int, default=None, help="round budget override")
    _add_common(p)

    p = commands.add_parser("quantumness", help="non-commutativity of an operator family")
    p.add_argument("--builtin", help="builtin corpus name (needs --side)")
    p.add_argument("--input", type=Path, help="JSON document: product set, qc state, or ensemble")
    p.add_argument("--rho-x", type=float, default=None, help="evaluate the builtin one-parameter family at x")
    p.add_argument("--side", choices=("A", "B"), default=None, help="which local side of a product set")
    p.add_argument("--states", default=None, help="comma-separated state labels to restrict to")
    _add_common(p)

    p = commands.add_parser("curve", help="measure of the one-parameter family on a [0,1] grid")
    p.add_argument("--samples", type=int, default=101, help="grid size (default 101)")
    _add_common(p)

    p = commands.add_parser("oracle", help="cross-check the procedure against the exhaustive witness search")
    p.add_argument(
        "--builtin",
        action="append",
        default=None,
        help="builtin corpus to check (repeatable; default: all, unless --random is given)",
    )
    p.add_argument("--random", type=int, default=None, metavar="COUNT", help="sweep COUNT random complete sets")
    p.add_argument("--dims", default="3x3", help="random-sweep grid, e.g. 3x4 (default 3x3)")
    p.add_argument("--seed", type=int, default=0, help="random-sweep base seed")
    p.add_argument("--depth", type=int, default=4, help="random-sweep tiling depth")
    _add_common(p)

    p = commands.add_parser("examples", help="dump builtin corpora as JSON documents")
    p.add_argument("--name", default=None, help="single corpus to dump (default: all)")
    _add_common(p, with_format=False)
    return parser


def _read_json(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}")


def _remote(server: str, method: str, path: str, payload: dict | None = None) -> dict:
    import httpx

    url = server.rstrip("/") + path
    try:
        resp = httpx.request(method, url, json=payload, timeout=300.0)
    except httpx.HTTPError as exc:
        raise CliError(f"cannot reach {url}: {exc}")
    if resp.status_code >= 400:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise CliError(f"server returned {resp.status_code}: {detail}")
    return resp.json()


def _dispatch(args, path: str, request_model, handler, response_cls):
    if args.server:
        data = _remote(args.server, "POST", path, request_model.model_dump(mode="json"))
        return response_cls.model_validate(data)
    return handler(request_model)


def _emit(args, text: str) -> None:
    if args.out is not None:
        try:
            args.out.write_text(text)
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc}")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _tol(args) -> float:
    return args.tol if args.tol is not None else _default_tol()


def cmd_analyze(args) -> int:
    if (args.builtin is None) == (args.input is None):
        raise CliError("provide exactly one of --builtin or --input")
    req = models.AnalyzeRequest(
        builtin=args.builtin,
        document=_read_json(args.input) if args.input else None,
        tol=_tol(args),
        max_rounds=args.max_rounds,
    )
    resp = _dispatch(args, "/analyze", req, handlers.analyze, models.AnalyzeResponse)
    if args.format == "json":
        _emit(args, resp.model_dump_json(indent=2) + "\n")
    else:
        m, n = resp.dims
        head = [
            f"Product set: {m} x {n}, {resp.n_states} states, "
            + ("complete" if resp.complete else "not complete"),
            f"Classification: {resp.classification} "
            + ("(distinguishable by class alone)" if resp.guaranteed_by_class else "(class gives no guarantee)"),
        ]
        report = {
            "verdict": resp.verdict,
            "caveat": resp.caveat,
            "rounds": resp.rounds,
            "labels": resp.labels,
            "stuck_leaves": resp.stuck_leaves,
            "partition": resp.partition,
            "tree": resp.tree.model_dump(),
        }
        _emit(args, "\n".join(head) + "\n" + format_report_text(report) + "\n")
    return EXIT_OK if resp.verdict == "distinguishable" else EXIT_INDISTINGUISHABLE


def cmd_quantumness(args) -> int:
    sources = [args.builtin is not None, args.input is not None, args.rho_x is not None]
    if sum(sources) != 1:
        raise CliError("provide exactly one of --builtin, --input, or --rho-x")
    document = qc = ensemble = None
    if args.input is not None:
        doc = _read_json(args.input)
        kind = doc.get("kind", "pops") if isinstance(doc, dict) else "pops"
        if kind == "qc":
            qc = doc
        elif kind == "ensemble":
            ensemble = doc
        else:
            document = doc
    req = models.QuantumnessRequest(
        builtin=args.builtin,
        document=document,
        qc=qc,
        ensemble=ensemble,
        rho_x=args.rho_x,
        side=args.side,
        states=args.states.split(",") if args.states else None,
        tol=_tol(args),
    )
    resp = _dispatch(args, "/quantumness", req, handlers.quantumness, models.QuantumnessResponse)
    if args.format == "json":
        _emit(args, resp.model_dump_json(indent=2) + "\n")
    else:
        lines = [
            f"Scope: {resp.scope} ({resp.count} operators)",
            f"Total N: {resp.total!r}",
        ]
        if resp.pair_terms:
            lines.append("Pair terms:")
            for t in resp.pair_terms:
                li = t.label_i if t.label_i is not None else f"#{t.i}"
                lj = t.label_j if t.label_j is not None else f"#{t.j}"
                lines.append(f"  {li} x {lj}: {t.value!r}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_curve(args) -> int:
    req = models.CurveRequest(samples=args.samples, tol=_tol(args))
    resp = _dispatch(args, "/curve", req, handlers.curve, models.CurveResponse)
    if args.format == "json":
        _emit(args, resp.model_dump_json(indent=2) + "\n")
    else:
        _emit(args, resp.csv)
    return EXIT_OK


def cmd_oracle(args) -> int:
    random = None
    if args.random is not None:
        try:
            m, n = (int(x) for x in args.dims.lower().split("x"))
        except ValueError:
            raise CliError(f"--dims expects MxN, got {args.dims!r}")
        random = models.RandomSweep(count=args.random, dims=(m, n), seed=args.seed, depth=args.depth)
    req = models.OracleRequest(builtins=args.builtin, random=random, tol=_tol(args))
    resp = _dispatch(args, "/oracle", req, handlers.oracle, models.OracleResponse)
    if args.format == "json":
        _emit(args, resp.model_dump_json(indent=2) + "\n")
    else:
        lines = []
        for c in resp.cases:
            lines.append(
                f"{c.name} ({c.dims[0]}x{c.dims[1]}): procedure="
                + ("distinguishable" if c.procedure_distinguishable else "indistinguishable")
                + f" witness={'yes' if c.witness_found else 'no'}"
                + f" agree={'yes' if c.agree else 'NO'}"
            )
        lines.append(f"Cases: {len(resp.cases)}, disagreements: {resp.disagreements}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if resp.disagreements == 0 else EXIT_DISAGREEMENT


def cmd_examples(args) -> int:
    if args.server:
        if args.name is not None:
            doc = _remote(args.server, "GET", f"/corpora/{args.name}")
        else:
            names = _remote(args.server, "GET", "/corpora")["names"]
            doc = {name: _remote(args.server, "GET", f"/corpora/{name}") for name in names}
    else:
        from .corpora import builtin_document, builtin_names

        try:
            if args.name is not None:
                doc = builtin_document(args.name)
            else:
                doc = {name: builtin_document(name) for name in builtin_names()}
        except KeyError as exc:
            raise CliError(str(exc.args[0]))
    _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


_COMMANDS = {
    "analyze": cmd_analyze,
    "quantumness": cmd_quantumness,
    "curve": cmd_curve,
    "oracle": cmd_oracle,
    "examples": cmd_examples,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001 - every failure maps to exit 1
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
