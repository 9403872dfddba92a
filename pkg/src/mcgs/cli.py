"""Command-line client for the synthesis service.

All domain work happens behind the HTTP API.  By default the CLI talks to
an in-process instance of the service app; pass ``--server`` to target a
running deployment instead.

Exit codes: 0 success / verification pass, 1 verification failure,
2 usage or request error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

DEFAULT_SEED = 0xC0FFEE


def _positive_int(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return n


def _terms(value: str) -> list[tuple[float, float]]:
    out = []
    for chunk in value.split(","):
        try:
            a, b = chunk.split(":")
            out.append((float(a), float(b)))
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"bad term {chunk!r}; expected coefficient:divisor"
            )
    if not out:
        raise argparse.ArgumentTypeError("empty term list")
    return out


def _n_list(value: str) -> list[int]:
    try:
        ns = [int(x) for x in value.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n list {value!r}")
    if not ns:
        raise argparse.ArgumentTypeError("empty n list")
    return ns


def _geom(value: str) -> tuple[int, int, int]:
    try:
        start, stop, points = (int(x) for x in value.split(":"))
        return start, stop, points
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad geometric range {value!r}; use start:stop:points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcgs", description="Multi-controlled gate synthesis client"
    )
    parser.add_argument("--server", help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="synthesize a multi-controlled X circuit")
    p_synth.add_argument("--n", type=_positive_int, required=True)
    p_synth.add_argument("--method", default="auto",
                         choices=["linear", "original", "optimized", "auto"])
    p_synth.add_argument("--base-threshold", type=int, default=None)
    p_synth.add_argument("--linear-cutover", type=int, default=None)
    p_synth.add_argument("--out", help="write the circuit text here")

    p_verify = sub.add_parser("verify", help="check a synthesized circuit against the oracle")
    p_verify.add_argument("target", nargs="?", default="mcx", choices=["mcx", "su2", "u2"])
    p_verify.add_argument("--n", type=_positive_int, required=True)
    p_verify.add_argument("--method", default="optimized",
                          choices=["linear", "original", "optimized", "auto"])
    p_verify.add_argument("--mode", default="auto", choices=["auto", "exhaustive", "sampled"])
    p_verify.add_argument("--samples", type=_positive_int, default=1000)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--base-threshold", type=int, default=None)
    p_verify.add_argument("--theta", type=float, default=None, help="su2: verify C^n Ry(theta)")
    p_verify.add_argument("--epsilon", type=float, default=1e-4, help="u2: error budget")

    p_bench = sub.add_parser("bench", help="metric sweep over methods and control counts")
    grp = p_bench.add_mutually_exclusive_group(required=True)
    grp.add_argument("--n-list", type=_n_list)
    grp.add_argument("--geom", type=_geom, help="start:stop:points geometric range")
    p_bench.add_argument("--methods", type=lambda s: s.split(","),
                         default=["linear", "original", "optimized"])
    p_bench.add_argument("--csv", required=True, help="output CSV path")
    p_bench.add_argument("--svg", help="optional SVG chart path")
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--measure-time", action="store_true",
                         help="record wall-clock times (CSV no longer byte-stable)")

    p_an = sub.add_parser("analyze", help="exponents, crossovers, depth prediction")
    an_sub = p_an.add_subparsers(dest="analysis", required=True)

    p_exp = an_sub.add_parser("exponent")
    p_exp.add_argument("--terms", type=_terms, required=True,
                       help="comma-separated coefficient:divisor pairs")

    p_cross = an_sub.add_parser("crossover")
    p_cross.add_argument("--a", required=True, dest="method_a",
                         choices=["linear", "original", "optimized", "auto"])
    p_cross.add_argument("--b", required=True, dest="method_b",
                         choices=["linear", "original", "optimized", "auto"])
    p_cross.add_argument("--metric", default="lowered_depth",
                         choices=["abstract_depth", "lowered_depth", "cx_count"])
    p_cross.add_argument("--min", type=_positive_int, default=4, dest="n_min")
    p_cross.add_argument("--max", type=_positive_int, required=True, dest="n_max")

    p_pred = an_sub.add_parser("predict")
    p_pred.add_argument("--n", type=_positive_int, required=True)
    p_pred.add_argument("--variant", default="original", choices=["original", "optimized"])
    p_pred.add_argument("--base-threshold", type=int, default=16)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from starlette.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("MCGS_SEED")
    return int(env) if env else DEFAULT_SEED


def _post(client, path: str, payload: dict) -> tuple[int, dict]:
    resp = client.post(path, json=payload)
    try:
        body = resp.json()
    except ValueError:
        body = {"detail": resp.text}
    return resp.status_code, body


def _fail(body: dict) -> int:
    print(f"error: {body.get('detail', body)}", file=sys.stderr)
    return 2


def _cmd_synth(client, args) -> int:
    payload = {
        "n": args.n,
        "method": args.method,
        "base_threshold": args.base_threshold,
        "linear_cutover": args.linear_cutover,
        "include_qasm": bool(args.out),
    }
    status, body = _post(client, "/synth", payload)
    if status != 200:
        return _fail(body)
    m = body["metrics"]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body["qasm"])
    print(
        f"n={m['n']} method={m['method']} width={m['width']} "
        f"abstract_depth={m['abstract_depth']} lowered_depth={m['lowered_depth']} "
        f"cx_count={m['cx_count']} total_gates={m['total_gates']} ancillas={m['ancillas']}"
    )
    return 0


def _cmd_verify(client, args) -> int:
    if args.target == "mcx":
        payload = {
            "n": args.n,
            "method": args.method,
            "mode": args.mode,
            "samples": args.samples,
            "seed": _seed(args),
            "base_threshold": args.base_threshold,
        }
        status, body = _post(client, "/verify/mcx", payload)
        if status != 200:
            return _fail(body)
        print(f"mode={body['mode']} checked={body['checked']} passed={body['passed']}")
        for f in body.get("failures", []):
            print(f"FAIL input={f['input']:#x} expected={f['expected']:#x} got={f['got']:#x}")
        return 0 if body["passed"] else 1
    if args.target == "su2":
        payload = {"n": args.n, "theta": args.theta, "seed": _seed(args)}
        status, body = _post(client, "/verify/su2", payload)
    else:
        payload = {"n": args.n, "epsilon": args.epsilon, "seed": _seed(args)}
        status, body = _post(client, "/verify/u2", payload)
    if status != 200:
        return _fail(body)
    line = (
        f"mode={body['mode']} passed={body['passed']} "
        f"max_distance={body['max_distance']:.3e} tolerance={body['tolerance']:.3e}"
    )
    if body.get("steps") is not None:
        line += f" steps={body['steps']} residual={body['residual_error']:.3e}"
    print(line)
    return 0 if body["passed"] else 1


def _cmd_bench(client, args) -> int:
    if args.n_list:
        ns = args.n_list
    else:
        from .bench import geometric_range

        ns = geometric_range(*args.geom)
    payload = {
        "ns": ns,
        "methods": args.methods,
        "seed": _seed(args),
        "measure_time": args.measure_time,
    }
    status, body = _post(client, "/bench", payload)
    if status != 200:
        return _fail(body)
    try:
        with open(args.csv, "w") as fh:
            fh.write(body["csv"])
        if args.svg:
            from .bench import BenchRow, svg_chart

            rows = [BenchRow(**r) for r in body["rows"]]
            with open(args.svg, "w") as fh:
                fh.write(svg_chart(rows))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(body['rows'])} rows to {args.csv}")
    return 0


def _cmd_analyze(client, args) -> int:
    if args.analysis == "exponent":
        status, body = _post(client, "/analyze/exponent", {"terms": args.terms})
        if status != 200:
            return _fail(body)
        print(f"{body['alpha']:.6f}")
        return 0
    if args.analysis == "crossover":
        payload = {
            "metric": args.metric,
            "method_a": args.method_a,
            "method_b": args.method_b,
            "n_min": args.n_min,
            "n_max": args.n_max,
        }
        status, body = _post(client, "/analyze/crossover", payload)
        if status != 200:
            return _fail(body)
        print(body["crossover"] if body["crossover"] is not None else "none")
        return 0
    payload = {"n": args.n, "variant": args.variant, "base_threshold": args.base_threshold}
    status, body = _post(client, "/analyze/predict", payload)
    if status != 200:
        return _fail(body)
    print(body["depth"])
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    client = _client(args.server)
    try:
        if args.command == "synth":
            return _cmd_synth(client, args)
        if args.command == "verify":
            return _cmd_verify(client, args)
        if args.command == "bench":
            return _cmd_bench(client, args)
        return _cmd_analyze(client, args)
    finally:
        client.close()


if __name__ == "__main__":
    sys.exit(main())
