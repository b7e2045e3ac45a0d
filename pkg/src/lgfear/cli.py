"""Command-line front end.

The CLI is a thin client over the HTTP service: by default it mounts the
FastAPI app in-process (no socket), and with --server-url it talks to a
remote instance, so both paths exercise the same request/response schemas.

Exit codes: 0 success, 2 usage or validation error, 3 domain error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

from .equilibria import critical_fear
from .errors import DomainError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_NUMERICAL = 4


def _request(args: argparse.Namespace, method: str, path: str, payload: dict | None) -> httpx.Response:
    if args.server_url:
        with httpx.Client(base_url=args.server_url, timeout=600.0) as client:
            return client.request(method, path, json=payload)

    async def _run() -> httpx.Response:
        from .service.app import app  # deferred: keep --help fast

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://service") as client:
            return await client.request(method, path, json=payload)

    return asyncio.run(_run())


def _fail(resp: httpx.Response) -> int:
    """Print the service error and return the matching exit code."""
    try:
        body = resp.json()
    except ValueError:
        body = {"message": resp.text}
    message = body.get("message") or body.get("detail") or resp.text
    print(f"error: {message}", file=sys.stderr)
    if resp.status_code == 422:
        return EXIT_USAGE
    if resp.status_code == 400 and body.get("code") == "domain":
        return EXIT_DOMAIN
    return EXIT_NUMERICAL


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _params_payload(args: argparse.Namespace) -> dict:
    return {"m": args.m, "a": args.a, "lam": args.lam, "s": args.s}


def _cmd_analyze(args: argparse.Namespace) -> int:
    if args.at_fold:
        try:
            args.lam = critical_fear(args.m, args.a)
        except DomainError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
    payload = {"params": _params_payload(args), "include_errata": not args.no_errata}
    resp = _request(args, "POST", "/analyze", payload)
    if resp.status_code != 200:
        return _fail(resp)
    _write_out(json.dumps(resp.json(), indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    payload = {
        "params": _params_payload(args),
        "axis": args.axis,
        "start": args.start,
        "stop": args.to,
        "steps": args.steps,
        "jobs": args.jobs,
        "measure_amplitude": args.measure_amplitude,
    }
    resp = _request(args, "POST", "/sweep", payload)
    if resp.status_code != 200:
        return _fail(resp)
    body = resp.json()
    # render locally so file output is byte-identical across transports
    from .analysis import SweepRow, sweep_to_csv

    rows = [SweepRow(**row) for row in body["rows"]]
    _write_out(sweep_to_csv(rows), args.out)
    if args.plot_script:
        from .analysis import sweep_plot_script

        target = args.out if args.out else "sweep.csv"
        with open(args.plot_script, "w") as fh:
            fh.write(sweep_plot_script(target, args.axis))
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    payload = {
        "params": _params_payload(args),
        "x0": args.x0,
        "y0": args.y0,
        "t_end": args.t_end,
        "rtol": args.rtol,
        "atol": args.atol,
    }
    resp = _request(args, "POST", "/simulate", payload)
    if resp.status_code != 200:
        return _fail(resp)
    body = resp.json()
    _write_out(body["csv"], args.out)
    print(f"terminal status: {body['terminal_status']}", file=sys.stderr)
    if body["terminal_status"] == "StepBudget":
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_errata(args: argparse.Namespace) -> int:
    resp = _request(args, "GET", "/errata", None)
    if resp.status_code != 200:
        return _fail(resp)
    _write_out(json.dumps(resp.json(), indent=2) + "\n", args.out)
    return EXIT_OK


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--m", type=float, required=True, help="Allee threshold (0 < m < 1)")
    sub.add_argument("--a", type=float, required=True, help="interspecific pressure")
    sub.add_argument("--lam", type=float, required=True, help="fear intensity")
    sub.add_argument("--s", type=float, required=True, help="predator growth rate")


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    sub.add_argument("--server-url", default=None, help="remote service URL (default in-process)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lgfear",
        description="Equilibrium, stability and bifurcation analysis of a fear-modified Leslie-Gower model",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    analyze = subs.add_parser("analyze", help="single-point analysis report (JSON)")
    _add_param_flags(analyze)
    analyze.add_argument("--at-fold", action="store_true", help="replace lam with the fold value for these m, a")
    analyze.add_argument("--no-errata", action="store_true", help="omit the errata section")
    _add_common_flags(analyze)
    analyze.set_defaults(func=_cmd_analyze)

    swp = subs.add_parser("sweep", help="parameter sweep producing bifurcation-diagram CSV")
    _add_param_flags(swp)
    swp.add_argument("--axis", required=True, choices=["lam", "s", "a", "m"])
    swp.add_argument("--from", dest="start", type=float, required=True, help="grid start (inclusive)")
    swp.add_argument("--to", type=float, required=True, help="grid end (inclusive)")
    swp.add_argument("--steps", type=int, required=True, help="number of grid points (>= 2)")
    swp.add_argument("--jobs", type=int, default=1, help="parallel evaluation cap")
    swp.add_argument("--measure-amplitude", action="store_true", help="measure cycle amplitudes where present")
    swp.add_argument("--plot-script", default=None, help="also write a gnuplot script to this path")
    _add_common_flags(swp)
    swp.set_defaults(func=_cmd_sweep)

    sim = subs.add_parser("simulate", help="integrate a trajectory and emit t,x,y CSV")
    _add_param_flags(sim)
    sim.add_argument("--x0", type=float, required=True)
    sim.add_argument("--y0", type=float, required=True)
    sim.add_argument("--t-end", type=float, required=True)
    sim.add_argument("--rtol", type=float, default=1e-8)
    sim.add_argument("--atol", type=float, default=1e-10)
    _add_common_flags(sim)
    sim.set_defaults(func=_cmd_simulate)

    err = subs.add_parser("errata", help="computed disagreements with the published analysis")
    _add_common_flags(err)
    err.set_defaults(func=_cmd_errata)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # reject obviously unusable ranges before any request is made
    if args.command == "sweep" and not (args.to > args.start):
        parser.error("--to must exceed --from")
    if args.command == "simulate" and not (args.t_end > 0.0):
        parser.error("--t-end must be positive")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
