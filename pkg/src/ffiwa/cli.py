"""Thin command-line client for the service.

Every subcommand builds a JSON request and sends it to the HTTP service:
either a remote one (``--server http://...``) or an in-process instance of
the app (the default, no network involved).  Reports are printed as
canonical JSON; fix the seed and the output is byte-identical across runs.

Exit codes: 0 success, 1 failed verification/golden mismatch or domain
error, 2 malformed input.
"""

from __future__ import annotations

import asyncio
import json
import pathlib
import sys
from typing import Optional

import click
import httpx

from .reporting import dumps


def _call(server: Optional[str], path: str, payload: dict) -> tuple[int, dict]:
    if server:
        with httpx.Client(base_url=server, timeout=None) as client:
            resp = client.post(path, json=payload)
            return resp.status_code, resp.json()

    async def go():
        from .service.app import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://ffiwa.local", timeout=None
        ) as client:
            resp = await client.post(path, json=payload)
            return resp.status_code, resp.json()

    return asyncio.run(go())


def _emit(ctx, status: int, body: dict):
    pretty = ctx.obj.get("pretty", False)
    out = dumps(body, pretty=pretty)
    target = ctx.obj.get("output")
    if target:
        pathlib.Path(target).write_text(out + "\n")
    else:
        click.echo(out)
    if status == 400:
        sys.exit(2)
    if status >= 401:
        sys.exit(1)


def _load_curve_file(path: str) -> dict:
    text = pathlib.Path(path).read_bytes()
    if path.endswith(".toml"):
        try:
            import tomllib as toml_loader
        except ModuleNotFoundError:
            import tomli as toml_loader

        return toml_loader.loads(text.decode())
    return json.loads(text)


@click.group()
@click.option("--server", default=None, help="URL of a running service; default in-process")
@click.option("--pretty", is_flag=True, help="indent the JSON output")
@click.option("--output", default=None, help="write the report to a file")
@click.pass_context
def main(ctx, server, pretty, output):
    """Exact invariants of elliptic curves over rational function fields."""
    ctx.ensure_object(dict)
    ctx.obj.update(server=server, pretty=pretty, output=output)


@main.command("theorem-a")
@click.option("--p", required=True, type=int)
@click.option("--ew", default=1, type=int)
@click.option("--nv", required=True, type=int)
@click.option("--lambda-v", required=True, type=int)
@click.option("--resdeg", default=1, type=int)
@click.option("--cw-trivial", is_flag=True)
@click.option("--gamma-nonzero/--gamma-zero", default=True)
@click.pass_context
def theorem_a(ctx, p, ew, nv, lambda_v, resdeg, cw_trivial, gamma_nonzero):
    """Two-sided local cohomology bounds for a supersingular local datum."""
    status, body = _call(
        ctx.obj["server"],
        "/theorem-a",
        {
            "p": p,
            "ew": ew,
            "nv": nv,
            "lambda_v": lambda_v,
            "resdeg": resdeg,
            "cw_trivial": cw_trivial,
            "gamma_nonzero": gamma_nonzero,
        },
    )
    _emit(ctx, status, body)


@main.command("as-conductor")
@click.option("--p", required=True, type=int)
@click.option("--q", required=True, type=int)
@click.option("--kappa", required=True, help="rational function of t")
@click.option("--place", default=None, help='monic irreducible or "inf"; default (t)')
@click.pass_context
def as_conductor(ctx, p, q, kappa, place):
    """Classify a degree-p Artin-Schreier class at a place: lambda, conductor."""
    status, body = _call(
        ctx.obj["server"], "/as-conductor", {"p": p, "q": q, "kappa": kappa, "place": place}
    )
    _emit(ctx, status, body)


@main.command("curve-info")
@click.argument("curve_file")
@click.option("--degree-bound", default=None, type=int)
@click.pass_context
def curve_info(ctx, curve_file, degree_bound):
    """Discriminant, reductions and supersingular places of a curve file."""
    status, body = _call(
        ctx.obj["server"],
        "/curve-info",
        {"curve": _load_curve_file(curve_file), "degree_bound": degree_bound},
    )
    _emit(ctx, status, body)


@main.command("lfunction")
@click.argument("curve_file")
@click.option("--twist", default=None, help="Artin-Schreier twist class (char 2)")
@click.option("--window", default=None, type=int)
@click.pass_context
def lfunction(ctx, curve_file, twist, window):
    """Exact L-polynomial (coefficients, degree, theta, exact value at 1)."""
    status, body = _call(
        ctx.obj["server"],
        "/lfunction",
        {"curve": _load_curve_file(curve_file), "twist": twist, "window": window},
    )
    _emit(ctx, status, body)


@main.command("mu")
@click.argument("curve_file")
@click.option("--genus", default=0, type=int, help="genus of the base function field")
@click.option("--window", default=None, type=int)
@click.pass_context
def mu(ctx, curve_file, genus, window):
    """mu-invariant of the unramified tower from deg(Delta), genus and theta."""
    status, body = _call(
        ctx.obj["server"],
        "/mu",
        {"curve": _load_curve_file(curve_file), "genus": genus, "window": window},
    )
    _emit(ctx, status, body)


@main.command("audit")
@click.argument("scenario_file")
@click.pass_context
def audit(ctx, scenario_file):
    """Consistency audit of mu/(p)-rank inequalities from a scenario file."""
    status, body = _call(ctx.obj["server"], "/audit", _load_curve_file(scenario_file))
    _emit(ctx, status, body)


@main.command("verify")
@click.option("--suite", required=True,
              type=click.Choice(["units", "asymp", "jordan", "as"]))
@click.option("--seed", default=0, type=int)
@click.pass_context
def verify(ctx, suite, seed):
    """Run a named oracle suite; nonzero exit if any check fails."""
    status, body = _call(ctx.obj["server"], "/verify", {"suite": suite, "seed": seed})
    _emit(ctx, status, body)
    if not body.get("pass", False):
        sys.exit(1)


@main.command("examples")
@click.option("--section", required=True, type=click.Choice(["5.1", "5.2", "5.3"]))
@click.pass_context
def examples(ctx, section):
    """Replay a worked-example set and diff against the golden fixture."""
    status, body = _call(ctx.obj["server"], "/examples", {"section": section})
    _emit(ctx, status, body)
    if not body.get("pass", False):
        sys.exit(1)


@main.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8712, type=int)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("ffiwa.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
