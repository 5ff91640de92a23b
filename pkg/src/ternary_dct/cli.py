"""Command line front end.

Every subcommand is a thin client of the HTTP service.  By default the
requests run against the in-process app, so no server is needed; pass
--server URL to talk to a running instance instead (see README).

Exit codes: 0 success, 1 runtime failure (unreachable server, broken
image file, failed verification), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import asyncio
import base64
import csv
import io
import json
import os
import sys

import httpx

DEFAULT_SEED = 0


class ServiceClient:
    """Sends requests to a remote server, or straight into the
    in-process app when no server URL is given."""

    def __init__(self, server: str | None = None):
        self.server = server
        self._client = httpx.Client(base_url=server, timeout=600.0) if server else None

    def request(self, method: str, path: str, **kwargs) -> httpx.Response:
        if self._client is not None:
            return self._client.request(method, path, **kwargs)
        from .service.app import app

        async def run():
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(transport=transport, base_url="http://ternary-dct.local") as client:
                return await client.request(method, path, **kwargs)

        return asyncio.run(run())

    def close(self) -> None:
        if self._client is not None:
            self._client.close()


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _fail(resp: httpx.Response, exit_code: int = 2) -> int:
    try:
        detail = resp.json().get("detail", resp.text)
    except (ValueError, AttributeError):
        detail = resp.text
    if not isinstance(detail, str):
        detail = json.dumps(detail)
    print(f"error: {detail}", file=sys.stderr)
    return exit_code


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _derive_csv(body: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rank", "error", "additions", "matrix"])
    for rank, cand in enumerate(body["candidates"], start=1):
        flat = ";".join(" ".join(str(v) for v in row) for row in cand["matrix"])
        writer.writerow([rank, cand["error"], cand["additions"], flat])
    return buf.getvalue().rstrip("\n")


def _verify_csv(body: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["method_name", "error_energy", "additions", "multiplications", "total", "complexity_source"])
    for row in body["rows"]:
        writer.writerow(
            [
                row["method_name"],
                row["error_energy"],
                row["additions"],
                row["multiplications"],
                row["total"],
                row["complexity_source"],
            ]
        )
    return buf.getvalue().rstrip("\n")


def cmd_derive(args, client: ServiceClient) -> int:
    resp = client.request(
        "POST",
        "/derive",
        json={"target": args.target, "top_k": args.top_k, "jobs": args.jobs},
    )
    if resp.status_code != 200:
        return _fail(resp)
    if args.format == "csv":
        _emit(_derive_csv(resp.json()), args.output)
    else:
        _emit(resp.text, args.output)
    return 0


def cmd_verify(args, client: ServiceClient) -> int:
    resp = client.request("GET", "/verify")
    if resp.status_code != 200:
        return _fail(resp)
    body = resp.json()
    if args.format == "csv":
        _emit(_verify_csv(body), args.output)
    else:
        _emit(resp.text, args.output)
    return 0 if body["pass"] else 1


def _parse_vector(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: input is not valid JSON: {exc}", file=sys.stderr)
        return None
    return data


def cmd_transform1d(args, client: ServiceClient) -> int:
    try:
        data = _parse_vector(_read_text(args.input))
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2
    if data is None:
        return 2
    resp = client.request(
        "POST",
        "/transform1d",
        json={"target": args.target, "vector": data, "orthogonal": args.orthogonal},
    )
    if resp.status_code != 200:
        return _fail(resp)
    _emit(resp.text, args.output)
    return 0


def cmd_transform2d(args, client: ServiceClient) -> int:
    try:
        data = _parse_vector(_read_text(args.input))
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2
    if data is None:
        return 2
    resp = client.request(
        "POST",
        "/transform2d",
        json={"target": args.target, "block": data, "orthogonal": args.orthogonal},
    )
    if resp.status_code != 200:
        return _fail(resp)
    _emit(resp.text, args.output)
    return 0


def cmd_compress(args, client: ServiceClient) -> int:
    try:
        with open(args.input, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 1
    resp = client.request(
        "POST",
        "/compress",
        json={
            "target": args.target,
            "retained": args.retained,
            "pgm_base64": base64.b64encode(raw).decode("ascii"),
        },
    )
    if resp.status_code == 400:
        # the service rejected the image itself
        return _fail(resp, 1)
    if resp.status_code != 200:
        return _fail(resp)
    body = resp.json()
    try:
        with open(args.output, "wb") as fh:
            fh.write(base64.b64decode(body["pgm_base64"]))
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(body["report"]))
    return 0


def cmd_flowgraph(args, client: ServiceClient) -> int:
    resp = client.request("GET", "/flowgraph", params={"target": args.target, "format": args.format})
    if resp.status_code != 200:
        return _fail(resp)
    _emit(resp.json()["content"], args.output)
    return 0


def cmd_bench(args, client: ServiceClient) -> int:
    seed_text = os.environ.get("TERNARY_DCT_SEED", str(DEFAULT_SEED))
    try:
        seed = int(seed_text)
    except ValueError:
        print(f"error: TERNARY_DCT_SEED must be an integer, got {seed_text!r}", file=sys.stderr)
        return 2
    resp = client.request(
        "POST",
        "/bench",
        json={"target": args.target, "iterations": args.iterations, "repeats": args.repeats, "seed": seed},
    )
    if resp.status_code != 200:
        return _fail(resp)
    _emit(resp.text, args.output)
    return 0


def _add_target(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-t", "--target", choices=("ii", "iv"), required=True, help="transform family")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ternary-dct",
        description="multiplierless 4-point DCT approximations: search, verify, transform, demo",
    )
    parser.add_argument("--server", metavar="URL", default=None, help="send requests to a running service instead of in-process")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("derive", help="exhaustive search for the best ternary transforms")
    _add_target(p)
    p.add_argument("--top-k", type=int, default=1, help="how many ranked candidates to return")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (result does not depend on this)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", metavar="PATH", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", help="recompute the error/complexity table and check it")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform1d", help="apply a 4-point kernel to a JSON vector")
    _add_target(p)
    p.add_argument("--input", metavar="PATH", default="-", help="JSON file with 4 integers, - for stdin")
    p.add_argument("--orthogonal", action="store_true", help="also report the row-scaled output")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_transform1d)

    p = sub.add_parser("transform2d", help="apply the 2-D transform to a JSON 4x4 block")
    _add_target(p)
    p.add_argument("--input", metavar="PATH", default="-", help="JSON file with a 4x4 integer block, - for stdin")
    p.add_argument("--orthogonal", action="store_true", help="also report the fold-scaled output")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_transform2d)

    p = sub.add_parser("compress", help="transform-code a PGM image and report PSNR")
    p.add_argument("input", metavar="INPUT.pgm")
    _add_target(p)
    p.add_argument("--retained", type=int, required=True, help="coefficients kept per block, 1..16 in zig-zag order")
    p.add_argument("--output", metavar="OUTPUT.pgm", required=True, help="where to write the reconstruction")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("flowgraph", help="export a kernel flow graph")
    _add_target(p)
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_flowgraph)

    p = sub.add_parser("bench", help="time the 2-D transform on seeded random blocks")
    _add_target(p)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    client = ServiceClient(args.server)
    try:
        return args.func(args, client)
    except httpx.HTTPError as exc:
        print(f"error: service request failed: {exc}", file=sys.stderr)
        return 1
    finally:
        client.close()


if __name__ == "__main__":
    sys.exit(main())
