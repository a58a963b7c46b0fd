"""Command line entry point: ``stsflow gen|johnson|flow|crc ...``.

Every JSON document goes to stdout (or ``-o``) and is deterministic for fixed
inputs and seeds. A one-line status with the elapsed time goes to stderr
unless ``--quiet`` is given. Exit codes: 0 ok, 2 infeasible/none, 1 error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import crc, designs, flows, johnson_min, spectra
from .exact import format_rational

OK, ERROR, INFEASIBLE = 0, 1, 2


class Infeasible(Exception):
    """A valid negative answer; carries the JSON payload to print."""

    def __init__(self, payload):
        super().__init__("infeasible")
        self.payload = payload


def load_schema(name: str) -> dict:
    """JSON schema shipped with the package, e.g. ``load_schema("flow_certificate")``."""
    from importlib import resources

    return json.loads(resources.files("stsflow").joinpath("schemas", f"{name}.schema.json").read_text())


def _dump(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _rationals(v):
    return [format_rational(x) for x in v]


def _tau(args) -> str:
    # "random" draws tau from the global --seed
    return f"seed:{args.seed}" if args.tau == "random" else args.tau


def _sts_summary(sts, path=None) -> dict:
    out = {"n": sts.n, "b": sts.b, "binary_rank": designs.binary_rank(sts)}
    if path is not None:
        out["path"] = str(path)
    return out


# --- gen ----------------------------------------------------------------------------

def cmd_gen(args):
    if args.kind == "bose":
        sts = designs.bose(args.m)
    elif args.kind == "hamming":
        sts = designs.hamming_sts(args.r)
    elif args.kind == "am":
        base = designs.read_sts(args.base)
        sts = designs.assmuss_mattson(base, designs.parse_tau(base, _tau(args)))
    else:
        sts = designs.read_sts(args.file)
    if args.output:
        designs.write_sts(sts, args.output)
        summary = _sts_summary(sts, args.output)
        if args.json:
            return summary
        return f"n={summary['n']} b={summary['b']} binary_rank={summary['binary_rank']}\n"
    if args.json:
        return _sts_summary(sts)
    return designs.format_sts(sts)


# --- johnson -------------------------------------------------------------------------

def cmd_johnson(args):
    n, k = args.n, args.k
    if k < 2 or n < 2 * k:
        raise ValueError("need k >= 2 and n >= 2k")
    if args.kind == "bounds":
        return johnson_min.lower_bound(n, k).to_json()
    if args.kind == "min":
        cap = args.cap if args.cap is not None else johnson_min.upper_vector(n, k).norm
        res = johnson_min.brute_min(n, k, cap)
        payload = {"n": n, "k": k, "cap": cap, "minimum": res.minimum,
                   "witness": None if res.witness is None else _rationals(res.witness),
                   "tag": res.tag}
        if res.minimum is None:
            raise Infeasible(payload)
        return payload
    if k == 3 and n > 63:
        u, tag = johnson_min.jn3_witness(n), "jn3"
    else:
        up = johnson_min.upper_vector(n, k)
        u, tag = up.u, up.tag
    norm, nzi = johnson_min.lift_norm(u, k)
    assert nzi
    return {"n": n, "k": k, "u": _rationals(u), "norm": int(norm), "value": int(norm) + 1, "tag": tag}


# --- flow ------------------------------------------------------------------------------

def cmd_flow(args):
    if args.kind == "verify":
        cert = flows.load_certificate(Path(args.cert).read_text())
        return {"status": "ok", "order": cert.sts.n, "value": cert.value, "kind": cert.kind}
    if args.kind == "am":
        base = designs.read_sts(args.base)
        cert = flows.am_five_flow(base, designs.parse_tau(base, _tau(args)))
    else:
        sts = designs.read_sts(args.sts)
        if args.kind == "resolvable":
            res = designs.find_resolution(sts)
            if res is None:
                raise Infeasible({"order": sts.n, "resolution": None})
            cert = flows.resolvable_flow(sts, res)
        elif args.kind == "search":
            cert = flows.min_flow_search(sts, args.max_value)
            if cert is None:
                raise Infeasible({"order": sts.n, "max_value": args.max_value, "flow": None})
        else:
            cert = flows.verify_first_eig(sts, flows.first_eig_nzi(sts).v)
    # round-trip before anything is written
    again = flows.load_certificate(cert.to_json())
    assert again.to_json() == cert.to_json()
    return cert.to_json()


# --- crc -----------------------------------------------------------------------------------

def _codes(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _report_json(graph, code):
    try:
        report = crc.check_crc(graph, code)
    except crc.NotCompletelyRegular as exc:
        raise Infeasible({"code": sorted(code), "completely_regular": False,
                          "vertex": exc.vertex, "layer": exc.layer})
    out = {"code": sorted(code), "completely_regular": True}
    out.update(report.to_json())
    return out


def cmd_crc(args):
    sts = designs.read_sts(args.sts)
    graph = spectra.block_graph(sts)
    if args.kind == "check":
        return _report_json(graph, _codes(args.code))
    if args.kind == "construct":
        params = {}
        if args.point is not None:
            params["point"] = args.point
        if args.subsystem:
            params["subsystem"] = _codes(args.subsystem)
        if args.construction == 4 and args.code:
            params["subdesign"] = _codes(args.code)
        code = crc.construction(sts, args.construction, **params)
        out = _report_json(graph, code)
        out["construction"] = args.construction
        return out
    spec = spectra.block_graph_eigenvalues(sts.n)
    theta = spec.theta1 if args.eigenvalue == "first" else spec.theta2
    res = crc.enumerate_equitable_bipartitions(graph, theta, budget=args.budget, sts=sts)
    rank = designs.binary_rank(sts)
    parts = []
    for p in res.partitions:
        item = p.to_json()
        item["report"] = crc.check_crc(graph, p.side).to_json()
        parts.append(item)
    return {
        "order": sts.n, "theta": theta, "complete": res.complete, "count": len(parts),
        "binary_rank": rank, "expected_count": crc.expected_count(sts.n, rank),
        "tagged": res.tag_tally(), "partitions": parts,
    }


# --- wiring ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stsflow", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON summaries where text is the default")
    common.add_argument("--quiet", action="store_true", help="no status line on stderr")
    common.add_argument("--seed", type=int, default=0, help="seed used by --tau random")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="build or read a Steiner triple system").add_subparsers(dest="kind", required=True)
    p = gen.add_parser("bose", parents=[common])
    p.add_argument("--m", type=int, required=True, help="odd m; gives order 3m")
    p = gen.add_parser("hamming", parents=[common])
    p.add_argument("--r", type=int, required=True, help="gives order 2^r - 1")
    p = gen.add_parser("am", parents=[common])
    p.add_argument("--base", required=True)
    p.add_argument("--tau", default="zero", help="zero | one | seed:N | random")
    p = gen.add_parser("read", parents=[common])
    p.add_argument("file")

    jo = sub.add_parser("johnson", help="first-eigenspace minima of J(n,k)").add_subparsers(dest="kind", required=True)
    for name in ("bounds", "min", "witness"):
        p = jo.add_parser(name, parents=[common])
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        if name == "min":
            p.add_argument("--cap", type=int, default=None, help="entry cap (default: best known norm)")

    fl = sub.add_parser("flow", help="nowhere-zero flows and certificates").add_subparsers(dest="kind", required=True)
    p = fl.add_parser("am", parents=[common])
    p.add_argument("--base", required=True)
    p.add_argument("--tau", default="zero")
    for name in ("resolvable", "firsteig"):
        p = fl.add_parser(name, parents=[common])
        p.add_argument("--sts", required=True)
    p = fl.add_parser("search", parents=[common])
    p.add_argument("--sts", required=True)
    p.add_argument("--max-value", type=int, required=True)
    p = fl.add_parser("verify", parents=[common])
    p.add_argument("cert")

    cr = sub.add_parser("crc", help="completely regular codes").add_subparsers(dest="kind", required=True)
    p = cr.add_parser("enumerate", parents=[common])
    p.add_argument("--sts", required=True)
    p.add_argument("--eigenvalue", choices=["first", "second"], default="first")
    p.add_argument("--budget", type=float, default=None, help="seconds")
    p = cr.add_parser("check", parents=[common])
    p.add_argument("--sts", required=True)
    p.add_argument("--code", required=True, help="comma-separated block indices")
    p = cr.add_parser("construct", parents=[common])
    p.add_argument("--sts", required=True)
    p.add_argument("--kind", dest="construction", type=int, required=True, choices=[1, 2, 3, 4, 5])
    p.add_argument("--point", type=int)
    p.add_argument("--subsystem", help="comma-separated points")
    p.add_argument("--code", help="a 1-subdesign for construction 4")
    return parser


HANDLERS = {"gen": cmd_gen, "johnson": cmd_johnson, "flow": cmd_flow, "crc": cmd_crc}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.monotonic()
    status, code = "ok", OK
    try:
        payload = HANDLERS[args.command](args)
    except Infeasible as exc:
        payload, status, code = exc.payload, "infeasible", INFEASIBLE
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    text = payload if isinstance(payload, str) else _dump(payload)
    target = args.output if args.command != "gen" else None
    if target:
        Path(target).write_text(text)
    else:
        sys.stdout.write(text)
    if not args.quiet:
        ms = round((time.monotonic() - start) * 1000)
        print(f"{status} ({ms} ms)", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
