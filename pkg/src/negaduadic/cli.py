"""Command line front end.

Subcommands: `split` searches splittings, `build` constructs a code from a
manifest, `check` classifies its duality, `mindist` measures distance,
`table` reproduces the built-in table fixtures.  Output is JSON, one
object per line, deterministic across runs.  Exit codes: 0 on success and
full fixture match, 1 when some table row misses its expectation, 2 on
parameter errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import tables
from .duadic import ExtendedCode
from .errors import CodesError
from .splittings import TYPE_I, TYPE_II, find_splittings

BUDGET_ENV = "NEGADUADIC_BUDGET"


def _dump(obj, pretty: bool) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _load_manifest(path: str) -> tables.RowManifest:
    with open(path, "r", encoding="utf-8") as fh:
        return tables.RowManifest.from_dict(json.load(fh))


def _budget_arg(args) -> object:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else None


def _cmd_split(args) -> int:
    kind = TYPE_I if args.kind.upper() in ("I", "1", "TYPEI") else TYPE_II
    found = find_splittings(
        args.q, args.n, kind,
        multiplier=args.multiplier,
        mu_minus1=args.mu_minus1,
        max_count=args.max,
    )
    for sp in found:
        print(_dump(sp.to_dict(), args.pretty))
    return 0


def _cmd_build(args) -> int:
    manifest = _load_manifest(args.manifest)
    _, _, split, code, _ = tables.build_code(manifest)
    if isinstance(code, ExtendedCode):
        out = code.to_dict()
    else:
        out = code.to_dict(subset=sorted(manifest.subset), kind=manifest.kind)
    out["splitting"] = split.to_dict()
    print(_dump(out, args.pretty))
    return 0


def _cmd_check(args) -> int:
    manifest = _load_manifest(args.manifest)
    report = tables.run_row(manifest, budget_override="bounds")
    out = report.to_dict()
    del out["distance"]  # classification only
    print(_dump(out, args.pretty))
    return 0


def _cmd_mindist(args) -> int:
    manifest = _load_manifest(args.manifest)
    report = tables.run_row(manifest, budget_override=_budget_arg(args))
    print(_dump(report.to_dict(), args.pretty))
    return 0


def _cmd_table(args) -> int:
    results = tables.run_table(args.which, budget_override=_budget_arg(args))
    ok = True
    for entry in results:
        ok &= entry["match"]
        print(_dump(entry, args.pretty))
    if not args.pretty:
        matched = sum(1 for e in results if e["match"])
        print(f"# table {args.which}: {matched}/{len(results)} rows match", file=sys.stderr)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="negaduadic",
        description="Duadic negacyclic codes over non-chain rings and their Gray images.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", help="search for duadic splittings", parents=[common])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", required=True, choices=["I", "II", "1", "2"])
    p.add_argument("--multiplier", type=int, default=None)
    p.add_argument("--mu-minus1", dest="mu_minus1", choices=["swaps", "fixes"], default=None)
    p.add_argument("--max", type=int, default=None, help="stop after this many splittings")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("build", help="construct the code described by a manifest", parents=[common])
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("check", help="duality classification for a manifest", parents=[common])
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("mindist", help="distance report for a manifest", parents=[common])
    p.add_argument("--manifest", required=True)
    p.add_argument("--budget", type=int, default=None,
                   help="work cap (codewords / column subsets); 0 reports bounds only")
    p.set_defaults(func=_cmd_mindist)

    p = sub.add_parser("table", help="reproduce a built-in table", parents=[common])
    p.add_argument("--which", type=int, required=True, choices=[1, 2])
    p.add_argument("--budget", type=int, default=None,
                   help="override every row's distance budget; 0 forces bounds")
    p.set_defaults(func=_cmd_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CodesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
