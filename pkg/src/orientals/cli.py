"""Command-line front end.

Exit status: 0 on success or a passing check, 1 when a check finds
witnesses, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from orientals.axioms import check_axioms
from orientals.collage import cone_under, cylinder, iterate
from orientals.core import BudgetExceeded, OmegaError
from orientals.iso import (
    check_action_compatibility,
    cube_chain,
    oriental_chain,
    phi_cube,
    phi_oriental,
    verify_functor_iso,
)
from orientals.parity import cube, oriental
from orientals.report import Report, merge
from orientals.serialization import DocumentError, checksum, dumps, export_dot, import_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path):
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load(path, verify_checksum=True):
    return import_json(_read(path), verify_checksum=verify_checksum)


def _emit(text, out):
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_tower(args, build):
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    X = build(args.n, max_dim=args.max_dim)
    params = [["flavor", X.flavor], ["n", args.n]]
    if args.max_dim is not None:
        params.append(["max_dim", args.max_dim])
    _emit(dumps(X, parameters=params), args.out)
    return EXIT_OK


def _cmd_construct(args, step, letter, kind):
    if (args.input is None) == (args.iterate is None):
        raise UsageError("give exactly one of --in and --iterate")
    if args.iterate is not None:
        if args.iterate < 0:
            raise UsageError("--iterate must be non-negative")
        X = iterate(letter, args.iterate, budget=args.budget)
        params = [["iterate", args.iterate]]
    else:
        X = step(_load(args.input))
        params = [["input", args.input]]
    _emit(dumps(X, parameters=params, kind=kind), args.out)
    return EXIT_OK


def _report_exit(rep: Report, out):
    _emit(rep.to_json() + "\n", out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_verify_axioms(args):
    text = _read(args.input)
    X = import_json(text, verify_checksum=False)
    rep = check_axioms(X, max_dim=args.max_dim, budget=args.budget, seed=args.seed)
    doc = json.loads(text)
    if checksum(doc) != doc["manifest"]["checksum"]:
        rep.witnesses.insert(0, {"law": "checksum", "problem": "manifest checksum does not match the cell data"})
    return _report_exit(rep, args.out)


def _cmd_verify_iso(args):
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    if args.kind == "oriental":
        chain, phi = oriental_chain(args.n), phi_oriental(args.n)
    else:
        chain, phi = cube_chain(args.n), phi_cube(args.n)
    reports = []
    for k, f in enumerate(chain):
        r = verify_functor_iso(f)
        r.check = f"chain[{k}]"
        reports.append(r)
    r = verify_functor_iso(phi)
    r.check = "step"
    reports.append(r)
    reports.append(check_action_compatibility(phi))
    rep = merge(f"iso-{args.kind}", reports)
    return _report_exit(rep, args.out)


def _cmd_counts(args):
    X = _load(args.input)
    counts = X.nonidentity_counts()
    _emit(", ".join(f"dim{d}: {c}" for d, c in enumerate(counts)) + "\n", args.out)
    return EXIT_OK


def _cmd_export_dot(args):
    X = _load(args.input)
    _emit(export_dot(X, args.dim), args.out)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="orientals", description="Orientals, cubes, cones and cylinders.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_out(sp):
        sp.add_argument("--out", help="write to this file instead of stdout")

    for name, build in (("oriental", oriental), ("cube", cube)):
        sp = sub.add_parser(name, help=f"enumerate {name} cells as a JSON document")
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--max-dim", type=int)
        add_out(sp)
        sp.set_defaults(func=lambda a, b=build: _cmd_tower(a, b))

    for name, step, letter, kind in (("cone", cone_under, "s", "cone"), ("cylinder", cylinder, "c", "cylinder")):
        sp = sub.add_parser(name, help=f"{name} on a document, or iterated from the point")
        sp.add_argument("--in", dest="input")
        sp.add_argument("--iterate", type=int)
        sp.add_argument("--budget", type=int, help="maximum cells per stage")
        add_out(sp)
        sp.set_defaults(func=lambda a, s=step, l=letter, k=kind: _cmd_construct(a, s, l, k))

    sp = sub.add_parser("verify-axioms", help="check the omega-category laws")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--max-dim", type=int)
    sp.add_argument("--budget", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    add_out(sp)
    sp.set_defaults(func=_cmd_verify_axioms)

    sp = sub.add_parser("verify-iso", help="check the comparison maps")
    sp.add_argument("--kind", choices=["oriental", "cube"], required=True)
    sp.add_argument("--n", type=int, required=True)
    add_out(sp)
    sp.set_defaults(func=_cmd_verify_iso)

    sp = sub.add_parser("counts", help="non-identity cells per dimension")
    sp.add_argument("--in", dest="input", required=True)
    add_out(sp)
    sp.set_defaults(func=_cmd_counts)

    sp = sub.add_parser("export-dot", help="DOT text of the low-dimensional skeleton")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--dim", type=int, choices=[1, 2], default=1)
    add_out(sp)
    sp.set_defaults(func=_cmd_export_dot)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, DocumentError, BudgetExceeded) as exc:
        print(f"orientals {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OmegaError as exc:
        print(f"orientals {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
