"""Command-line front end: ``equiwitt simples | witt | class``.

Exit codes: 0 success, 2 unreadable or malformed input, 3 a size cap was
exceeded, 4 a verification check failed, 5 the form is not invariant or is
degenerate.
"""

from __future__ import annotations

import argparse
import json
import sys

from .equiforms import FormError, anisotropic_rep, equiv_form_from_dict
from .gfield import FieldError, field_make
from .grouprep import CapExceeded, GroupError, RepError, group_make, simple_catalog
from .wittgroup import VerificationError, coordinates, describe, verify_theorem

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_VERIFY = 4
EXIT_FORM = 5


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_group(path: str):
    d = _load_json(path)
    try:
        return group_make(int(d["degree"]), d["gens"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CapExceeded):
            raise
        raise InputError(f"malformed group file {path}: {exc}") from exc


def _field(args):
    try:
        return field_make(args.e, args.modulus)
    except FieldError as exc:
        raise InputError(str(exc)) from exc


def _write_json(path: str | None, payload) -> None:
    if path:
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def cmd_simples(args) -> int:
    g = _load_group(args.group)
    f = _field(args)
    cat = simple_catalog(g, f, seed=args.seed) if args.seed is not None else simple_catalog(g, f)
    print(f"simple modules of G (order {g.order}) over GF({f.q}); s = {cat.s}")
    print(f"{'id':>3}  {'dim':>4}  {'self-dual':<9}  type")
    for c in cat.simples:
        print(f"{c.id:>3}  {c.dim:>4}  {'yes' if c.self_dual else 'no':<9}  {c.mtype}")
    _write_json(args.json, cat.to_dict())
    return EXIT_OK


def cmd_witt(args) -> int:
    g = _load_group(args.group)
    f = _field(args)
    desc = describe(g, f)
    report = verify_theorem(g, f, samples=args.samples, seed=args.seed or 0, desc=desc)
    status = "PASS" if report["pass"] else "FAIL"
    print(f"rank {report['rank']} = s({report['s']}) + t({report['t']}), {status}")
    print("generators: " + ", ".join(report["generators"]))
    for c in report["checks"]:
        line = f"  {'ok  ' if c['pass'] else 'FAIL'} {c['name']:<24} {c['ms']:>10.1f} ms"
        if not c["pass"] and "detail" in c:
            line += f"  {c['detail']}"
        print(line)
    _write_json(args.json, report)
    return EXIT_OK if report["pass"] else EXIT_VERIFY


def cmd_class(args) -> int:
    d = _load_json(args.form)
    try:
        x = equiv_form_from_dict(d)
    except FormError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CapExceeded):
            raise
        raise InputError(f"malformed form file {args.form}: {exc}") from exc
    desc = describe(x.group, x.field)
    coords = coordinates(x, desc)
    red = anisotropic_rep(x, with_transcript=True)
    print(f"coordinates {coords}")
    print(f"anisotropic representative: dimension {red.form.dim} (input dimension {x.dim})")
    if args.trace:
        for step in red.transcript:
            print(f"  step {step['step']}: dim {step['dim']}, isotropic simple of class {step['class_id']}, "
                  f"basis {step['basis']}")
    payload = {"coords": coords.to_dict(), "anisotropic": red.form.to_dict()}
    if args.trace:
        payload["transcript"] = red.transcript_json()
    _write_json(args.json, payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equiwitt", description="Witt groups of G-equivariant quadratic forms over GF(2^e)")
    sub = p.add_subparsers(dest="command", required=True)

    def field_args(sp):
        sp.add_argument("--group", required=True, help="group JSON file {\"degree\": n, \"gens\": [[...], ...]}")
        sp.add_argument("--e", type=int, default=1, help="extension degree of K = GF(2^e)")
        sp.add_argument("--modulus", type=lambda s: int(s, 0), default=None,
                        help="irreducible modulus as an integer bit pattern (7 is X^2+X+1)")

    sp = sub.add_parser("simples", help="list the simple KG-modules and their types")
    field_args(sp)
    sp.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    sp.add_argument("--json", default=None, help="write the catalog as JSON")
    sp.set_defaults(func=cmd_simples)

    sp = sub.add_parser("witt", help="compute WQ(K,G) and verify its rank")
    field_args(sp)
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=lambda s: int(s, 0), default=0)
    sp.add_argument("--json", default=None, help="write the report as JSON")
    sp.set_defaults(func=cmd_witt)

    sp = sub.add_parser("class", help="coordinates and anisotropic representative of a form")
    sp.add_argument("--form", required=True, help="EquivForm JSON file")
    sp.add_argument("--trace", action="store_true", help="print the reduction transcript")
    sp.add_argument("--seed", type=lambda s: int(s, 0), default=0)
    sp.add_argument("--json", default=None, help="write coordinates and representative as JSON")
    sp.set_defaults(func=cmd_class)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except FormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness vector: {[int(v) for v in exc.witness]}", file=sys.stderr)
        return EXIT_FORM if exc.kind in ("invariance", "degenerate") else EXIT_PARSE
    except (GroupError, RepError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationError as exc:
        print(f"error: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
