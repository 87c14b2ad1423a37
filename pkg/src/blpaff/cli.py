"""Command-line front end.

Exit codes: 0 success (ACCEPT, "true", found), 1 negative answer (REJECT,
"false", none found), 2 input error, 3 size guard, 4 rounding failure.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import List, Optional

from .affine import AffineSystem, affine_point_valid, refine
from .blp import blp_point_valid, build_blp
from .corpus import CORPUS, get_template
from .decide import decide
from .formats import (ParseError, parse_function, parse_instance, parse_template, parse_witness,
                      serialize_assignment, serialize_instance, serialize_template, serialize_witness)
from .minions import TruncatedMinion, build_free_structure
from .polymorphisms import FAMILIES, PolymorphismError, enumerate_block_symmetric_polymorphisms, family, is_polymorphism
from .rounding import RoundingError, as_symmetric, family_for_witness, round_assignment, witness_scale
from .search import classify, random_instance, search_fooling_instance
from .structures import SizeGuardError, StructureError, find_homomorphism

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_GUARD, EXIT_ROUND = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def load_template(source: str):
    """A template file, or the name of a built-in template."""
    if os.path.exists(source):
        try:
            return parse_template(_read(source))
        except ParseError as e:
            raise InputError(f"{source}: {e}") from None
    if source in CORPUS:
        return get_template(source)
    raise InputError(f"{source}: no such file or built-in template (built-ins: {', '.join(CORPUS)})")


def load_instance(path: str, template):
    try:
        inst = parse_instance(_read(path), template.signature)
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None
    return inst


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _format_key(key) -> str:
    if key and isinstance(key[0], tuple):
        return "|".join(".".join(str(c) for c in h) for h in key)
    return ".".join(str(c) for c in key)


# ---------------------------------------------------------------------------
# subcommands

def cmd_decide(args) -> int:
    t = load_template(args.template)
    inst = load_instance(args.instance, t)
    d = decide(t, inst)
    print(str(d))
    if args.witness:
        _write(args.witness, serialize_witness(d))
    return EXIT_OK if d.accepted else EXIT_NO


def _witnesses_from_file(path, t, inst):
    try:
        doc = parse_witness(_read(path))
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None
    if not doc.verdict == "accept":
        raise InputError(f"{path}: the witness does not record an ACCEPT")
    blp_sys = build_blp(inst, t.A)
    if not blp_point_valid(blp_sys, doc.blp):
        raise InputError(f"{path}: the LP values do not solve the relaxation of this instance")
    aff_sys = refine(AffineSystem(blp_sys.relaxation), doc.blp)
    if not affine_point_valid(aff_sys, doc.affine):
        raise InputError(f"{path}: the affine values do not solve the refined system")
    return doc.blp, doc.affine


def cmd_round(args) -> int:
    t = load_template(args.template)
    inst = load_instance(args.instance, t)
    if args.witness:
        blp, aff = _witnesses_from_file(args.witness, t, inst)
    else:
        d = decide(t, inst)
        if not d.accepted:
            print(str(d))
            return EXIT_NO
        blp, aff = d.blp, d.affine
    ell, M = witness_scale(blp, aff)
    if not args.table and args.poly not in FAMILIES:
        raise InputError(f"unknown family {args.poly!r}; known: {', '.join(FAMILIES)}")
    try:
        if args.table:
            try:
                f = as_symmetric(parse_function(_read(args.table)))
            except ParseError as e:
                raise InputError(f"{args.table}: {e}") from None
        elif args.arity:
            f = family(args.poly, args.arity, t.A.domain)
        else:
            f = family_for_witness(args.poly, blp, aff, t.A.domain)
        asg = round_assignment(t, inst, blp, aff, f)
    except (RoundingError, PolymorphismError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ROUND
    print(f"# ell={ell} M={M} arity={f.arity}")
    sys.stdout.write(serialize_assignment(asg, inst.variables))
    return EXIT_OK


def cmd_polycheck(args) -> int:
    t = load_template(args.template)
    if args.table:
        try:
            f = parse_function(_read(args.table))
        except ParseError as e:
            raise InputError(f"{args.table}: {e}") from None
    else:
        if args.family is None or args.arity is None:
            raise InputError("give a family and --arity, or --table")
        f = family(args.family, args.arity, t.A.domain)
    ok = is_polymorphism(f, t, max_checks=args.max_checks)
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_NO


def cmd_polyenum(args) -> int:
    t = load_template(args.template)
    if args.blocks:
        sizes = tuple(int(s) for s in args.blocks.split(","))
    elif args.arity is None:
        raise InputError("give --arity (with or without --symmetric) or --blocks")
    elif args.symmetric:
        sizes = (args.arity,)
    else:
        sizes = (1,) * args.arity
    if any(s < 1 for s in sizes):
        raise InputError("block sizes must be positive")
    found = enumerate_block_symmetric_polymorphisms(t, sizes, limit=args.limit, max_checks=args.max_checks)
    for g in found:
        print(" ".join(f"{_format_key(k)}={v}" for k, v in g.table.items()))
    print(f"# {len(found)} polymorphisms with blocks {','.join(map(str, sizes))}", file=sys.stderr)
    return EXIT_OK if found else EXIT_NO


def cmd_classify(args) -> int:
    t = load_template(args.template)
    inst = load_instance(args.instance, t)
    c = classify(t, inst)
    print(" ".join(f"{k}={str(v).lower() if isinstance(v, bool) else v}" for k, v in c.as_dict().items()))
    return EXIT_OK


def cmd_fool(args) -> int:
    t = load_template(args.template)
    res = search_fooling_instance(t, args.max_vars, args.max_constraints,
                                  repeated_variables=not args.distinct)
    print(f"# {res.summary()}")
    if res.found:
        sys.stdout.write(serialize_instance(res.instance))
        return EXIT_OK
    print("none")
    return EXIT_NO


def cmd_free(args) -> int:
    t = load_template(args.template)
    minion = TruncatedMinion(args.minion, ell=args.ell, M=args.M, max_arity=args.max_arity)
    F, _ = build_free_structure(minion, t.A, max_objects=args.max_objects)
    sizes = " ".join(f"{s}={len(F.relation(s))}" for s in F.signature.names)
    print(f"domain={len(F.domain)} {sizes}")
    h = find_homomorphism(F, t.B, max_bits=args.max_bits)
    print("hom_to_B=" + ("true" if h is not None else "false"))
    if h is not None and args.show:
        for a in F.domain:
            print(f"{a} -> {h[a]}")
    return EXIT_OK if h is not None else EXIT_NO


def cmd_show(args) -> int:
    sys.stdout.write(serialize_template(load_template(args.template)))
    return EXIT_OK


def cmd_generate(args) -> int:
    t = load_template(args.template)
    rng = random.Random(args.seed)
    try:
        inst = random_instance(t, args.vars, args.constraints, rng, repeated_variables=args.repeats)
    except ValueError as e:
        raise InputError(str(e)) from None
    sys.stdout.write(serialize_instance(inst))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blpaff", description="Exact BLP+affine decisions for promise CSPs.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_template(sp):
        sp.add_argument("-t", "--template", required=True, help="template file or built-in name")
        return sp

    def with_instance(sp):
        sp.add_argument("-i", "--instance", required=True, help="instance file")
        return sp

    sp = with_instance(with_template(sub.add_parser("decide", help="run the algorithm")))
    sp.add_argument("-w", "--witness", help="write the witness document here ('-' for stdout)")
    sp.set_defaults(func=cmd_decide)

    sp = with_instance(with_template(sub.add_parser("round", help="round an ACCEPT into an assignment in B")))
    sp.add_argument("poly", nargs="?", default="majority",
                    help="family: majority, parity, min, max, plurality or AT (default majority)")
    sp.add_argument("--table", help="function table file instead of a family")
    sp.add_argument("--arity", type=int, help="family arity (default: smallest that suffices)")
    sp.add_argument("-w", "--witness", help="read LP and affine values from this witness document")
    sp.set_defaults(func=cmd_round)

    sp = with_template(sub.add_parser("polycheck", help="is a function a polymorphism"))
    sp.add_argument("family", nargs="?")
    sp.add_argument("arity_pos", nargs="?", type=int, metavar="arity")
    sp.add_argument("--arity", type=int)
    sp.add_argument("--table")
    sp.add_argument("--max-checks", type=int, default=2_000_000)
    sp.set_defaults(func=cmd_polycheck)

    sp = with_template(sub.add_parser("polyenum", help="list (block-)symmetric polymorphisms"))
    sp.add_argument("--arity", type=int)
    sp.add_argument("--symmetric", action="store_true")
    sp.add_argument("--blocks", help="comma-separated block sizes, e.g. 2,2")
    sp.add_argument("--limit", type=int)
    sp.add_argument("--max-checks", type=int, default=2_000_000)
    sp.set_defaults(func=cmd_polyenum)

    sp = with_instance(with_template(sub.add_parser("classify", help="brute force and each relaxation")))
    sp.set_defaults(func=cmd_classify)

    sp = with_template(sub.add_parser("fool", help="search for an accepted instance unsatisfiable in B"))
    sp.add_argument("--max-vars", type=int, default=4)
    sp.add_argument("--max-constraints", type=int, default=4)
    sp.add_argument("--distinct", action="store_true", help="no variable repeated inside a constraint")
    sp.set_defaults(func=cmd_fool)

    sp = with_template(sub.add_parser("free", help="free structure of a truncated minion, and a map to B"))
    sp.add_argument("--minion", choices=("qconv", "mblpaff", "zaff"), default="qconv")
    sp.add_argument("--ell", type=int, default=1)
    sp.add_argument("--M", type=int, default=1)
    sp.add_argument("--max-arity", type=int, default=8)
    sp.add_argument("--max-objects", type=int, default=20000)
    sp.add_argument("--max-bits", type=float, default=400.0)
    sp.add_argument("--show", action="store_true", help="print the homomorphism")
    sp.set_defaults(func=cmd_free)

    sp = with_template(sub.add_parser("show", help="print a template document"))
    sp.set_defaults(func=cmd_show)

    sp = with_template(sub.add_parser("generate", help="random instance (test generation only)"))
    sp.add_argument("--vars", type=int, default=4)
    sp.add_argument("--constraints", type=int, default=6)
    sp.add_argument("--repeats", action="store_true", help="allow repeated variables in a scope")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_generate)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "arity_pos", None) is not None and args.arity is None:
        args.arity = args.arity_pos
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (StructureError, PolymorphismError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except SizeGuardError as e:
        print(f"size guard: {e}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
