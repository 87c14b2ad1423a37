"""Line-oriented text documents for templates, instances, witnesses,
assignments and function tables.

Every document is a sequence of lines ``keyword token ...``; blank lines and
``#`` comments are ignored.  Rationals are written ``num/den`` (or as plain
integers) and never as floats.

Template::

    template 2sat
    domain A 0 1
    domain B 0 1
    symbol pp 2
    tuple A pp 0 1
    tuple B pp 0 1
    hom 0 0

Instance::

    instance
    variables x y
    constraint pp x y

Witness (the output of ``decide``)::

    witness
    verdict accept
    ell 2
    M 1
    w x 0 1/2
    p 0 0 1 1/2
    r x 0 1
    q 0 0 1 1

Assignment::

    assignment
    value x 1

Function table, either a full table or (with ``symmetric``) one line per
histogram of counts in domain order::

    function maj3
    arity 3
    domain 0 1
    codomain 0 1
    symmetric
    counts 3 0 0
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .affine import AffinePoint
from .blp import BlpPoint
from .decide import ACCEPT, REJECT, STAGE_AFFINE, STAGE_LP, Decision
from .polymorphisms import FunctionTable, SymmetricFunction
from .structures import Instance, PromiseTemplate, RelationalStructure, Signature, StructureError

_TOKEN = re.compile(r"^[^\s#]+$")
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_INTEGER = re.compile(r"^-?\d+$")


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line
        self.message = message


def _lines(text: str):
    for k, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield k, body.split()


def _header(lines, keyword: str) -> Tuple[int, List[str]]:
    try:
        k, toks = next(lines)
    except StopIteration:
        raise ParseError(0, f"empty document; expected '{keyword}'") from None
    if toks[0] != keyword:
        raise ParseError(k, f"expected '{keyword}' header, found {toks[0]!r}")
    return k, toks[1:]


def _need(k: int, toks: List[str], n: int, usage: str):
    if len(toks) != n:
        raise ParseError(k, f"expected '{usage}'")


def _rational(k: int, tok: str) -> Fraction:
    if not _RATIONAL.match(tok):
        raise ParseError(k, f"{tok!r} is not an exact rational num/den")
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(k, "zero denominator") from None


def _integer(k: int, tok: str) -> int:
    if not _INTEGER.match(tok):
        raise ParseError(k, f"{tok!r} is not an integer")
    return int(tok)


def _check_tokens(values, what: str):
    for v in values:
        if not _TOKEN.match(str(v)):
            raise ValueError(f"{what} {v!r} cannot be written as a single token")


# ---------------------------------------------------------------------------
# templates

def parse_template(text: str) -> PromiseTemplate:
    lines = _lines(text)
    k0, rest = _header(lines, "template")
    name = rest[0] if rest else ""
    domains: Dict[str, Tuple[str, ...]] = {}
    symbols: List[Tuple[str, int]] = []
    tuples: Dict[str, Dict[str, List[tuple]]] = {"A": {}, "B": {}}
    hom: Dict[str, str] = {}
    for k, toks in lines:
        kw, args = toks[0], toks[1:]
        if kw == "domain":
            if len(args) < 2 or args[0] not in ("A", "B"):
                raise ParseError(k, "expected 'domain A|B element ...'")
            if args[0] in domains:
                raise ParseError(k, f"domain {args[0]} given twice")
            domains[args[0]] = tuple(args[1:])
        elif kw == "symbol":
            _need(k, args, 2, "symbol NAME ARITY")
            ar = _integer(k, args[1])
            if ar < 1:
                raise ParseError(k, "arity must be positive")
            if any(s == args[0] for s, _ in symbols):
                raise ParseError(k, f"symbol {args[0]} declared twice")
            symbols.append((args[0], ar))
        elif kw == "tuple":
            if len(args) < 2 or args[0] not in ("A", "B"):
                raise ParseError(k, "expected 'tuple A|B SYMBOL value ...'")
            side, sym, vals = args[0], args[1], tuple(args[2:])
            arity = dict(symbols).get(sym)
            if arity is None:
                raise ParseError(k, f"symbol {sym} used before its declaration")
            if len(vals) != arity:
                raise ParseError(k, f"{sym} has arity {arity}, got {len(vals)} values")
            if side not in domains:
                raise ParseError(k, f"domain {side} must be declared before its tuples")
            bad = [v for v in vals if v not in domains[side]]
            if bad:
                raise ParseError(k, f"{bad[0]!r} is not in domain {side}")
            tuples[side].setdefault(sym, []).append(vals)
        elif kw == "hom":
            _need(k, args, 2, "hom a b")
            if args[0] in hom:
                raise ParseError(k, f"hom maps {args[0]} twice")
            hom[args[0]] = args[1]
        else:
            raise ParseError(k, f"unknown keyword {kw!r}")
    for side in ("A", "B"):
        if side not in domains:
            raise ParseError(k0, f"missing 'domain {side}'")
    sig = Signature(tuple(symbols))
    try:
        A = RelationalStructure(domains["A"], sig, {s: tuples["A"].get(s, []) for s, _ in symbols})
        B = RelationalStructure(domains["B"], sig, {s: tuples["B"].get(s, []) for s, _ in symbols})
        return PromiseTemplate(A, B, witness=hom or None, name=name)
    except StructureError as e:
        raise ParseError(k0, str(e)) from None


def serialize_template(t: PromiseTemplate) -> str:
    _check_tokens(t.A.domain + t.B.domain + t.signature.names, "name")
    out = [f"template {t.name}".rstrip(), "domain A " + " ".join(t.A.domain), "domain B " + " ".join(t.B.domain)]
    for sym, ar in t.signature.symbols:
        out.append(f"symbol {sym} {ar}")
    for side, S in (("A", t.A), ("B", t.B)):
        for sym in t.signature.names:
            for y in S.relation(sym):
                out.append(f"tuple {side} {sym} " + " ".join(y))
    for a in t.A.domain:
        out.append(f"hom {a} {t.witness[a]}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# instances

def parse_instance(text: str, signature: Optional[Signature] = None) -> Instance:
    lines = _lines(text)
    k0, _ = _header(lines, "instance")
    variables: Optional[Tuple[str, ...]] = None
    cons = []
    for k, toks in lines:
        kw, args = toks[0], toks[1:]
        if kw == "variables":
            if variables is not None:
                raise ParseError(k, "variables given twice")
            variables = tuple(args)
            if len(set(variables)) != len(variables):
                raise ParseError(k, "duplicate variable")
        elif kw == "constraint":
            if len(args) < 2:
                raise ParseError(k, "expected 'constraint SYMBOL var ...'")
            if variables is None:
                raise ParseError(k, "constraint before 'variables'")
            unknown = [v for v in args[1:] if v not in variables]
            if unknown:
                raise ParseError(k, f"undeclared variable {unknown[0]!r}")
            if signature is not None:
                if args[0] not in signature:
                    raise ParseError(k, f"symbol {args[0]!r} is not in the template's signature")
                if signature.arity(args[0]) != len(args) - 1:
                    raise ParseError(k, f"{args[0]} has arity {signature.arity(args[0])}, got {len(args) - 1}")
            cons.append((args[0], tuple(args[1:])))
        else:
            raise ParseError(k, f"unknown keyword {kw!r}")
    if variables is None:
        raise ParseError(k0, "missing 'variables'")
    try:
        return Instance(variables, tuple(cons))
    except StructureError as e:
        raise ParseError(k0, str(e)) from None


def serialize_instance(inst: Instance) -> str:
    _check_tokens(inst.variables, "variable")
    out = ["instance", "variables " + " ".join(inst.variables)]
    for sym, scope in inst.constraints:
        out.append(f"constraint {sym} " + " ".join(scope))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# witnesses

@dataclass(frozen=True)
class WitnessDocument:
    verdict: str
    reject_stage: Optional[str]
    ell: Optional[int]
    M: Optional[int]
    blp: Optional[BlpPoint]
    affine: Optional[AffinePoint]

    def decision(self) -> Decision:
        return Decision(self.verdict, self.reject_stage, self.blp, self.affine)


def witness_document(d: Decision) -> WitnessDocument:
    ell = d.blp.denominator if d.blp is not None else None
    M = max(d.affine.max_abs, 1) if d.affine is not None else None
    return WitnessDocument(d.verdict, d.reject_stage, ell, M, d.blp, d.affine)


def _fmt_q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def serialize_witness(d: Decision) -> str:
    doc = witness_document(d)
    out = ["witness", f"verdict {d.verdict}" + (f" {d.reject_stage}" if d.reject_stage else "")]
    if doc.ell is not None:
        out.append(f"ell {doc.ell}")
    if doc.M is not None:
        out.append(f"M {doc.M}")
    if d.blp is not None:
        for (x, a), v in d.blp.w.items():
            out.append(f"w {x} {a} {_fmt_q(v)}")
        for (j, y), v in d.blp.p.items():
            out.append(f"p {j} {' '.join(y)} {_fmt_q(v)}")
    if d.affine is not None:
        for (x, a), v in d.affine.r.items():
            out.append(f"r {x} {a} {v}")
        for (j, y), v in d.affine.q.items():
            out.append(f"q {j} {' '.join(y)} {v}")
    return "\n".join(out) + "\n"


def parse_witness(text: str) -> WitnessDocument:
    lines = _lines(text)
    k0, _ = _header(lines, "witness")
    verdict = stage = None
    ell = M = None
    w: Dict = {}
    p: Dict = {}
    r: Dict = {}
    q: Dict = {}
    for k, toks in lines:
        kw, args = toks[0], toks[1:]
        if kw == "verdict":
            if not args or args[0] not in (ACCEPT, REJECT):
                raise ParseError(k, "expected 'verdict accept' or 'verdict reject lp|affine'")
            verdict = args[0]
            if verdict == REJECT:
                if len(args) != 2 or args[1] not in (STAGE_LP, STAGE_AFFINE):
                    raise ParseError(k, "a reject names its stage: lp or affine")
                stage = args[1]
            elif len(args) != 1:
                raise ParseError(k, "'verdict accept' takes no stage")
        elif kw in ("ell", "M"):
            _need(k, args, 1, f"{kw} N")
            val = _integer(k, args[0])
            if val < 1:
                raise ParseError(k, f"{kw} must be positive")
            if kw == "ell":
                ell = val
            else:
                M = val
        elif kw in ("w", "r"):
            _need(k, args, 3, f"{kw} VARIABLE VALUE NUMBER")
            key = (args[0], args[1])
            target = w if kw == "w" else r
            if key in target:
                raise ParseError(k, f"{kw} {args[0]} {args[1]} given twice")
            target[key] = _rational(k, args[2]) if kw == "w" else _integer(k, args[2])
        elif kw in ("p", "q"):
            if len(args) < 3:
                raise ParseError(k, f"expected '{kw} CONSTRAINT value ... NUMBER'")
            key = (_integer(k, args[0]), tuple(args[1:-1]))
            target = p if kw == "p" else q
            if key in target:
                raise ParseError(k, f"{kw} entry given twice")
            target[key] = _rational(k, args[-1]) if kw == "p" else _integer(k, args[-1])
        else:
            raise ParseError(k, f"unknown keyword {kw!r}")
    if verdict is None:
        raise ParseError(k0, "missing 'verdict'")
    blp = BlpPoint(w, p) if (w or p) else None
    aff = AffinePoint(r, q) if (r or q) else None
    doc = WitnessDocument(verdict, stage, ell, M, blp, aff)
    try:
        doc.decision()
    except ValueError as e:
        raise ParseError(k0, str(e)) from None
    if blp is not None and ell is not None and blp.denominator != ell:
        raise ParseError(k0, f"ell is {ell} but the LP values have common denominator {blp.denominator}")
    if aff is not None and M is not None and max(aff.max_abs, 1) != M:
        raise ParseError(k0, f"M is {M} but the largest affine entry is {aff.max_abs}")
    return doc


# ---------------------------------------------------------------------------
# assignments

def serialize_assignment(asg: Mapping[str, str], order=None) -> str:
    keys = list(order) if order is not None else list(asg)
    return "assignment\n" + "".join(f"value {x} {asg[x]}\n" for x in keys)


def parse_assignment(text: str) -> Dict[str, str]:
    lines = _lines(text)
    _header(lines, "assignment")
    out: Dict[str, str] = {}
    for k, toks in lines:
        if toks[0] != "value":
            raise ParseError(k, f"unknown keyword {toks[0]!r}")
        _need(k, toks[1:], 2, "value VARIABLE ELEMENT")
        if toks[1] in out:
            raise ParseError(k, f"{toks[1]} assigned twice")
        out[toks[1]] = toks[2]
    return out


# ---------------------------------------------------------------------------
# function tables

def parse_function(text: str):
    """A :class:`FunctionTable` or, with ``symmetric``, a :class:`SymmetricFunction`."""
    lines = _lines(text)
    k0, rest = _header(lines, "function")
    name = rest[0] if rest else ""
    arity = None
    domain = codomain = None
    symmetric = False
    entries: Dict[tuple, str] = {}
    for k, toks in lines:
        kw, args = toks[0], toks[1:]
        if kw == "arity":
            _need(k, args, 1, "arity N")
            arity = _integer(k, args[0])
            if arity < 1:
                raise ParseError(k, "arity must be positive")
        elif kw == "domain":
            domain = tuple(args)
        elif kw == "codomain":
            codomain = tuple(args)
        elif kw == "symmetric":
            _need(k, args, 0, "symmetric")
            symmetric = True
        elif kw in ("row", "counts"):
            if arity is None or domain is None or codomain is None:
                raise ParseError(k, "arity, domain and codomain come before the entries")
            if (kw == "counts") != symmetric:
                raise ParseError(k, "'counts' lines need 'symmetric'; full tables use 'row'")
            if kw == "row":
                _need(k, args, arity + 1, "row a1 ... aL b")
                key = tuple(args[:-1])
                if any(a not in domain for a in key):
                    raise ParseError(k, "argument outside the domain")
            else:
                _need(k, args, len(domain) + 1, "counts n1 ... nd b")
                key = tuple(_integer(k, a) for a in args[:-1])
                if any(c < 0 for c in key) or sum(key) != arity:
                    raise ParseError(k, f"counts must be nonnegative and sum to {arity}")
            if args[-1] not in codomain:
                raise ParseError(k, f"{args[-1]!r} is not in the codomain")
            if key in entries:
                raise ParseError(k, "entry given twice")
            entries[key] = args[-1]
        else:
            raise ParseError(k, f"unknown keyword {kw!r}")
    if arity is None or domain is None or codomain is None:
        raise ParseError(k0, "missing arity, domain or codomain")
    try:
        if symmetric:
            return SymmetricFunction(arity, domain, codomain, table=entries, name=name)
        return FunctionTable(arity, domain, codomain, entries)
    except ValueError as e:
        raise ParseError(k0, str(e)) from None


def serialize_function(f, name: str = "") -> str:
    name = name or getattr(f, "name", "")
    out = [f"function {name}".rstrip(), f"arity {f.arity}", "domain " + " ".join(f.domain),
           "codomain " + " ".join(f.codomain)]
    if isinstance(f, SymmetricFunction):
        out.append("symmetric")
        for counts, b in f.histogram_table().items():
            out.append("counts " + " ".join(str(c) for c in counts) + f" {b}")
    else:
        for args, b in f.to_table().table.items():
            out.append("row " + " ".join(args) + f" {b}")
    return "\n".join(out) + "\n"
