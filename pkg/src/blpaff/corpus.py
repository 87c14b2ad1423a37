"""Built-in promise templates."""

from __future__ import annotations

from itertools import product
from typing import Callable, Dict, List

from .structures import PromiseTemplate, RelationalStructure, Signature

BOOL = ("0", "1")


def _bool_relation(arity: int, pred: Callable[..., bool]) -> List[tuple]:
    return [tuple(str(b) for b in bits) for bits in product((0, 1), repeat=arity) if pred(*bits)]


def _boolean_structure(relations: Dict[str, tuple]) -> RelationalStructure:
    sig = Signature(tuple((name, ar) for name, (ar, _) in relations.items()))
    return RelationalStructure(BOOL, sig, {name: _bool_relation(ar, pred) for name, (ar, pred) in relations.items()})


def two_sat() -> PromiseTemplate:
    """Clauses of width one and two; ``pn(x, y)`` is ``x or not y``."""
    A = _boolean_structure({
        "t": (1, lambda x: x == 1),
        "f": (1, lambda x: x == 0),
        "pp": (2, lambda x, y: x or y),
        "pn": (2, lambda x, y: x or not y),
        "nn": (2, lambda x, y: not x or not y),
    })
    return PromiseTemplate(A, A, name="2sat")


def horn_sat() -> PromiseTemplate:
    """Horn clauses: at most one positive literal, width at most three."""
    A = _boolean_structure({
        "t": (1, lambda x: x == 1),
        "f": (1, lambda x: x == 0),
        "nn": (2, lambda x, y: not x or not y),
        "imp": (2, lambda x, y: not x or y),
        "nnp": (3, lambda x, y, z: not x or not y or z),
        "nnn": (3, lambda x, y, z: not x or not y or not z),
    })
    return PromiseTemplate(A, A, name="horn")


def dual_horn_sat() -> PromiseTemplate:
    """Clauses with at most one negative literal, width at most three."""
    A = _boolean_structure({
        "t": (1, lambda x: x == 1),
        "f": (1, lambda x: x == 0),
        "pp": (2, lambda x, y: x or y),
        "imp": (2, lambda x, y: not x or y),
        "ppn": (3, lambda x, y, z: x or y or not z),
        "ppp": (3, lambda x, y, z: x or y or z),
    })
    return PromiseTemplate(A, A, name="dual-horn")


def lin_z2() -> PromiseTemplate:
    """Linear equations over Z_2 with at most three variables each."""
    A = _boolean_structure({
        "u0": (1, lambda x: x == 0),
        "u1": (1, lambda x: x == 1),
        "e0": (2, lambda x, y: (x + y) % 2 == 0),
        "e1": (2, lambda x, y: (x + y) % 2 == 1),
        "l0": (3, lambda x, y, z: (x + y + z) % 2 == 0),
        "l1": (3, lambda x, y, z: (x + y + z) % 2 == 1),
    })
    return PromiseTemplate(A, A, name="3lin")


def one_in_three_nae() -> PromiseTemplate:
    """Strict side 1-in-3 SAT, weak side not-all-equal SAT."""
    A = _boolean_structure({"r": (3, lambda x, y, z: x + y + z == 1)})
    B = _boolean_structure({"r": (3, lambda x, y, z: 0 < x + y + z < 3)})
    return PromiseTemplate(A, B, witness={"0": "0", "1": "1"}, name="1in3-nae")


def one_in_three() -> PromiseTemplate:
    """1-in-3 SAT against itself (same A as :func:`one_in_three_nae`)."""
    A = one_in_three_nae().A
    return PromiseTemplate(A, A, name="1in3")


def cycles23() -> PromiseTemplate:
    """Disjoint union of a directed 2-cycle and a directed 3-cycle."""
    dom = ("0", "1", "0'", "1'", "2'")
    sig = Signature((("e", 2),))
    arcs = [("0", "1"), ("1", "0"), ("0'", "1'"), ("1'", "2'"), ("2'", "0'")]
    A = RelationalStructure(dom, sig, {"e": arcs})
    return PromiseTemplate(A, A, name="cycles23")


def k3() -> PromiseTemplate:
    """Graph 3-colouring."""
    dom = ("0", "1", "2")
    sig = Signature((("e", 2),))
    A = RelationalStructure(dom, sig, {"e": [(a, b) for a in dom for b in dom if a != b]})
    return PromiseTemplate(A, A, name="k3")


CORPUS: Dict[str, Callable[[], PromiseTemplate]] = {
    "2sat": two_sat,
    "horn": horn_sat,
    "dual-horn": dual_horn_sat,
    "3lin": lin_z2,
    "1in3-nae": one_in_three_nae,
    "1in3": one_in_three,
    "cycles23": cycles23,
    "k3": k3,
}


def get_template(name: str) -> PromiseTemplate:
    try:
        return CORPUS[name]()
    except KeyError:
        raise KeyError(f"unknown corpus template {name!r}; known: {', '.join(CORPUS)}") from None
