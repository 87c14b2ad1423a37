"""Signatures, relational structures, promise templates and instances."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from ._search import solve_csp

Tuple_ = Tuple[str, ...]
Assignment = Dict[str, str]

DEFAULT_ENUMERATION_BITS = 40.0


class StructureError(ValueError):
    """Raised when a structure, template or instance violates its invariants."""


class SizeGuardError(RuntimeError):
    """Raised when a brute-force enumeration would exceed its configured bound."""


@dataclass(frozen=True)
class Signature:
    symbols: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        symbols = tuple((str(name), int(arity)) for name, arity in self.symbols)
        names = [name for name, _ in symbols]
        if len(set(names)) != len(names):
            raise StructureError(f"duplicate relation symbols in {names}")
        for name, arity in symbols:
            if arity < 1:
                raise StructureError(f"symbol {name!r} has arity {arity} < 1")
        object.__setattr__(self, "symbols", symbols)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def arity(self, name: str) -> int:
        for sym, ar in self.symbols:
            if sym == name:
                return ar
        raise StructureError(f"unknown relation symbol {name!r}")

    def __contains__(self, name) -> bool:
        return any(sym == name for sym, _ in self.symbols)


@dataclass(frozen=True)
class RelationalStructure:
    """A finite domain of string labels with one relation per symbol.

    Relation tuples are kept sorted by domain position, so two structures with
    the same relations compare equal regardless of input order.
    """

    domain: Tuple[str, ...]
    signature: Signature
    relations: Mapping[str, Tuple[Tuple_, ...]]
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        domain = tuple(str(a) for a in self.domain)
        if not domain:
            raise StructureError("domain must be nonempty")
        if len(set(domain)) != len(domain):
            raise StructureError(f"duplicate domain labels in {domain}")
        index = {a: k for k, a in enumerate(domain)}
        rels = {}
        for name, arity in self.signature.symbols:
            tuples = set()
            for t in self.relations.get(name, ()):
                t = tuple(str(a) for a in t)
                if len(t) != arity:
                    raise StructureError(f"tuple {t} of {name!r} has length {len(t)}, expected {arity}")
                for a in t:
                    if a not in index:
                        raise StructureError(f"tuple {t} of {name!r} uses {a!r} outside the domain")
                tuples.add(t)
            rels[name] = tuple(sorted(tuples, key=lambda t: tuple(index[a] for a in t)))
        extra = set(self.relations) - set(self.signature.names)
        if extra:
            raise StructureError(f"relations for undeclared symbols: {sorted(extra)}")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "_index", index)

    def __hash__(self):
        return hash((self.domain, self.signature, tuple(self.relations[s] for s in self.signature.names)))

    def index(self, label: str) -> int:
        return self._index[label]

    def relation(self, name: str) -> Tuple[Tuple_, ...]:
        if name not in self.relations:
            raise StructureError(f"unknown relation symbol {name!r}")
        return self.relations[name]

    def relation_set(self, name: str) -> frozenset:
        return frozenset(self.relation(name))


def check_homomorphism(src: RelationalStructure, dst: RelationalStructure, mapping: Mapping[str, str]) -> bool:
    if src.signature != dst.signature:
        raise StructureError("signature mismatch")
    missing = [a for a in src.domain if a not in mapping]
    if missing:
        raise StructureError(f"map is not total: no image for {missing}")
    for name in src.signature.names:
        target = dst.relation_set(name)
        for t in src.relation(name):
            if tuple(mapping[a] for a in t) not in target:
                return False
    return True


def find_homomorphism(src: RelationalStructure, dst: RelationalStructure,
                      max_bits: float = DEFAULT_ENUMERATION_BITS) -> Optional[Dict[str, str]]:
    """Lexicographically first homomorphism src -> dst, or None."""
    if src.signature != dst.signature:
        raise StructureError("signature mismatch")
    _guard(len(src.domain), len(dst.domain), max_bits)
    constraints = [(t, dst.relation_set(name)) for name in src.signature.names for t in src.relation(name)]
    for sol in solve_csp(src.domain, {a: dst.domain for a in src.domain}, constraints):
        return sol
    return None


def _guard(n: int, d: int, max_bits: float):
    bits = n * math.log2(d) if d > 1 else 0.0
    if bits > max_bits:
        raise SizeGuardError(f"search space of {d}^{n} values exceeds 2^{max_bits:g}")


@dataclass(frozen=True)
class PromiseTemplate:
    """A pair (A, B) over one signature together with a homomorphism A -> B."""

    A: RelationalStructure
    B: RelationalStructure
    witness: Optional[Mapping[str, str]] = None
    name: str = ""

    def __post_init__(self):
        if self.A.signature != self.B.signature:
            raise StructureError("A and B have different signatures")
        if self.witness is not None:
            witness = {str(k): str(v) for k, v in self.witness.items()}
            if not check_homomorphism(self.A, self.B, witness):
                raise StructureError("the supplied witness is not a homomorphism A -> B")
        else:
            witness = find_homomorphism(self.A, self.B)
            if witness is None:
                raise StructureError("there is no homomorphism A -> B")
        object.__setattr__(self, "witness", witness)

    def __hash__(self):
        return hash((self.A, self.B))

    @property
    def signature(self) -> Signature:
        return self.A.signature


Constraint = Tuple[str, Tuple[str, ...]]


@dataclass(frozen=True)
class Instance:
    variables: Tuple[str, ...]
    constraints: Tuple[Constraint, ...]

    def __post_init__(self):
        variables = tuple(str(v) for v in self.variables)
        if len(set(variables)) != len(variables):
            raise StructureError("duplicate variable names")
        declared = set(variables)
        constraints = []
        for symbol, scope in self.constraints:
            scope = tuple(str(v) for v in scope)
            for v in scope:
                if v not in declared:
                    raise StructureError(f"constraint {symbol}{scope} uses undeclared variable {v!r}")
            constraints.append((str(symbol), scope))
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "constraints", tuple(constraints))

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def m(self) -> int:
        return len(self.constraints)

    def validate(self, signature: Signature):
        for j, (symbol, scope) in enumerate(self.constraints):
            if symbol not in signature:
                raise StructureError(f"constraint {j}: unknown relation symbol {symbol!r}")
            if len(scope) != signature.arity(symbol):
                raise StructureError(
                    f"constraint {j}: {symbol!r} has arity {signature.arity(symbol)}, got {len(scope)} variables")

    def as_structure(self, signature: Signature) -> RelationalStructure:
        """The instance viewed as a structure on its variables."""
        self.validate(signature)
        rels: Dict[str, set] = {name: set() for name in signature.names}
        for symbol, scope in self.constraints:
            rels[symbol].add(scope)
        return RelationalStructure(self.variables, signature, rels)


def check_satisfies(instance: Instance, structure: RelationalStructure, asg: Mapping[str, str]) -> bool:
    instance.validate(structure.signature)
    missing = [v for v in instance.variables if v not in asg]
    if missing:
        raise StructureError(f"partial assignment: no value for {missing}")
    for symbol, scope in instance.constraints:
        if tuple(asg[v] for v in scope) not in structure.relation_set(symbol):
            return False
    return True


def brute_force_satisfiable(instance: Instance, structure: RelationalStructure,
                            max_bits: float = DEFAULT_ENUMERATION_BITS) -> Optional[Assignment]:
    """Lexicographically first satisfying assignment (variables in declared
    order, values in domain order), or None.

    Backtracking with forward checking visits assignments in the same order as
    plain enumeration, so the first hit is the lexicographic minimum.
    """
    instance.validate(structure.signature)
    _guard(instance.n, len(structure.domain), max_bits)
    constraints = [(scope, structure.relation_set(symbol)) for symbol, scope in instance.constraints]
    for sol in solve_csp(instance.variables, {v: structure.domain for v in instance.variables}, constraints):
        return sol
    return None


def structure_from_lists(domain: Sequence[str], relations: Mapping[str, Iterable[Sequence[str]]],
                         arities: Optional[Mapping[str, int]] = None) -> RelationalStructure:
    """Convenience constructor inferring arities from the first tuple."""
    symbols = []
    for name, tuples in relations.items():
        tuples = list(tuples)
        if arities and name in arities:
            ar = arities[name]
        elif tuples:
            ar = len(tuples[0])
        else:
            raise StructureError(f"cannot infer the arity of empty relation {name!r}")
        symbols.append((name, ar))
    return RelationalStructure(tuple(domain), Signature(tuple(symbols)), {k: list(v) for k, v in relations.items()})
