"""Ground truth by brute force, instance enumeration, and the hunt for
instances the algorithm accepts although they are unsatisfiable in B."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .affine import affine_feasible, build_affine
from .blp import build_blp
from .decide import Decision, decide
from .linalg import lp_feasible
from .polymorphisms import enumerate_block_symmetric_polymorphisms, enumerate_symmetric_polymorphisms
from .structures import Instance, PromiseTemplate, SizeGuardError, brute_force_satisfiable


@dataclass(frozen=True)
class Classification:
    sat_in_A: bool
    sat_in_B: bool
    lp: bool
    affine_unrefined: bool
    decision: Decision

    @property
    def blpaff(self) -> bool:
        return self.decision.accepted

    def consistent(self) -> bool:
        """The implications that must hold for any template."""
        if self.sat_in_A and not (self.lp and self.affine_unrefined and self.blpaff):
            return False
        if self.sat_in_A and not self.sat_in_B:
            return False
        if self.blpaff and not self.lp:
            return False
        return True

    def as_dict(self) -> Dict[str, object]:
        return {"sat_in_A": self.sat_in_A, "sat_in_B": self.sat_in_B, "lp": self.lp,
                "affine_unrefined": self.affine_unrefined, "blpaff": str(self.decision)}


def classify(template: PromiseTemplate, instance: Instance) -> Classification:
    return Classification(
        sat_in_A=brute_force_satisfiable(instance, template.A) is not None,
        sat_in_B=brute_force_satisfiable(instance, template.B) is not None,
        lp=lp_feasible(build_blp(instance, template.A).system).feasible,
        affine_unrefined=affine_feasible(build_affine(instance, template.A)) is not None,
        decision=decide(template, instance),
    )


# ---------------------------------------------------------------------------
# instance generation

def random_instance(template: PromiseTemplate, n: int, m: int, rng: random.Random,
                    repeated_variables: bool = False) -> Instance:
    variables = tuple(f"x{i}" for i in range(n))
    cons = []
    symbols = [(s, ar) for s, ar in template.signature.symbols if repeated_variables or ar <= n]
    if not symbols:
        raise ValueError(f"no symbol fits {n} distinct variables")
    for _ in range(m):
        sym, ar = rng.choice(symbols)
        if repeated_variables:
            scope = tuple(rng.choice(variables) for _ in range(ar))
        else:
            scope = tuple(rng.sample(variables, ar))
        cons.append((sym, scope))
    return Instance(variables, tuple(cons))


def _position_symmetries(template: PromiseTemplate, symbol: str) -> List[Tuple[int, ...]]:
    """Coordinate permutations leaving both R^A and R^B unchanged."""
    k = template.signature.arity(symbol)
    out = []
    for perm in permutations(range(k)):
        ok = True
        for S in (template.A, template.B):
            rel = S.relation_set(symbol)
            if {tuple(t[perm[i]] for i in range(k)) for t in rel} != rel:
                ok = False
                break
        if ok:
            out.append(perm)
    return out


class InstanceSpace:
    """Constraint sets over ``n`` variables, listed once per renaming class.

    Atoms whose scopes differ only by a coordinate symmetry of the relation
    are identified.  Classes of size ``m`` are grown from classes of size
    ``m - 1``, which reaches every class because removing any atom from a set
    leaves a set whose class was already listed.
    """

    def __init__(self, template: PromiseTemplate, n: int, repeated_variables: bool = True,
                 max_permutations: int = 50_000):
        self.template = template
        self.n = n
        self.variables = tuple(f"x{i}" for i in range(n))
        perms = []
        for k, p in enumerate(permutations(range(n))):
            if k >= max_permutations:
                raise SizeGuardError(f"{n}! renamings exceed the limit {max_permutations}")
            perms.append(p)
        sym_perms = {s: _position_symmetries(template, s) for s in template.signature.names}
        atom_ids: Dict[tuple, int] = {}
        atoms = []
        for sym, ar in template.signature.symbols:
            for scope in product(range(n), repeat=ar):
                if not repeated_variables and len(set(scope)) < ar:
                    continue
                key = self._normal(sym, scope, sym_perms[sym])
                if key not in atom_ids:
                    atom_ids[key] = len(atoms)
                    atoms.append(key)
        self.atoms = atoms
        self.tables = []
        for p in perms:
            self.tables.append([atom_ids[self._normal(sym, tuple(p[v] for v in scope), sym_perms[sym])]
                                for sym, scope in atoms])
        self.atom_vars = [frozenset(scope) for _, scope in atoms]

    @staticmethod
    def _normal(sym, scope, sym_perms):
        return sym, min(tuple(scope[q[i]] for i in range(len(scope))) for q in sym_perms)

    def canonical(self, ids: Sequence[int]) -> Tuple[int, ...]:
        return min(tuple(sorted(t[a] for a in ids)) for t in self.tables)

    def levels(self, max_m: int) -> Iterator[Tuple[int, List[Tuple[int, ...]]]]:
        """Yield ``(m, sorted canonical sets of m atoms)`` for m = 0..max_m."""
        level = [()]
        yield 0, level
        for m in range(1, max_m + 1):
            seen = set()
            nxt = []
            for s in level:
                present = set(s)
                for a in range(len(self.atoms)):
                    if a in present:
                        continue
                    cand = tuple(sorted(s + (a,)))
                    if cand in seen:
                        continue
                    orbit = {tuple(sorted(t[x] for x in cand)) for t in self.tables}
                    seen |= orbit
                    nxt.append(min(orbit))
            level = sorted(nxt)
            yield m, level

    def uses_all_variables(self, ids: Sequence[int]) -> bool:
        used = set()
        for a in ids:
            used |= self.atom_vars[a]
        return len(used) == self.n

    def instance(self, ids: Sequence[int]) -> Instance:
        cons = tuple((sym, tuple(self.variables[v] for v in scope)) for sym, scope in (self.atoms[a] for a in ids))
        return Instance(self.variables, cons)


def enumerate_instances(template: PromiseTemplate, max_vars: int, max_constraints: int,
                        repeated_variables: bool = True) -> Iterator[Instance]:
    """Every instance up to renaming with at most the given sizes, each using
    all of its variables, ordered by number of variables then constraints."""
    for n in range(1, max_vars + 1):
        space = InstanceSpace(template, n, repeated_variables)
        for m, level in space.levels(max_constraints):
            if m == 0:
                continue
            for ids in level:
                if space.uses_all_variables(ids):
                    yield space.instance(ids)


@dataclass
class FoolingSearchResult:
    instance: Optional[Instance]
    max_vars: int
    max_constraints: int
    examined: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.instance is not None

    def summary(self) -> str:
        if self.found:
            return (f"fooling instance with {self.instance.n} variables and {self.instance.m} constraints "
                    f"after {self.examined} candidates")
        return (f"no fooling instance with at most {self.max_vars} variables and "
                f"{self.max_constraints} constraints ({self.examined} candidates examined)")


def search_fooling_instance(template: PromiseTemplate, max_vars: int, max_constraints: int,
                            repeated_variables: bool = True, max_candidates: Optional[int] = None
                            ) -> FoolingSearchResult:
    """First instance, by increasing number of constraints and then of
    variables, that the algorithm accepts but that has no solution in B.

    Only instances unsatisfiable in B are handed to the algorithm.
    """
    result = FoolingSearchResult(None, max_vars, max_constraints)
    spaces = {}
    levels = {}
    widest = max(ar for _, ar in template.signature.symbols)
    for m in range(1, max_constraints + 1):
        for n in range(1, min(max_vars, m * widest) + 1):
            if n not in spaces:
                spaces[n] = InstanceSpace(template, n, repeated_variables)
                levels[n] = spaces[n].levels(max_constraints)
            space = spaces[n]
            # a space opened late must still skip to level m
            k, level = next(levels[n])
            while k < m:
                k, level = next(levels[n])
            for ids in level:
                if not space.uses_all_variables(ids):
                    continue
                result.examined += 1
                if max_candidates is not None and result.examined > max_candidates:
                    raise SizeGuardError(f"examined more than {max_candidates} candidates")
                inst = space.instance(ids)
                if brute_force_satisfiable(inst, template.B) is not None:
                    continue
                if decide(template, inst).accepted:
                    result.instance = inst
                    return result
    return result


# ---------------------------------------------------------------------------
# block-symmetry census

def block_partitions(total: int, min_block: int) -> Iterator[Tuple[int, ...]]:
    """Non-increasing tuples of block sizes >= ``min_block`` summing to ``total``."""
    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for size in range(min(remaining, largest), min_block - 1, -1):
            for rest in rec(remaining - size, size):
                yield (size,) + rest
    yield from rec(total, total)


@dataclass
class BlockSymmetryReport:
    max_arity: int
    min_width: int
    wide: Dict[Tuple[int, ...], int]
    unary: int

    @property
    def holds(self) -> bool:
        """No wide block-symmetric polymorphism, yet some unary one."""
        return self.unary > 0 and all(v == 0 for v in self.wide.values())

    def lines(self) -> List[str]:
        out = [f"blocks={sizes} polymorphisms={'some' if c else 'none'}" for sizes, c in self.wide.items()]
        out.append(f"unary polymorphisms={self.unary}")
        return out


def wide_block_symmetry_report(template: PromiseTemplate, max_arity: int = 6, min_width: int = 2
                               ) -> BlockSymmetryReport:
    """Exhaustively look for block-symmetric polymorphisms whose blocks all
    have at least ``min_width`` coordinates, over every total arity up to
    ``max_arity``."""
    wide = {}
    for total in range(min_width, max_arity + 1):
        for sizes in block_partitions(total, min_width):
            wide[sizes] = len(enumerate_block_symmetric_polymorphisms(template, sizes, limit=1))
    unary = len(enumerate_symmetric_polymorphisms(template, 1))
    return BlockSymmetryReport(max_arity, min_width, wide, unary)
