"""Finite functions A^L -> B, their symmetric and block-symmetric forms,
minors, polymorphism checks and enumeration."""

from __future__ import annotations

from itertools import product
from math import comb
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ._search import solve_csp
from .structures import PromiseTemplate, SizeGuardError

BOOL = ("0", "1")
Histogram = Tuple[int, ...]

DEFAULT_MAX_CHECKS = 2_000_000


class PolymorphismError(ValueError):
    pass


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Tuples of ``parts`` nonnegative integers summing to ``total``, in
    lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def count_compositions(total: int, parts: int) -> int:
    if parts == 0:
        return int(total == 0)
    return comb(total + parts - 1, parts - 1)


class MinorMap:
    """A total map ``pi: [L] -> [L']`` given as a tuple of 0-based images."""

    def __init__(self, images: Sequence[int], target_arity: Optional[int] = None):
        images = tuple(int(i) for i in images)
        if target_arity is None:
            target_arity = max(images) + 1 if images else 0
        if any(not 0 <= i < target_arity for i in images):
            raise PolymorphismError(f"minor map {images} leaves range [0, {target_arity})")
        self.images = images
        self.target_arity = target_arity

    @property
    def source_arity(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def then(self, tau: "MinorMap") -> "MinorMap":
        """The composite ``tau . self``."""
        if tau.source_arity != self.target_arity:
            raise PolymorphismError("maps do not compose")
        return MinorMap(tuple(tau.images[i] for i in self.images), tau.target_arity)

    def is_bijection(self) -> bool:
        return self.source_arity == self.target_arity and len(set(self.images)) == self.source_arity

    def __eq__(self, other):
        return isinstance(other, MinorMap) and (self.images, self.target_arity) == (other.images, other.target_arity)

    def __hash__(self):
        return hash((self.images, self.target_arity))

    def __repr__(self):
        return f"MinorMap({self.images}, {self.target_arity})"


class Function:
    """Base class: an ``arity``-ary map from ``domain`` labels to ``codomain`` labels."""

    arity: int
    domain: Tuple[str, ...]
    codomain: Tuple[str, ...]

    def evaluate(self, args: Sequence[str]) -> str:
        raise NotImplementedError

    def __call__(self, *args: str) -> str:
        return self.evaluate(args)

    def _histogram(self, args: Sequence[str]) -> Histogram:
        counts = [0] * len(self.domain)
        index = {a: k for k, a in enumerate(self.domain)}
        for a in args:
            counts[index[a]] += 1
        return tuple(counts)

    def to_table(self) -> "FunctionTable":
        table = {args: self.evaluate(args) for args in product(self.domain, repeat=self.arity)}
        return FunctionTable(self.arity, self.domain, self.codomain, table)


class FunctionTable(Function):
    def __init__(self, arity: int, domain: Sequence[str], codomain: Sequence[str], table: Mapping[tuple, str]):
        self.arity = int(arity)
        self.domain = tuple(domain)
        self.codomain = tuple(codomain)
        table = {tuple(k): v for k, v in table.items()}
        expected = self.arity and len(self.domain) ** self.arity or 1
        if len(table) != expected or any(len(k) != self.arity for k in table):
            raise PolymorphismError("function table is not total on A^L")
        if any(v not in self.codomain for v in table.values()):
            raise PolymorphismError("function table leaves the codomain")
        self.table = table

    def evaluate(self, args):
        return self.table[tuple(args)]

    def to_table(self):
        return self

    def __eq__(self, other):
        if not isinstance(other, Function):
            return NotImplemented
        other = other.to_table()
        return (self.arity, self.domain, self.codomain, self.table) == (
            other.arity, other.domain, other.codomain, other.table)

    def __hash__(self):
        return hash((self.arity, self.domain, tuple(sorted(self.table.items()))))

    def __repr__(self):
        return f"FunctionTable(arity={self.arity})"


class SymmetricFunction(Function):
    """Either a table from histograms (counts per domain element, in domain
    order) to codomain labels, or a closed-form ``rule`` on histograms."""

    def __init__(self, arity: int, domain: Sequence[str], codomain: Sequence[str],
                 table: Optional[Mapping[Histogram, str]] = None,
                 rule: Optional[Callable[[Histogram], str]] = None, name: str = ""):
        if (table is None) == (rule is None):
            raise PolymorphismError("give exactly one of table and rule")
        self.arity = int(arity)
        self.domain = tuple(domain)
        self.codomain = tuple(codomain)
        self.name = name
        self.rule = rule
        if table is not None:
            table = {tuple(h): v for h, v in table.items()}
            for h, v in table.items():
                if len(h) != len(self.domain) or sum(h) != self.arity or min(h) < 0:
                    raise PolymorphismError(f"bad histogram {h} for arity {self.arity}")
                if v not in self.codomain:
                    raise PolymorphismError(f"value {v!r} outside the codomain")
            if len(table) != count_compositions(self.arity, len(self.domain)):
                raise PolymorphismError("histogram table is not total")
        self.table = table

    def evaluate_counts(self, counts: Histogram) -> str:
        if self.table is not None:
            return self.table[tuple(counts)]
        return self.rule(tuple(counts))

    def evaluate(self, args):
        if len(args) != self.arity:
            raise PolymorphismError(f"expected {self.arity} arguments, got {len(args)}")
        return self.evaluate_counts(self._histogram(args))

    def histogram_table(self) -> Dict[Histogram, str]:
        return {h: self.evaluate_counts(h) for h in compositions(self.arity, len(self.domain))}

    def __repr__(self):
        return f"SymmetricFunction({self.name or 'table'}, arity={self.arity})"


class BlockSymmetricFunction(Function):
    """Invariant under permutations inside each block of coordinates.

    ``blocks`` partitions ``range(arity)``.  Values are given per tuple of
    block histograms, as a table or a closed-form ``rule``.
    """

    def __init__(self, blocks: Sequence[Sequence[int]], domain: Sequence[str], codomain: Sequence[str],
                 table: Optional[Mapping[Tuple[Histogram, ...], str]] = None,
                 rule: Optional[Callable[[Tuple[Histogram, ...]], str]] = None, name: str = ""):
        if (table is None) == (rule is None):
            raise PolymorphismError("give exactly one of table and rule")
        self.blocks = tuple(tuple(int(i) for i in b) for b in blocks)
        self.arity = sum(len(b) for b in self.blocks)
        check_partition(self.blocks, self.arity)
        self.domain = tuple(domain)
        self.codomain = tuple(codomain)
        self.name = name
        self.rule = rule
        if table is not None:
            table = {tuple(tuple(h) for h in key): v for key, v in table.items()}
            expected = 1
            for b in self.blocks:
                expected *= count_compositions(len(b), len(self.domain))
            if len(table) != expected:
                raise PolymorphismError("block histogram table is not total")
        self.table = table

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @property
    def width(self) -> int:
        return min(self.block_sizes)

    def evaluate_counts(self, counts: Sequence[Histogram]) -> str:
        key = tuple(tuple(h) for h in counts)
        if self.table is not None:
            return self.table[key]
        return self.rule(key)

    def evaluate(self, args):
        if len(args) != self.arity:
            raise PolymorphismError(f"expected {self.arity} arguments, got {len(args)}")
        return self.evaluate_counts(tuple(self._histogram([args[i] for i in b]) for b in self.blocks))

    def __repr__(self):
        return f"BlockSymmetricFunction({self.name or 'table'}, blocks={self.block_sizes})"


def check_partition(blocks: Sequence[Sequence[int]], arity: int):
    seen = sorted(i for b in blocks for i in b)
    if seen != list(range(arity)) or any(len(b) == 0 for b in blocks):
        raise PolymorphismError(f"blocks {blocks} do not partition range({arity})")


# ---------------------------------------------------------------------------
# closed-form families

def majority(arity: int) -> SymmetricFunction:
    if arity % 2 == 0:
        raise PolymorphismError("majority is defined for odd arities")
    return SymmetricFunction(arity, BOOL, BOOL, rule=lambda h: "1" if 2 * h[1] > arity else "0",
                             name=f"majority_{arity}")


def parity(arity: int) -> SymmetricFunction:
    return SymmetricFunction(arity, BOOL, BOOL, rule=lambda h: "1" if h[1] % 2 else "0", name=f"parity_{arity}")


def minimum(arity: int, domain: Sequence[str] = BOOL) -> SymmetricFunction:
    """Smallest argument in domain order."""
    domain = tuple(domain)
    return SymmetricFunction(arity, domain, domain,
                             rule=lambda h: domain[next(k for k, c in enumerate(h) if c)], name=f"min_{arity}")


def maximum(arity: int, domain: Sequence[str] = BOOL) -> SymmetricFunction:
    domain = tuple(domain)
    return SymmetricFunction(arity, domain, domain,
                             rule=lambda h: domain[max(k for k, c in enumerate(h) if c)], name=f"max_{arity}")


def plurality(arity: int, domain: Sequence[str] = BOOL) -> SymmetricFunction:
    """Most frequent argument; ties go to the smallest domain index."""
    domain = tuple(domain)

    def rule(h):
        best = max(h)
        return domain[h.index(best)]

    return SymmetricFunction(arity, domain, domain, rule=rule, name=f"plurality_{arity}")


def alternating_threshold(arity: int) -> BlockSymmetricFunction:
    """``1[x1 - x2 + x3 - ... >= 1]``; blocks are the odd and the even positions."""
    odd = tuple(range(0, arity, 2))
    even = tuple(range(1, arity, 2))
    blocks = (odd, even) if even else (odd,)

    def rule(hs):
        ones = hs[0][1] - (hs[1][1] if len(hs) > 1 else 0)
        return "1" if ones >= 1 else "0"

    return BlockSymmetricFunction(blocks, BOOL, BOOL, rule=rule, name=f"AT_{arity}")


FAMILIES = {
    "majority": majority,
    "parity": parity,
    "min": minimum,
    "max": maximum,
    "plurality": plurality,
    "AT": alternating_threshold,
}


def family(name: str, arity: int, domain: Optional[Sequence[str]] = None) -> Function:
    if name not in FAMILIES:
        raise PolymorphismError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    if name in ("min", "max", "plurality") and domain is not None:
        return FAMILIES[name](arity, domain)
    return FAMILIES[name](arity)


# ---------------------------------------------------------------------------
# polymorphism checks

def _check_domains(f: Function, template: PromiseTemplate):
    if tuple(f.domain) != template.A.domain:
        raise PolymorphismError(f"function domain {f.domain} differs from A's domain {template.A.domain}")
    if set(f.codomain) - set(template.B.domain):
        raise PolymorphismError(f"function codomain {f.codomain} is not inside B's domain {template.B.domain}")


def polymorphism_checks(f: Function, template: PromiseTemplate) -> int:
    """Number of row multisets (or sequences) :func:`is_polymorphism` visits."""
    total = 0
    for name in template.signature.names:
        r = len(template.A.relation(name))
        if isinstance(f, SymmetricFunction):
            total += count_compositions(f.arity, r)
        elif isinstance(f, BlockSymmetricFunction):
            k = 1
            for size in f.block_sizes:
                k *= count_compositions(size, r)
            total += k
        else:
            total += r ** f.arity
    return total


def _column_histograms(rows: Sequence[tuple], counts: Sequence[int], k: int, index: Mapping[str, int], d: int):
    cols = [[0] * d for _ in range(k)]
    for y, c in zip(rows, counts):
        if c:
            for pos in range(k):
                cols[pos][index[y[pos]]] += c
    return [tuple(col) for col in cols]


def is_polymorphism(f: Function, template: PromiseTemplate, max_checks: int = DEFAULT_MAX_CHECKS) -> bool:
    """Whether applying ``f`` column-wise to any ``arity`` rows of each ``R^A``
    lands in ``R^B``.

    Symmetric functions only need multisets of rows (their column histograms);
    block-symmetric functions need one multiset per block.
    """
    _check_domains(f, template)
    needed = polymorphism_checks(f, template)
    if needed > max_checks:
        raise SizeGuardError(f"polymorphism check needs {needed} evaluations (limit {max_checks})")
    A, B = template.A, template.B
    index = {a: k for k, a in enumerate(A.domain)}
    d = len(A.domain)
    for name, k in template.signature.symbols:
        rows = A.relation(name)
        target = B.relation_set(name)
        if isinstance(f, SymmetricFunction):
            for counts in compositions(f.arity, len(rows)):
                cols = _column_histograms(rows, counts, k, index, d)
                if tuple(f.evaluate_counts(h) for h in cols) not in target:
                    return False
        elif isinstance(f, BlockSymmetricFunction):
            per_block = [list(compositions(size, len(rows))) for size in f.block_sizes]
            for choice in product(*per_block):
                block_cols = [_column_histograms(rows, counts, k, index, d) for counts in choice]
                image = tuple(f.evaluate_counts(tuple(bc[pos] for bc in block_cols)) for pos in range(k))
                if image not in target:
                    return False
        else:
            for matrix in product(rows, repeat=f.arity):
                image = tuple(f.evaluate(tuple(row[pos] for row in matrix)) for pos in range(k))
                if image not in target:
                    return False
    return True


# ---------------------------------------------------------------------------
# minors and block symmetry

def take_minor(f: Function, pi: MinorMap) -> Function:
    """``g(x_1..x_L') = f(x_pi(1), ..., x_pi(L))``."""
    if pi.source_arity != f.arity:
        raise PolymorphismError(f"minor map has {pi.source_arity} sources but f has arity {f.arity}")
    if isinstance(f, SymmetricFunction) and pi.is_bijection():
        return f
    table = {}
    for args in product(f.domain, repeat=pi.target_arity):
        table[args] = f.evaluate(tuple(args[pi.images[i]] for i in range(f.arity)))
    return FunctionTable(pi.target_arity, f.domain, f.codomain, table)


def check_block_symmetry(f: Function, blocks: Sequence[Sequence[int]]) -> bool:
    """Invariance under every block-preserving permutation, tested on the
    adjacent transpositions inside each block (they generate the group)."""
    check_partition(blocks, f.arity)
    swaps = [(b[i], b[i + 1]) for b in blocks for i in range(len(b) - 1)]
    if not swaps:
        return True
    for args in product(f.domain, repeat=f.arity):
        value = f.evaluate(args)
        for i, j in swaps:
            if args[i] == args[j]:
                continue
            swapped = list(args)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            if f.evaluate(swapped) != value:
                return False
    return True


# ---------------------------------------------------------------------------
# enumeration

def _block_symmetric_csp(template: PromiseTemplate, block_sizes: Sequence[int], max_checks: int):
    A, B = template.A, template.B
    d = len(A.domain)
    index = {a: k for k, a in enumerate(A.domain)}
    keys = list(product(*[list(compositions(s, d)) for s in block_sizes]))
    work = 0
    for name in template.signature.names:
        k = 1
        for s in block_sizes:
            k *= count_compositions(s, len(A.relation(name)))
        work += k
    if work > max_checks:
        raise SizeGuardError(f"enumeration needs {work} row multisets (limit {max_checks})")
    merged: Dict[tuple, frozenset] = {}
    for name, k in template.signature.symbols:
        rows = A.relation(name)
        target = B.relation_set(name)
        per_block = [list(compositions(s, len(rows))) for s in block_sizes]
        for choice in product(*per_block):
            block_cols = [_column_histograms(rows, counts, k, index, d) for counts in choice]
            scope = tuple(tuple(bc[pos] for bc in block_cols) for pos in range(k))
            merged[scope] = merged[scope] & target if scope in merged else target
    return keys, list(merged.items())


def enumerate_block_symmetric_polymorphisms(template: PromiseTemplate, block_sizes: Sequence[int],
                                            limit: Optional[int] = None,
                                            max_checks: int = DEFAULT_MAX_CHECKS) -> List[BlockSymmetricFunction]:
    """All polymorphisms symmetric inside consecutive blocks of the given
    sizes, ordered by their tables (block histograms in lexicographic order,
    values in codomain order)."""
    keys, constraints = _block_symmetric_csp(template, block_sizes, max_checks)
    blocks = []
    start = 0
    for s in block_sizes:
        blocks.append(tuple(range(start, start + s)))
        start += s
    out = []
    for sol in solve_csp(keys, {k: template.B.domain for k in keys}, constraints):
        out.append(BlockSymmetricFunction(blocks, template.A.domain, template.B.domain, table=sol))
        if limit is not None and len(out) >= limit:
            break
    return out


def enumerate_symmetric_polymorphisms(template: PromiseTemplate, arity: int, limit: Optional[int] = None,
                                      max_checks: int = DEFAULT_MAX_CHECKS) -> List[SymmetricFunction]:
    found = enumerate_block_symmetric_polymorphisms(template, (arity,), limit=limit, max_checks=max_checks)
    return [SymmetricFunction(arity, template.A.domain, template.B.domain,
                              table={key[0]: v for key, v in g.table.items()}) for g in found]
