"""Minions of weight vectors and the maps relating them to polymorphisms.

An L-ary object is a tuple of coefficients indexed by ``range(L)``.  The minor
along ``pi: [L] -> [L']`` sums coefficients over preimages.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from .polymorphisms import Function, MinorMap, PolymorphismError, SymmetricFunction, compositions, take_minor
from .structures import RelationalStructure, SizeGuardError


class MinionError(ValueError):
    pass


def _push(values: Sequence, pi: MinorMap, zero):
    if pi.source_arity != len(values):
        raise MinionError(f"minor map has {pi.source_arity} sources but the object has arity {len(values)}")
    out = [zero] * pi.target_arity
    for i, v in enumerate(values):
        out[pi.images[i]] += v
    return tuple(out)


def _fmt(values) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


@dataclass(frozen=True)
class QconvObject:
    """A probability distribution on ``range(arity)``."""

    w: Tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.w)
        if any(x < 0 for x in w) or sum(w) != 1:
            raise MinionError(f"{_fmt(w)} is not a distribution")
        object.__setattr__(self, "w", w)

    @property
    def arity(self) -> int:
        return len(self.w)

    def minor(self, pi: MinorMap) -> "QconvObject":
        return QconvObject(_push(self.w, pi, Fraction(0)))

    def __str__(self):
        return "w=" + _fmt(self.w)


@dataclass(frozen=True)
class ZaffObject:
    """Integer coefficients summing to one."""

    r: Tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(x) for x in self.r)
        if sum(r) != 1:
            raise MinionError(f"{_fmt(r)} does not sum to 1")
        object.__setattr__(self, "r", r)

    @property
    def arity(self) -> int:
        return len(self.r)

    def minor(self, pi: MinorMap) -> "ZaffObject":
        return ZaffObject(_push(self.r, pi, 0))

    def __str__(self):
        return "r=" + _fmt(self.r)


@dataclass(frozen=True)
class MBlpAffObject:
    """A distribution ``w`` paired with integers ``r`` summing to one and
    vanishing wherever ``w`` does."""

    w: Tuple[Fraction, ...]
    r: Tuple[int, ...]

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.w)
        r = tuple(int(x) for x in self.r)
        if len(w) != len(r):
            raise MinionError("w and r have different arities")
        if any(x < 0 for x in w) or sum(w) != 1:
            raise MinionError(f"{_fmt(w)} is not a distribution")
        if sum(r) != 1:
            raise MinionError(f"{_fmt(r)} does not sum to 1")
        if any(wi == 0 and ri != 0 for wi, ri in zip(w, r)):
            raise MinionError("r is nonzero where w vanishes")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "r", r)

    @property
    def arity(self) -> int:
        return len(self.w)

    def minor(self, pi: MinorMap) -> "MBlpAffObject":
        return MBlpAffObject(_push(self.w, pi, Fraction(0)), _push(self.r, pi, 0))

    def __str__(self):
        return f"w={_fmt(self.w)};r={_fmt(self.r)}"


MinionObject = Union[QconvObject, ZaffObject, MBlpAffObject]


def minor(obj: MinionObject, pi: MinorMap) -> MinionObject:
    return obj.minor(pi)


def two_block_witness(half: int) -> MBlpAffObject:
    """The (2*half+1)-ary object with uniform ``w`` and ``r = (1,-1,1,...,1)``.

    Every permutation that keeps odd positions odd and even positions even
    fixes it.
    """
    if half < 1:
        raise MinionError("half must be at least 1")
    n = 2 * half + 1
    return MBlpAffObject(tuple(Fraction(1, n) for _ in range(n)), tuple(1 if i % 2 == 0 else -1 for i in range(n)))


def _integer_vectors(support: Sequence[int], arity: int, budget: int) -> Iterator[Tuple[int, ...]]:
    """Integer vectors on ``support`` summing to 1 with l1-norm at most ``budget``."""
    sup = list(support)

    def rec(k, remaining_sum, remaining_budget):
        if k == len(sup) - 1:
            if abs(remaining_sum) <= remaining_budget:
                yield (remaining_sum,)
            return
        for v in range(-remaining_budget, remaining_budget + 1):
            for rest in rec(k + 1, remaining_sum - v, remaining_budget - abs(v)):
                yield (v,) + rest

    if not sup:
        return
    for vals in rec(0, 1, budget):
        out = [0] * arity
        for i, v in zip(sup, vals):
            out[i] = v
        yield tuple(out)


@dataclass(frozen=True)
class TruncatedMinion:
    """Finite slices of a minion: denominators dividing ``ell`` and
    ``sum |r| <= M``.  ``kind`` is one of ``qconv``, ``mblpaff``, ``zaff``;
    ``ell`` is ignored for ``zaff`` and ``M`` for ``qconv``."""

    kind: str
    ell: int = 1
    M: int = 1
    max_arity: int = 8

    def __post_init__(self):
        if self.kind not in ("qconv", "mblpaff", "zaff"):
            raise MinionError(f"unknown minion kind {self.kind!r}")
        if self.ell < 1 or self.M < 1:
            raise MinionError("ell and M must be positive")

    def contains(self, obj: MinionObject) -> bool:
        if obj.arity > self.max_arity:
            return False
        if self.kind == "qconv":
            return isinstance(obj, QconvObject) and all((x * self.ell).denominator == 1 for x in obj.w)
        if self.kind == "zaff":
            return isinstance(obj, ZaffObject) and sum(abs(x) for x in obj.r) <= self.M
        return (isinstance(obj, MBlpAffObject) and all((x * self.ell).denominator == 1 for x in obj.w)
                and sum(abs(x) for x in obj.r) <= self.M)

    def objects(self, arity: int) -> Iterator[MinionObject]:
        if arity > self.max_arity:
            raise SizeGuardError(f"arity {arity} exceeds the truncation bound {self.max_arity}")
        if self.kind == "zaff":
            for r in _integer_vectors(range(arity), arity, self.M):
                yield ZaffObject(r)
            return
        for counts in compositions(self.ell, arity):
            w = tuple(Fraction(c, self.ell) for c in counts)
            if self.kind == "qconv":
                yield QconvObject(w)
            else:
                support = [i for i, c in enumerate(counts) if c]
                for r in _integer_vectors(support, arity, self.M):
                    yield MBlpAffObject(w, r)


def all_minor_maps(source: int, target: int) -> Iterator[MinorMap]:
    for images in product(range(target), repeat=source):
        yield MinorMap(images, target)


def build_free_structure(minion: TruncatedMinion, A: RelationalStructure,
                         max_objects: int = 20000) -> Tuple[RelationalStructure, Dict[str, MinionObject]]:
    """The free structure of the truncated minion over ``A``.

    Its domain is every ``|A|``-ary object; a k-tuple is related when it is the
    list of coordinate projections of some ``|R^A|``-ary object of the
    truncation.  Returns the structure and the label -> object map.
    """
    d = len(A.domain)
    elems = list(minion.objects(d))
    if len(elems) > max_objects:
        raise SizeGuardError(f"{len(elems)} domain objects exceed the limit {max_objects}")
    labels = {str(o): o for o in elems}
    index = {a: k for k, a in enumerate(A.domain)}
    relations = {}
    for name, k in A.signature.symbols:
        rows = A.relation(name)
        projections = [MinorMap(tuple(index[y[pos]] for y in rows), d) for pos in range(k)]
        tuples = set()
        count = 0
        for p in minion.objects(len(rows)) if rows else ():
            count += 1
            if count > max_objects:
                raise SizeGuardError(f"more than {max_objects} objects of arity {len(rows)}")
            tuples.add(tuple(str(p.minor(pi)) for pi in projections))
        relations[name] = tuples
    return RelationalStructure(tuple(labels), A.signature, relations), labels


class WeightedMinor(Function):
    """The minor of a symmetric ``f`` that repeats argument ``i`` exactly
    ``weights[i]`` times."""

    def __init__(self, f: SymmetricFunction, weights: Sequence[int]):
        weights = tuple(int(x) for x in weights)
        if any(x < 0 for x in weights) or sum(weights) != f.arity:
            raise PolymorphismError(f"weights {weights} are not a split of arity {f.arity}")
        self.f = f
        self.weights = weights
        self.arity = len(weights)
        self.domain = f.domain
        self.codomain = f.codomain
        self._index = {a: k for k, a in enumerate(f.domain)}

    def evaluate(self, args):
        counts = [0] * len(self.domain)
        for a, m in zip(args, self.weights):
            counts[self._index[a]] += m
        return self.f.evaluate_counts(tuple(counts))


class SymmetricHomomorphism:
    """Maps objects of the ``(ell, M)`` truncation of the BLP+affine minion to
    minors of a symmetric ``f`` of arity ``L >= M * ell**2``.

    With ``L = u*ell + v`` and ``0 <= v < ell``, the object ``(w, r)`` goes to
    the minor repeating coordinate ``i`` exactly ``u*ell*w(i) + v*r(i)`` times.
    """

    def __init__(self, f: SymmetricFunction, ell: int, M: int):
        if f.arity < M * ell * ell:
            raise PolymorphismError(f"arity {f.arity} is below M*ell^2 = {M * ell * ell}")
        self.f = f
        self.ell = ell
        self.M = M
        self.u, self.v = divmod(f.arity, ell)

    def weights(self, obj: MBlpAffObject) -> Tuple[int, ...]:
        if any((x * self.ell).denominator != 1 for x in obj.w) or sum(abs(x) for x in obj.r) > self.M:
            raise MinionError(f"{obj} lies outside the ({self.ell}, {self.M}) truncation")
        out = []
        for wi, ri in zip(obj.w, obj.r):
            W = self.u * self.ell * wi + self.v * ri
            assert W.denominator == 1 and W >= 0, (obj, W)
            out.append(int(W))
        return tuple(out)

    def __call__(self, obj: MBlpAffObject) -> WeightedMinor:
        return WeightedMinor(self.f, self.weights(obj))


def hom_from_symmetric_polymorphism(f: SymmetricFunction, ell: int, M: int) -> SymmetricHomomorphism:
    return SymmetricHomomorphism(f, ell, M)


def preserves_minor(phi: SymmetricHomomorphism, obj: MBlpAffObject, pi: MinorMap) -> bool:
    """``phi(obj / pi) == phi(obj) / pi`` compared as full tables."""
    return phi(obj.minor(pi)).to_table() == take_minor(phi(obj), pi).to_table()
