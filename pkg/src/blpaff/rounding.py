"""Turn accepting LP and affine witnesses into an assignment in B by feeding
integer repetition counts to a (block-)symmetric polymorphism."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .affine import AffinePoint
from .blp import BlpPoint, PKey, WKey
from .polymorphisms import (BlockSymmetricFunction, Function, FunctionTable, SymmetricFunction, family,
                            is_polymorphism, polymorphism_checks)
from .structures import Assignment, Instance, PromiseTemplate, check_satisfies

log = logging.getLogger(__name__)

DEFAULT_VERIFY_LIMIT = 200_000
DEFAULT_ARITY_CAP = 10 ** 7


class RoundingError(RuntimeError):
    pass


class ArityUnavailable(RoundingError):
    pass


class NotAPolymorphism(RoundingError):
    pass


@dataclass(frozen=True)
class RoundingParams:
    ell: int
    M: int
    L: int
    u: int
    v: int

    @property
    def required_arity(self) -> int:
        return self.M * self.ell ** 2


@dataclass(frozen=True)
class RoundedCounts:
    L: int
    W: Dict[WKey, int]
    P: Dict[PKey, int]


def witness_scale(blp: BlpPoint, aff: AffinePoint) -> Tuple[int, int]:
    """``(ell, M)``: the LP common denominator and the largest affine entry
    in absolute value, floored at 1."""
    return blp.denominator, max(aff.max_abs, 1)


def _params_for(ell: int, M: int, L: int) -> RoundingParams:
    if L < M * ell * ell:
        raise ArityUnavailable(f"arity {L} is below M*ell^2 = {M * ell * ell}")
    u, v = divmod(L, ell)
    return RoundingParams(ell, M, L, u, v)


def rounding_params(blp: BlpPoint, aff: AffinePoint,
                    available_arities: Union[Callable[[int], bool], Iterable[int], None] = None,
                    cap: int = DEFAULT_ARITY_CAP) -> RoundingParams:
    """Pick the smallest available arity ``L >= M * ell**2``."""
    ell, M = witness_scale(blp, aff)
    need = M * ell * ell
    if available_arities is None:
        L = need
    elif callable(available_arities):
        L = next((k for k in range(need, cap + 1) if available_arities(k)), None)
    else:
        L = min((k for k in available_arities if k >= need), default=None)
    if L is None:
        raise ArityUnavailable(f"no available arity at least M*ell^2 = {need}")
    return _params_for(ell, M, L)


def compute_counts(params: RoundingParams, blp: BlpPoint, aff: AffinePoint, instance: Instance) -> RoundedCounts:
    """``W_i(a) = u*ell*w_i(a) + v*r_i(a)`` and ``P_j(y) = u*ell*p_j(y) + v*q_j(y)``,
    checked to be nonnegative integers with the right sums and marginals."""
    s = params.u * params.ell
    W = {}
    for key, w in blp.w.items():
        val = s * w + params.v * aff.r[key]
        if val.denominator != 1 or val < 0:
            raise RoundingError(f"W{key} = {val} is not a nonnegative integer")
        W[key] = int(val)
    P = {}
    for key, p in blp.p.items():
        val = s * p + params.v * aff.q[key]
        if val.denominator != 1 or val < 0:
            raise RoundingError(f"P{key} = {val} is not a nonnegative integer")
        P[key] = int(val)
    counts = RoundedCounts(params.L, W, P)
    _check_counts(counts, instance)
    return counts


def _check_counts(counts: RoundedCounts, instance: Instance):
    L = counts.L
    by_var: Dict[str, Dict[str, int]] = {}
    for (x, a), c in counts.W.items():
        by_var.setdefault(x, {})[a] = c
    for x in instance.variables:
        if sum(by_var.get(x, {}).values()) != L:
            raise RoundingError(f"counts of {x} do not sum to {L}")
    by_con: Dict[int, Dict[tuple, int]] = {}
    for (j, y), c in counts.P.items():
        by_con.setdefault(j, {})[y] = c
    for j, (_, scope) in enumerate(instance.constraints):
        tuples = by_con.get(j, {})
        if sum(tuples.values()) != L:
            raise RoundingError(f"counts of constraint {j} do not sum to {L}")
        for k, x in enumerate(scope):
            for a, c in by_var[x].items():
                if sum(n for y, n in tuples.items() if y[k] == a) != c:
                    raise RoundingError(f"marginal of constraint {j} at position {k} disagrees with {x}={a}")


_verified: Dict[tuple, bool] = {}


def _verify(f: Function, template: PromiseTemplate, limit: int):
    size = polymorphism_checks(f, template)
    if size > limit:
        log.info("skipping polymorphism check of %r (%d evaluations); the final assignment is still verified",
                 f, size)
        return
    name = getattr(f, "name", "")
    key = (name, f.arity, getattr(f, "blocks", None), template) if name else None
    ok = _verified.get(key) if key else None
    if ok is None:
        ok = is_polymorphism(f, template, max_checks=limit)
        if key:
            _verified[key] = ok
    if not ok:
        raise NotAPolymorphism(f"{f!r} is not a polymorphism of {template.name or 'the template'}")


def _histogram(domain: Sequence[str], counts: Dict[str, Dict[str, int]], x: str) -> Tuple[int, ...]:
    return tuple(counts[x].get(a, 0) for a in domain)


def round_assignment(template: PromiseTemplate, instance: Instance, blp: BlpPoint, aff: AffinePoint,
                     f: Union[SymmetricFunction, BlockSymmetricFunction],
                     verify_limit: int = DEFAULT_VERIFY_LIMIT) -> Assignment:
    """Evaluate ``f`` on each variable's repetition counts and check the result in B.

    For a block-symmetric ``f`` every block gets its own counts from its own
    size.  A failing final check means the witnesses or ``f`` were wrong.
    """
    A, B = template.A, template.B
    if tuple(f.domain) != A.domain:
        raise RoundingError("f is not defined on A's domain")
    _verify(f, template, verify_limit)
    ell, M = witness_scale(blp, aff)
    if isinstance(f, SymmetricFunction):
        counts = compute_counts(_params_for(ell, M, f.arity), blp, aff, instance)
        per_var = _group(counts.W)
        asg = {x: f.evaluate_counts(_histogram(A.domain, per_var, x)) for x in instance.variables}
    elif isinstance(f, BlockSymmetricFunction):
        block_counts = [_group(compute_counts(_params_for(ell, M, size), blp, aff, instance).W)
                        for size in f.block_sizes]
        asg = {x: f.evaluate_counts(tuple(_histogram(A.domain, c, x) for c in block_counts))
               for x in instance.variables}
    else:
        raise RoundingError("f must be symmetric or block-symmetric")
    if not check_satisfies(instance, B, asg):
        raise RoundingError("rounded assignment does not satisfy the instance in B")
    return asg


def _group(W: Dict[WKey, int]) -> Dict[str, Dict[str, int]]:
    out: Dict[str, Dict[str, int]] = {}
    for (x, a), c in W.items():
        out.setdefault(x, {})[a] = c
    return out


def as_symmetric(f: Function) -> Union[SymmetricFunction, BlockSymmetricFunction]:
    """A full table that is invariant under all permutations, as a histogram function."""
    if isinstance(f, (SymmetricFunction, BlockSymmetricFunction)):
        return f
    if not isinstance(f, FunctionTable):
        raise RoundingError("rounding needs a symmetric or block-symmetric function")
    hist: Dict[tuple, str] = {}
    for args, b in f.table.items():
        h = tuple(sum(1 for a in args if a == x) for x in f.domain)
        if hist.setdefault(h, b) != b:
            raise RoundingError("the table is not symmetric; rounding needs a symmetric or block-symmetric function")
    return SymmetricFunction(f.arity, f.domain, f.codomain, table=hist)


ODD_ONLY = ("majority", "parity")


def family_for_witness(name: str, blp: BlpPoint, aff: AffinePoint, domain: Optional[Sequence[str]] = None,
                       cap: int = DEFAULT_ARITY_CAP) -> Union[SymmetricFunction, BlockSymmetricFunction]:
    """The smallest member of a built-in family that is wide enough for these witnesses.

    Alternating threshold of arity ``2k+1`` has blocks of sizes ``k+1`` and
    ``k``, so ``k`` itself must reach ``M * ell**2``.
    """
    ell, M = witness_scale(blp, aff)
    need = M * ell * ell
    if name == "AT":
        arity = 2 * need + 1
    elif name in ODD_ONLY:
        arity = need if need % 2 else need + 1
    else:
        arity = need
    if arity > cap:
        raise ArityUnavailable(f"{name} would need arity {arity} (cap {cap})")
    return family(name, arity, domain)
