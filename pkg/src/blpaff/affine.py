"""The affine (integer, possibly negative) relaxation and its refinement by the
support of an LP point."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, List, Optional

from .blp import BlpPoint, PKey, Relaxation, WKey, build_relaxation, p_coord, w_coord
from .linalg import integer_solve
from .structures import Instance, RelationalStructure


class RefinementError(ValueError):
    pass


@dataclass(frozen=True)
class AffineSystem:
    relaxation: Relaxation
    zero_fixed: FrozenSet[tuple] = frozenset()

    @property
    def coordinates(self):
        return self.relaxation.coordinates

    @property
    def free_coordinates(self):
        return tuple(c for c in self.coordinates if c not in self.zero_fixed)


@dataclass(frozen=True)
class AffinePoint:
    r: Dict[WKey, int]
    q: Dict[PKey, int]

    def coordinates(self) -> Dict[tuple, int]:
        out = {w_coord(*k): v for k, v in self.r.items()}
        out.update({p_coord(*k): v for k, v in self.q.items()})
        return out

    @property
    def max_abs(self) -> int:
        vals = list(self.r.values()) + list(self.q.values())
        return max((abs(v) for v in vals), default=0)


def build_affine(instance: Instance, A: RelationalStructure) -> AffineSystem:
    return AffineSystem(build_relaxation(instance, A))


def refine(sys: AffineSystem, support: BlpPoint) -> AffineSystem:
    """Pin every coordinate that is exactly zero in ``support``."""
    values = support.coordinates()
    coords = set(sys.coordinates)
    if set(values) != coords:
        raise RefinementError("LP point is not indexed like the affine system")
    zero = frozenset(c for c, v in values.items() if v == 0)
    return replace(sys, zero_fixed=sys.zero_fixed | zero)


def affine_residuals(sys: AffineSystem, point: AffinePoint) -> List[int]:
    vals = point.coordinates()
    return [sum(c * vals[v] for v, c in coeffs.items()) - rhs for coeffs, rhs in sys.relaxation.rows]


def affine_point_valid(sys: AffineSystem, point: AffinePoint) -> bool:
    vals = point.coordinates()
    if set(vals) != set(sys.coordinates):
        return False
    if any(vals[c] != 0 for c in sys.zero_fixed):
        return False
    return all(r == 0 for r in affine_residuals(sys, point))


def affine_feasible(sys: AffineSystem) -> Optional[AffinePoint]:
    """An integer solution with the pinned coordinates removed, or None."""
    cols = sys.free_coordinates
    col_index = {c: k for k, c in enumerate(cols)}
    A, b = [], []
    for coeffs, rhs in sys.relaxation.solver_rows:
        row = [0] * len(cols)
        for v, c in coeffs.items():
            k = col_index.get(v)
            if k is not None:
                row[k] += c
        A.append(row)
        b.append(rhs)
    x = integer_solve(A, b, ncols=len(cols))
    if x is None:
        return None
    vals = {c: 0 for c in sys.coordinates}
    vals.update(zip(cols, x))
    r = {(c[1], c[2]): v for c, v in vals.items() if c[0] == "w"}
    q = {(c[1], c[2]): v for c, v in vals.items() if c[0] == "p"}
    return AffinePoint(r, q)
