"""The Basic LP relaxation of an instance over a structure, and a point of
maximal support in its solution polytope."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Dict, Hashable, List, Mapping, Optional, Tuple

from .linalg import LinearSystem, Tableau
from .structures import Instance, RelationalStructure

WKey = Tuple[str, str]              # (variable, value)
PKey = Tuple[int, Tuple[str, ...]]  # (constraint index, tuple of R^A)


def w_coord(var: str, value: str) -> tuple:
    return ("w", var, value)


def p_coord(j: int, y: Tuple[str, ...]) -> tuple:
    return ("p", j, y)


@dataclass(frozen=True)
class Relaxation:
    """Index structure and equality rows shared by the LP and affine systems.

    Rows come in three groups: one per variable (value weights sum to 1), one
    per constraint (tuple weights sum to 1), and one per (constraint,
    occurrence position, value) tying the tuple marginal to the variable's
    weight.  A variable repeated inside a scope gets one marginal row per
    position.
    """

    instance: Instance
    structure: RelationalStructure
    w_keys: Tuple[WKey, ...]
    p_keys: Tuple[PKey, ...]
    variable_rows: Tuple[Tuple[Dict, int], ...]
    constraint_rows: Tuple[Tuple[Dict, int], ...]
    marginal_rows: Tuple[Tuple[Dict, int], ...]

    @property
    def coordinates(self) -> Tuple[tuple, ...]:
        return tuple(w_coord(*k) for k in self.w_keys) + tuple(p_coord(*k) for k in self.p_keys)

    @property
    def rows(self) -> Tuple[Tuple[Dict, int], ...]:
        return self.variable_rows + self.constraint_rows + self.marginal_rows

    @property
    def solver_rows(self) -> Tuple[Tuple[Dict, int], ...]:
        """:attr:`rows` minus the marginal row of the last domain value at each
        occurrence.  That row is an integer combination of the others (the
        marginals over all values sum to constraint row minus variable row),
        so rational and integer solutions are unchanged."""
        d = len(self.structure.domain)
        kept = tuple(r for i, r in enumerate(self.marginal_rows) if i % d != d - 1)
        return self.variable_rows + self.constraint_rows + kept


def build_relaxation(instance: Instance, A: RelationalStructure) -> Relaxation:
    instance.validate(A.signature)
    w_keys = tuple((x, a) for x in instance.variables for a in A.domain)
    p_keys = tuple((j, y) for j, (sym, _) in enumerate(instance.constraints) for y in A.relation(sym))
    var_rows = tuple(({w_coord(x, a): 1 for a in A.domain}, 1) for x in instance.variables)
    con_rows = []
    marg_rows = []
    for j, (sym, scope) in enumerate(instance.constraints):
        rel = A.relation(sym)
        con_rows.append(({p_coord(j, y): 1 for y in rel}, 1))
        for k, x in enumerate(scope):
            for a in A.domain:
                row = {p_coord(j, y): 1 for y in rel if y[k] == a}
                row[w_coord(x, a)] = -1
                marg_rows.append((row, 0))
    return Relaxation(instance, A, w_keys, p_keys, var_rows, tuple(con_rows), tuple(marg_rows))


@dataclass(frozen=True)
class BlpSystem:
    relaxation: Relaxation
    system: LinearSystem

    @property
    def instance(self) -> Instance:
        return self.relaxation.instance

    @property
    def structure(self) -> RelationalStructure:
        return self.relaxation.structure

    @property
    def coordinates(self):
        return self.system.variables


def build_blp(instance: Instance, A: RelationalStructure) -> BlpSystem:
    rel = build_relaxation(instance, A)
    return BlpSystem(rel, LinearSystem(rel.coordinates, rel.solver_rows))


@dataclass(frozen=True)
class BlpPoint:
    w: Dict[WKey, Fraction]
    p: Dict[PKey, Fraction]

    @classmethod
    def from_coordinates(cls, values: Mapping[Hashable, Fraction]) -> "BlpPoint":
        w, p = {}, {}
        for key, val in values.items():
            if type(val) is not Fraction:
                val = Fraction(val)
            if key[0] == "w":
                w[(key[1], key[2])] = val
            else:
                p[(key[1], key[2])] = val
        return cls(w, p)

    def coordinates(self) -> Dict[tuple, Fraction]:
        out = {w_coord(*k): v for k, v in self.w.items()}
        out.update({p_coord(*k): v for k, v in self.p.items()})
        return out

    @property
    def support(self) -> frozenset:
        return frozenset(k for k, v in self.coordinates().items() if v > 0)

    @property
    def denominator(self) -> int:
        """Least common denominator of all coordinates."""
        dens = [v.denominator for v in self.w.values()] + [v.denominator for v in self.p.values()]
        return reduce(lcm, dens, 1)


def blp_residuals(sys: BlpSystem, point: BlpPoint) -> List[Fraction]:
    """Residual of every equation, including the ones the solver skips."""
    rel = sys.relaxation
    return LinearSystem(rel.coordinates, rel.rows).residuals(point.coordinates())


def blp_point_valid(sys: BlpSystem, point: BlpPoint) -> bool:
    coords = point.coordinates()
    if set(coords) != set(sys.coordinates):
        return False
    if any(v < 0 for v in coords.values()):
        return False
    return all(r == 0 for r in blp_residuals(sys, point))


def integral_point(sys: BlpSystem, asg: Mapping[str, str]) -> BlpPoint:
    """The 0/1 point of an assignment (feasible iff the assignment satisfies
    the instance)."""
    inst = sys.instance
    w = {(x, a): Fraction(int(asg[x] == a)) for x, a in sys.relaxation.w_keys}
    p = {}
    for j, y in sys.relaxation.p_keys:
        scope = inst.constraints[j][1]
        p[(j, y)] = Fraction(int(tuple(asg[x] for x in scope) == y))
    return BlpPoint(w, p)


def relative_interior_point(sys: BlpSystem, method: str = "grouped") -> Optional[BlpPoint]:
    """A feasible point whose support is maximal, or None if infeasible."""
    point, _ = relative_interior_with_vertex(sys, method)
    return point


def relative_interior_with_vertex(sys: BlpSystem, method: str = "grouped"
                                  ) -> Tuple[Optional[BlpPoint], Optional[Dict[Hashable, int]]]:
    """The maximal-support point, plus the first integral vertex met on the way (if any).

    Both methods average LP vertices with equal weights.  ``per_coordinate``
    maximizes every coordinate in turn.  ``grouped`` starts from the phase-1
    vertex and repeatedly maximizes the sum of the coordinates that are still
    zero in every vertex found so far; a zero optimum proves all of them are
    zero on the whole polytope.  Both give the same support.
    """
    tab = Tableau(sys.system)
    if not tab.phase1():
        return None, None
    coords = sys.system.variables
    col_of = {v: tab.colmap[(v, 1)] for v in coords}
    # each maximization starts from the previous optimal basis
    points: List[Tuple[Dict[Hashable, int], int]] = []
    if method == "per_coordinate":
        for v in coords:
            tab.maximize({col_of[v]: 1})
            points.append(tab.scaled_point())
    elif method == "grouped":
        first, D = tab.scaled_point()
        points.append((first, D))
        uncovered = [v for v in coords if first[v] == 0]
        while uncovered:
            if tab.maximize({col_of[v]: 1 for v in uncovered}) == 0:
                break
            pt, D = tab.scaled_point()
            points.append((pt, D))
            uncovered = [v for v in uncovered if pt[v] == 0]
    else:
        raise ValueError(f"unknown method {method!r}")
    den = lcm(*(D for _, D in points))
    factors = [den // D for _, D in points]
    total = den * len(points)
    avg = {v: Fraction(sum(f * pt[v] for (pt, _), f in zip(points, factors)), total) for v in coords}
    integral = next((pt for pt, D in points if D == 1), None)
    return BlpPoint.from_coordinates(avg), integral
