"""Exact linear programming over the rationals and integer linear systems.

The simplex tableau is kept fraction-free: every entry is an integer and the
true tableau is ``T / D`` where ``D`` is the (positive) determinant of the
current basis.  After a pivot on ``T[r][c] = p`` every other entry becomes
``(p*T[i][j] - T[i][c]*T[r][j]) / D`` and that division is always exact, so
no gcd work is needed anywhere.  Bland's rule prevents cycling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

Number = Union[int, Fraction]
Row = Tuple[Mapping[Hashable, Number], Number]


class LinAlgError(ValueError):
    pass


class InfeasibleError(LinAlgError):
    pass


class UnboundedError(LinAlgError):
    pass


@dataclass(frozen=True)
class LinearSystem:
    """Equality rows over named variables.

    Variables are nonnegative unless listed in ``free``; variables listed in
    ``fixed_zero`` are pinned to 0 and never enter a basis.
    """

    variables: Tuple[Hashable, ...]
    rows: Tuple[Row, ...]
    free: FrozenSet[Hashable] = frozenset()
    fixed_zero: FrozenSet[Hashable] = frozenset()

    def __post_init__(self):
        known = set(self.variables)
        if len(known) != len(self.variables):
            raise LinAlgError("duplicate variable names")
        for coeffs, _ in self.rows:
            for v in coeffs:
                if v not in known:
                    raise LinAlgError(f"row references undeclared variable {v!r}")
        for v in self.free | self.fixed_zero:
            if v not in known:
                raise LinAlgError(f"flag references undeclared variable {v!r}")

    def residuals(self, point: Mapping[Hashable, Number]) -> List[Fraction]:
        out = []
        for coeffs, rhs in self.rows:
            out.append(sum((Fraction(c) * point.get(v, 0) for v, c in coeffs.items()), Fraction(0)) - rhs)
        return out

    def satisfied_by(self, point: Mapping[Hashable, Number]) -> bool:
        if any(r != 0 for r in self.residuals(point)):
            return False
        for v in self.variables:
            x = point.get(v, 0)
            if v in self.fixed_zero and x != 0:
                return False
            if v not in self.free and x < 0:
                return False
        return True


@dataclass(frozen=True)
class LpResult:
    feasible: bool
    point: Optional[Dict[Hashable, Fraction]] = None

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"


def _integer_row(coeffs, rhs):
    if type(rhs) is int and all(type(c) is int for c in coeffs.values()):
        return coeffs, rhs
    scale = 1
    for c in list(coeffs.values()) + [rhs]:
        if isinstance(c, Fraction):
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
    return {v: int(c * scale) for v, c in coeffs.items()}, int(rhs * scale)


class Tableau:
    """Simplex tableau for ``sys``; call :meth:`phase1` before :meth:`maximize`."""

    def __init__(self, sys: LinearSystem):
        self.sys = sys
        self.cols: List[Tuple[Hashable, int]] = []
        colmap: Dict[Tuple[Hashable, int], int] = {}
        for v in sys.variables:
            if v in sys.fixed_zero:
                continue
            colmap[(v, 1)] = len(self.cols)
            self.cols.append((v, 1))
            if v in sys.free:
                colmap[(v, -1)] = len(self.cols)
                self.cols.append((v, -1))
        self.colmap = colmap
        n = len(self.cols)
        self.T: List[List[int]] = []
        plus = {v: colmap[(v, 1)] for v in sys.variables if (v, 1) in colmap}
        minus = {v: colmap[(v, -1)] for v in sys.free if (v, -1) in colmap}
        for coeffs, rhs in sys.rows:
            icoeffs, irhs = _integer_row(coeffs, rhs)
            row = [0] * (n + 1)
            for v, c in icoeffs.items():
                j = plus.get(v)
                if j is None:
                    continue
                row[j] += c
                j = minus.get(v)
                if j is not None:
                    row[j] -= c
            row[n] = irhs
            if irhs < 0:
                row = [-x for x in row]
            self.T.append(row)
        self.D = 1
        # artificial variables are numbered after the structural columns; a
        # column with a single nonzero entry, equal to 1, starts basic instead
        self.basis = [n + i for i in range(len(self.T))]
        rows_of: Dict[int, List[int]] = {}
        for i, row in enumerate(self.T):
            for j in range(n):
                if row[j]:
                    rows_of.setdefault(j, []).append(i)
        for j in range(n):
            rs = rows_of.get(j, ())
            if len(rs) == 1 and self.T[rs[0]][j] == 1 and self.basis[rs[0]] >= n:
                self.basis[rs[0]] = j
        self.obj: List[int] = [0] * (n + 1)
        self.feasible: Optional[bool] = None

    @property
    def ncols(self) -> int:
        return len(self.cols)

    def copy(self) -> "Tableau":
        other = Tableau.__new__(Tableau)
        other.sys = self.sys
        other.cols = self.cols
        other.colmap = self.colmap
        other.T = [row[:] for row in self.T]
        other.D = self.D
        other.basis = self.basis[:]
        other.obj = self.obj[:]
        other.feasible = self.feasible
        return other

    def _pivot(self, r: int, c: int):
        T, D = self.T, self.D
        prow = T[r]
        p = prow[c]
        if p == D:
            # nothing gets rescaled, so only the pivot row's nonzeros matter
            nz = [(j, y) for j, y in enumerate(prow) if y]
            for i in range(len(T)):
                if i == r:
                    continue
                row = T[i]
                f = row[c]
                if f:
                    for j, y in nz:
                        row[j] -= f * y // D
            f = self.obj[c]
            if f:
                obj = self.obj
                for j, y in nz:
                    obj[j] -= f * y // D
            self.basis[r] = c
            return
        for i in range(len(T)):
            if i == r:
                continue
            row = T[i]
            f = row[c]
            if f:
                T[i] = [(p * x - f * y) // D for x, y in zip(row, prow)]
            elif p != D:
                T[i] = [(p * x) // D for x in row]
        f = self.obj[c]
        if f:
            self.obj = [(p * x - f * y) // D for x, y in zip(self.obj, prow)]
        elif p != D:
            self.obj = [(p * x) // D for x in self.obj]
        self.basis[r] = c
        self.D = p
        if p < 0:
            self.T = [[-x for x in row] for row in self.T]
            self.obj = [-x for x in self.obj]
            self.D = -p

    def _price(self, cost: Mapping[int, int]):
        """Set the reduced-cost row for maximizing ``sum(cost[j] * x_j)``."""
        n = self.ncols
        obj = [-cost.get(j, 0) * self.D for j in range(n)] + [0]
        for i, b in enumerate(self.basis):
            cb = cost.get(b, 0)
            if cb:
                row = self.T[i]
                obj = [o + cb * x for o, x in zip(obj, row)]
        self.obj = obj

    def _run(self) -> bool:
        """Bland's rule iterations; False when the objective is unbounded."""
        n = self.ncols
        T = self.T
        while True:
            obj = self.obj
            enter = -1
            for j in range(n):
                if obj[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return True
            best = -1
            for i in range(len(T)):
                a = T[i][enter]
                if a > 0:
                    if best < 0:
                        best = i
                        continue
                    # compare T[i][n]/a with T[best][n]/T[best][enter]
                    lhs = T[i][n] * T[best][enter]
                    rhs = T[best][n] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best < 0:
                return False
            self._pivot(best, enter)
            T = self.T

    def phase1(self) -> bool:
        n = self.ncols
        nart = len(self.T)
        cost = {n + i: -1 for i in range(nart)}
        self._price(cost)
        self._run()
        if self.obj[n] < 0:
            self.feasible = False
            return False
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(self.T):
            if self.basis[i] >= n:
                row = self.T[i]
                j = next((j for j in range(n) if row[j] != 0), None)
                if j is None:
                    del self.T[i]
                    del self.basis[i]
                    continue
                self._pivot(i, j)
            i += 1
        self.feasible = True
        return True

    def maximize(self, cost: Mapping[int, int]) -> Optional[Fraction]:
        """Maximize an integer objective over structural columns; None if unbounded."""
        if not self.feasible:
            raise InfeasibleError("tableau is not feasible")
        self._price(cost)
        if not self._run():
            return None
        return Fraction(self.obj[self.ncols], self.D)

    def column_values(self) -> List[Fraction]:
        n = self.ncols
        vals = [Fraction(0)] * n
        for i, b in enumerate(self.basis):
            vals[b] = Fraction(self.T[i][n], self.D)
        return vals

    def scaled_point(self) -> Tuple[Dict[Hashable, int], int]:
        """``(numerators, D)`` with the current basic solution equal to numerators / D."""
        n = self.ncols
        out = {v: 0 for v in self.sys.variables}
        for i, b in enumerate(self.basis):
            v, sign = self.cols[b]
            out[v] += sign * self.T[i][n]
        return out, self.D

    def point(self) -> Dict[Hashable, Fraction]:
        vals = self.column_values()
        out = {v: Fraction(0) for v in self.sys.variables}
        for (v, sign), x in zip(self.cols, vals):
            out[v] += sign * x
        return out

    def objective_columns(self, objective: Mapping[Hashable, Number]) -> Tuple[Dict[int, int], int]:
        """Integer column costs for a variable-keyed objective, plus its scale."""
        icoeffs, _ = _integer_row(dict(objective), 0)
        scale = 1
        for c in objective.values():
            if isinstance(c, Fraction):
                scale = scale * c.denominator // math.gcd(scale, c.denominator)
        cost: Dict[int, int] = {}
        for v, c in icoeffs.items():
            if v in self.sys.fixed_zero:
                continue
            if (v, 1) not in self.colmap:
                raise LinAlgError(f"objective references undeclared variable {v!r}")
            cost[self.colmap[(v, 1)]] = cost.get(self.colmap[(v, 1)], 0) + c
            if (v, -1) in self.colmap:
                cost[self.colmap[(v, -1)]] = cost.get(self.colmap[(v, -1)], 0) - c
        return cost, scale


def lp_feasible(sys: LinearSystem) -> LpResult:
    tab = Tableau(sys)
    if not tab.phase1():
        return LpResult(False)
    return LpResult(True, tab.point())


def lp_maximize(sys: LinearSystem, objective) -> Tuple[Fraction, Dict[Hashable, Fraction]]:
    """Maximize a single variable or a ``{variable: coefficient}`` objective."""
    if not isinstance(objective, Mapping):
        objective = {objective: 1}
    tab = Tableau(sys)
    if not tab.phase1():
        raise InfeasibleError("system is infeasible")
    cost, scale = tab.objective_columns(objective)
    value = tab.maximize(cost)
    if value is None:
        raise UnboundedError("objective is unbounded")
    return value / scale, tab.point()


# ---------------------------------------------------------------------------
# integer systems

def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(A: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[List[int]], List[Tuple[int, int]]]:
    """Column-style Hermite normal form ``H = A U`` with ``U`` unimodular.

    Returns ``(H, U, pivots)`` where ``pivots`` lists ``(row, column)`` of the
    positive leading entries.  Entries left of a pivot are reduced into
    ``[0, pivot)``, which also keeps intermediate values small.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [[int(x) for x in row] for row in A]
    if any(len(row) != n for row in H):
        raise LinAlgError("ragged matrix")
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(start, p, k, s, t, u, v):
        # (col_p, col_k) <- (s col_p + t col_k, u col_p + v col_k); rows of H
        # above ``start`` are already zero from column p onwards
        for M, lo in ((H, start), (U, 0)):
            for row in M[lo:] if lo else M:
                x, y = row[p], row[k]
                if x or y:
                    row[p] = s * x + t * y
                    row[k] = u * x + v * y

    pivots = []
    pc = 0
    for i in range(m):
        if pc == n:
            break
        for k in range(pc + 1, n):
            b = H[i][k]
            if b == 0:
                continue
            a = H[i][pc]
            g, s, t = _xgcd(a, b)
            colop(i, pc, k, s, t, -(b // g), a // g)
        piv = H[i][pc]
        if piv == 0:
            continue
        if piv < 0:
            for M, lo in ((H, i), (U, 0)):
                for row in M[lo:]:
                    row[pc] = -row[pc]
            piv = -piv
        for _, c in pivots:
            q = H[i][c] // piv
            if q:
                for M, lo in ((H, i), (U, 0)):
                    for row in M[lo:]:
                        if row[pc]:
                            row[c] -= q * row[pc]
        pivots.append((i, pc))
        pc += 1
    return H, U, pivots


def integer_solve(A: Sequence[Sequence[int]], b: Sequence[int], ncols: Optional[int] = None) -> Optional[List[int]]:
    """Some integer ``x`` with ``A x = b``, or None when there is none."""
    m = len(A)
    if len(b) != m:
        raise LinAlgError(f"dimension mismatch: {m} rows but {len(b)} right-hand sides")
    n = len(A[0]) if m else (ncols or 0)
    if m == 0:
        return [0] * n
    H, U, pivots = hermite_normal_form(A)
    pivot_of_row = dict(pivots)
    y = [0] * n
    for i in range(m):
        s = int(b[i]) - sum(H[i][j] * y[j] for j in range(n) if H[i][j] and y[j])
        if i in pivot_of_row:
            c = pivot_of_row[i]
            q, rem = divmod(s, H[i][c])
            if rem:
                return None
            y[c] = q
        elif s != 0:
            return None
    x = [sum(U[r][j] * y[j] for j in range(n) if y[j]) for r in range(n)]
    return x
