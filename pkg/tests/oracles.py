"""Deliberately naive reference implementations used only by the tests.

Nothing here shares code with the package beyond its data types.
"""

from fractions import Fraction
from itertools import combinations, permutations, product


def naive_satisfiable(instance, structure):
    """Lexicographically first satisfying assignment by plain enumeration."""
    rels = {s: set(structure.relation(s)) for s in structure.signature.names}
    for values in product(structure.domain, repeat=len(instance.variables)):
        asg = dict(zip(instance.variables, values))
        if all(tuple(asg[x] for x in scope) in rels[sym] for sym, scope in instance.constraints):
            return asg
    return None


def naive_is_polymorphism(f, template):
    """Check every choice of ``f.arity`` rows of every relation of A."""
    for sym in template.signature.names:
        rows = template.A.relation(sym)
        target = set(template.B.relation(sym))
        k = template.signature.arity(sym)
        for choice in product(rows, repeat=f.arity):
            image = tuple(f.evaluate(tuple(choice[i][pos] for i in range(f.arity))) for pos in range(k))
            if image not in target:
                return False
    return True


def solve_rational(A, b):
    """Gauss-Jordan over the rationals; a solution or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in M):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = M[i][-1]
    return x


def lp_vertices(A, b):
    """All basic feasible solutions of ``A x = b, x >= 0`` by trying every column subset."""
    m = len(A)
    n = len(A[0])
    out = set()
    for size in range(0, min(m, n) + 1):
        for cols in combinations(range(n), size):
            sub = [[row[c] for c in cols] for row in A]
            sol = solve_rational(sub, b) if cols else (None if any(b) else [])
            if sol is None:
                continue
            x = [Fraction(0)] * n
            for c, v in zip(cols, sol):
                x[c] = v
            if all(v >= 0 for v in x) and all(sum(a * v for a, v in zip(row, x)) == bi for row, bi in zip(A, b)):
                out.add(tuple(x))
    return out


def canonical_under_renaming(instance):
    """Smallest sorted constraint list over all renamings to x0, x1, ..."""
    best = None
    for perm in permutations(range(len(instance.variables))):
        name = {v: f"x{perm[k]}" for k, v in enumerate(instance.variables)}
        key = tuple(sorted((sym, tuple(name[v] for v in scope)) for sym, scope in instance.constraints))
        if best is None or key < best:
            best = key
    return best
