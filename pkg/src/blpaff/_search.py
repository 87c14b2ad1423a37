"""Backtracking with forward checking over finite-domain constraints.

Variables are assigned in the given order and values are tried in the given
order, so solutions come out lexicographically sorted.  Forward checking only
removes values that could never extend to a solution, which keeps that order.
"""

from collections import defaultdict
from typing import Dict, Hashable, Iterable, Iterator, Mapping, Sequence, Tuple


def solve_csp(variables: Sequence[Hashable],
              domains: Mapping[Hashable, Sequence],
              constraints: Iterable[Tuple[Sequence[Hashable], Iterable[tuple]]]) -> Iterator[Dict]:
    order = list(variables)
    cons = []
    watch = defaultdict(list)
    cur = {v: list(domains[v]) for v in order}
    for scope, allowed in constraints:
        scope = tuple(scope)
        if not isinstance(allowed, (set, frozenset)):
            allowed = frozenset(allowed)
        distinct = set(scope)
        if len(distinct) == 1:
            (v,) = distinct
            cur[v] = [a for a in cur[v] if (a,) * len(scope) in allowed]
            continue
        cid = len(cons)
        cons.append((scope, allowed))
        for v in distinct:
            watch[v].append(cid)

    n = len(order)
    if n == 0:
        yield {}
        return
    if any(not cur[v] for v in order):
        return

    asg = {}

    def propagate(v, a):
        changes = []
        for cid in watch[v]:
            scope, allowed = cons[cid]
            unassigned = {u for u in scope if u not in asg}
            nfree = len(unassigned)
            if nfree == 0:
                if tuple(asg[u] for u in scope) not in allowed:
                    return False, changes
            elif nfree == 1:
                (free,) = unassigned
                old = cur[free]
                new = [b for b in old
                       if tuple(b if u == free else asg[u] for u in scope) in allowed]
                if len(new) != len(old):
                    changes.append((free, old))
                    cur[free] = new
                    if not new:
                        return False, changes
        return True, changes

    def undo(changes):
        for u, old in reversed(changes):
            cur[u] = old

    iters = [None] * n
    trail = [None] * n
    k = 0
    iters[0] = iter(list(cur[order[0]]))
    while k >= 0:
        v = order[k]
        if trail[k] is not None:
            undo(trail[k])
            trail[k] = None
            del asg[v]
        for a in iters[k]:
            asg[v] = a
            ok, changes = propagate(v, a)
            if ok:
                trail[k] = changes
                break
            undo(changes)
            del asg[v]
        else:
            k -= 1
            continue
        if k == n - 1:
            yield dict(asg)
            continue
        k += 1
        iters[k] = iter(list(cur[order[k]]))
        trail[k] = None
