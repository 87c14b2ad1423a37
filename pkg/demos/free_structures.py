"""
Free structures of truncated minions
=====================================

"""

from blpaff import get_template
from blpaff.minions import TruncatedMinion, build_free_structure
from blpaff.structures import find_homomorphism

# The domain is every |A|-ary object of the truncation; the relations say
# which tuples of objects come from one larger object by projection.
for name, minion in [("horn", TruncatedMinion("qconv", ell=2)),
                     ("3lin", TruncatedMinion("mblpaff", ell=2, M=1)),
                     ("3lin", TruncatedMinion("zaff", M=3))]:
    t = get_template(name)
    F, labels = build_free_structure(minion, t.A)
    h = find_homomorphism(F, t.B)
    print(f"{minion.kind} over {name}: {len(F.domain)} objects")
    for a in F.domain:
        print(f"  {a} -> {h[a] if h else '?'}")
