"""
Deciding an instance and rounding the witnesses
================================================

"""

from blpaff import decide, get_template
from blpaff.rounding import family_for_witness, round_assignment, witness_scale
from blpaff.structures import Instance, check_satisfies

# A small 2-SAT instance: (x or y), (z or not x), (not y or not z)
two_sat = get_template("2sat")
inst = Instance(("x", "y", "z"), (("pp", ("x", "y")), ("pn", ("z", "x")), ("nn", ("y", "z"))))
d = decide(two_sat, inst)
print(d)

# the LP point keeps every value that some solution uses
for (x, a), v in sorted(d.blp.w.items()):
    print(f"  w[{x}={a}] = {v}")

# rounding: repeat each value in proportion to its weight, feed the counts
# to a majority of large enough odd arity
ell, M = witness_scale(d.blp, d.affine)
maj = family_for_witness("majority", d.blp, d.affine)
asg = round_assignment(two_sat, inst, d.blp, d.affine, maj)
print(f"ell={ell} M={M} arity={maj.arity} ->", asg, check_satisfies(inst, two_sat.B, asg))

# The promise version of 1-in-3 versus not-all-equal has no symmetric
# polymorphism that helps, but alternating thresholds round just as well.
pcsp = get_template("1in3-nae")
inst = Instance(tuple("abcde"), (("r", ("a", "b", "c")), ("r", ("c", "d", "e")), ("r", ("a", "d", "b"))))
d = decide(pcsp, inst)
at = family_for_witness("AT", d.blp, d.affine)
asg = round_assignment(pcsp, inst, d.blp, d.affine, at)
print(d, f"AT arity {at.arity} ->", asg, check_satisfies(inst, pcsp.B, asg))
