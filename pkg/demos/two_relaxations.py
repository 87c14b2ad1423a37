"""
Neither relaxation is enough on its own
========================================

"""

from blpaff import decide, get_template
from blpaff.affine import affine_feasible, build_affine
from blpaff.blp import build_blp, relative_interior_point
from blpaff.structures import Instance, brute_force_satisfiable

# x+y = 1, y+z = 1, z+x = 1 over Z_2.  Averaging the two values gives a
# perfectly good fractional point; the integers see the parity clash.
lin = get_template("3lin")
odd = Instance(("x", "y", "z"), (("e1", ("x", "y")), ("e1", ("y", "z")), ("e1", ("z", "x"))))
pt = relative_interior_point(build_blp(odd, lin.A))
print("LP point:", sorted(set(pt.w.values())), "| integer solution:", affine_feasible(build_affine(odd, lin.A)))
print("decision:", decide(lin, odd), "| satisfiable:", brute_force_satisfiable(odd, lin.A) is not None)

# x, (not x or not y), y in Horn-SAT.  Integers may go negative, so the
# affine system happily puts weight -1 on the tuple (0, 0); the LP cannot.
horn = get_template("horn")
inst = Instance(("x", "y"), (("t", ("x",)), ("nn", ("x", "y")), ("t", ("y",))))
aff = affine_feasible(build_affine(inst, horn.A))
print("affine q for (not x or not y):", {y: v for (j, y), v in aff.q.items() if j == 1})
print("decision:", decide(horn, inst))
