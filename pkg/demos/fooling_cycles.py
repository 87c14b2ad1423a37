"""
An instance that fools the algorithm
=====================================

"""

from blpaff import get_template
from blpaff.search import classify, search_fooling_instance, wide_block_symmetry_report

# A 2-cycle and a 3-cycle side by side.  Every solution has to pick one of
# the two components, and a fractional point does not have to.
cycles = get_template("cycles23")

for repeats in (True, False):
    res = search_fooling_instance(cycles, 5, 6, repeated_variables=repeats)
    print(res.summary())
    print("  ", res.instance.constraints)
    print("  ", classify(cycles, res.instance).as_dict())

# The reason: no block-symmetric polymorphism with wide blocks.  Only the
# six unary ones (the automorphisms) exist.
for line in wide_block_symmetry_report(cycles, max_arity=5).lines():
    print(line)
