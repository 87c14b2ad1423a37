"""Exact BLP+affine relaxation algorithm for promise CSPs, with polymorphism
tools, minion objects, rounding and search utilities."""

from .affine import AffinePoint, AffineSystem, affine_feasible, affine_point_valid, affine_residuals, build_affine, refine
from .blp import (BlpPoint, BlpSystem, blp_point_valid, blp_residuals, build_blp, integral_point,
                  relative_interior_point)
from .corpus import CORPUS, get_template
from .decide import ACCEPT, REJECT, STAGE_AFFINE, STAGE_LP, Decision, decide
from .linalg import LinearSystem, hermite_normal_form, integer_solve, lp_feasible, lp_maximize
from .minions import (MBlpAffObject, QconvObject, SymmetricHomomorphism, TruncatedMinion, ZaffObject,
                      build_free_structure, hom_from_symmetric_polymorphism, two_block_witness)
from .polymorphisms import (BlockSymmetricFunction, FunctionTable, MinorMap, SymmetricFunction,
                            enumerate_block_symmetric_polymorphisms, enumerate_symmetric_polymorphisms, family,
                            is_polymorphism, take_minor)
from .rounding import round_assignment, rounding_params
from .search import classify, search_fooling_instance, wide_block_symmetry_report
from .structures import (Instance, PromiseTemplate, RelationalStructure, Signature, SizeGuardError, StructureError,
                         brute_force_satisfiable, check_satisfies)

__version__ = "0.1.0"
