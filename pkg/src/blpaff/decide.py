"""The BLP+Affine decision procedure."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .affine import AffinePoint, AffineSystem, affine_feasible, refine
from .blp import BlpPoint, build_blp, relative_interior_with_vertex
from .structures import Instance, PromiseTemplate, RelationalStructure

ACCEPT = "accept"
REJECT = "reject"
STAGE_LP = "lp"
STAGE_AFFINE = "affine"


@dataclass(frozen=True)
class Decision:
    verdict: str
    reject_stage: Optional[str] = None
    blp: Optional[BlpPoint] = None
    affine: Optional[AffinePoint] = None

    def __post_init__(self):
        if self.verdict == ACCEPT:
            if self.blp is None or self.affine is None:
                raise ValueError("an accepting decision carries both witnesses")
        elif self.verdict == REJECT:
            if self.reject_stage not in (STAGE_LP, STAGE_AFFINE):
                raise ValueError("a rejecting decision names its stage")
        else:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPT

    def __str__(self):
        return "ACCEPT" if self.accepted else f"REJECT({self.reject_stage})"


def decide(template: Union[PromiseTemplate, RelationalStructure], instance: Instance,
           method: str = "grouped") -> Decision:
    """Run the algorithm; only the strict structure A is consulted.

    1. find a maximal-support point of the Basic LP over A, else reject;
    2. pin affine coordinates that are zero at that point;
    3. reject if the pinned integer system has no solution, else accept.
    """
    A = template.A if isinstance(template, PromiseTemplate) else template
    instance.validate(A.signature)
    blp_sys = build_blp(instance, A)
    point, vertex = relative_interior_with_vertex(blp_sys, method=method)
    if point is None:
        return Decision(REJECT, STAGE_LP)
    if vertex is not None:
        # an integral vertex lies inside the support, so it already solves
        # the pinned integer system
        aff = AffinePoint({k[1:]: v for k, v in vertex.items() if k[0] == "w"},
                          {k[1:]: v for k, v in vertex.items() if k[0] == "p"})
    else:
        aff = affine_feasible(refine(AffineSystem(blp_sys.relaxation), point))
    if aff is None:
        return Decision(REJECT, STAGE_AFFINE, blp=point)
    return Decision(ACCEPT, blp=point, affine=aff)
