from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from blpaff.affine import AffinePoint
from blpaff.blp import BlpPoint
from blpaff.corpus import get_template
from blpaff.decide import decide
from blpaff.polymorphisms import FunctionTable, family, majority
from blpaff.rounding import (ArityUnavailable, NotAPolymorphism, RoundingError, as_symmetric, compute_counts,
                             family_for_witness, round_assignment, rounding_params, witness_scale)
from blpaff.structures import Instance, check_satisfies
from strategies import instances

H = Fraction(1, 2)


def one_var_witness():
    blp = BlpPoint({("x", "0"): H, ("x", "1"): H}, {})
    aff = AffinePoint({("x", "0"): 2, ("x", "1"): -1}, {})
    return blp, aff


def test_scale_and_params():
    blp, aff = one_var_witness()
    assert witness_scale(blp, aff) == (2, 2)
    p = rounding_params(blp, aff)
    assert (p.L, p.u, p.v, p.required_arity) == (8, 4, 0, 8)
    p = rounding_params(blp, aff, available_arities=lambda k: k % 2 == 1)
    assert (p.L, p.u, p.v) == (9, 4, 1)
    assert rounding_params(blp, aff, available_arities=[3, 11, 20]).L == 11
    with pytest.raises(ArityUnavailable):
        rounding_params(blp, aff, available_arities=[3, 5])


def test_scale_floors_M_at_one():
    blp = BlpPoint({("x", "1"): Fraction(1)}, {})
    aff = AffinePoint({("x", "1"): 1}, {})
    assert witness_scale(blp, aff) == (1, 1)


def test_counts_by_hand():
    blp, aff = one_var_witness()
    inst = Instance(("x",), ())
    counts = compute_counts(rounding_params(blp, aff, available_arities=[9]), blp, aff, inst)
    # 4*2*(1/2) + 1*2 and 4*2*(1/2) - 1
    assert counts.W == {("x", "0"): 6, ("x", "1"): 3}


def test_counts_reject_bad_witnesses():
    blp = BlpPoint({("x", "0"): H, ("x", "1"): H}, {})
    aff = AffinePoint({("x", "0"): 5, ("x", "1"): -4}, {})
    inst = Instance(("x",), ())
    p = rounding_params(blp, aff)
    # M=5, ell=2 so L=20 and v=0: fine
    assert compute_counts(p, blp, aff, inst).W[("x", "0")] == 10
    from blpaff.rounding import _params_for
    # forcing a too-small arity is refused before counts are formed
    with pytest.raises(ArityUnavailable):
        _params_for(2, 5, 19)
    bad = AffinePoint({("x", "0"): 1, ("x", "1"): 1}, {})
    with pytest.raises(RoundingError):
        compute_counts(rounding_params(blp, bad, available_arities=[5]), blp, bad, inst)


CASES = [("2sat", "majority"), ("1in3-nae", "AT"), ("3lin", "parity"), ("horn", "min"), ("dual-horn", "max")]


@pytest.mark.parametrize("name,fam", CASES)
@settings(max_examples=25)
@given(data=st.data())
def test_rounding_certifies_every_accept(name, fam, data):
    t = get_template(name)
    inst = data.draw(instances(t, max_vars=4, max_constraints=5))
    d = decide(t, inst)
    if not d.accepted:
        return
    f = family_for_witness(fam, d.blp, d.affine, t.A.domain)
    ell, M = witness_scale(d.blp, d.affine)
    k = f.width if fam == "AT" else f.arity
    assert k >= M * ell * ell
    asg = round_assignment(t, inst, d.blp, d.affine, f)
    assert check_satisfies(inst, t.B, asg)


def test_alternating_threshold_blocks_are_wide_enough():
    t = get_template("1in3-nae")
    inst = Instance(("x", "y", "z"), (("r", ("x", "y", "z")),))
    d = decide(t, inst)
    f = family_for_witness("AT", d.blp, d.affine, t.A.domain)
    ell, M = witness_scale(d.blp, d.affine)
    assert ell == 3 and f.arity == 2 * M * 9 + 1
    asg = round_assignment(t, inst, d.blp, d.affine, f)
    assert check_satisfies(inst, t.B, asg)


def test_non_polymorphism_is_refused():
    t = get_template("3lin")
    inst = Instance(("x", "y"), (("e1", ("x", "y")),))
    d = decide(t, inst)
    with pytest.raises(NotAPolymorphism):
        round_assignment(t, inst, d.blp, d.affine, majority(5))


def test_arity_too_small_is_refused():
    t = get_template("2sat")
    inst = Instance(("x", "y"), (("pn", ("x", "y")), ("pn", ("y", "x"))))
    d = decide(t, inst)
    ell, M = witness_scale(d.blp, d.affine)
    assert M * ell * ell > 1
    with pytest.raises(ArityUnavailable):
        round_assignment(t, inst, d.blp, d.affine, family("majority", 1))
    with pytest.raises(ArityUnavailable):
        family_for_witness("majority", d.blp, d.affine, cap=0)


def test_as_symmetric():
    f = majority(3)
    assert as_symmetric(f) is f
    g = as_symmetric(f.to_table())
    assert g.histogram_table() == f.histogram_table()
    first = FunctionTable(2, ("0", "1"), ("0", "1"), {(a, b): a for a in "01" for b in "01"})
    with pytest.raises(RoundingError):
        as_symmetric(first)
