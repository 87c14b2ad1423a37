import pytest
from hypothesis import given, strategies as st

from blpaff._search import solve_csp
from blpaff.corpus import get_template
from blpaff.structures import (Instance, PromiseTemplate, RelationalStructure, Signature, SizeGuardError,
                               StructureError, brute_force_satisfiable, check_homomorphism, check_satisfies,
                               find_homomorphism, structure_from_lists)
from oracles import naive_satisfiable
from strategies import instances


def test_signature_rejects_duplicates_and_bad_arity():
    with pytest.raises(StructureError):
        Signature((("r", 2), ("r", 1)))
    with pytest.raises(StructureError):
        Signature((("r", 0),))


def test_structure_validation():
    sig = Signature((("e", 2),))
    with pytest.raises(StructureError):
        RelationalStructure(("0", "1"), sig, {"e": [("0", "2")]})
    with pytest.raises(StructureError):
        RelationalStructure(("0", "1"), sig, {"e": [("0",)]})
    with pytest.raises(StructureError):
        RelationalStructure(("0", "0"), sig, {})
    with pytest.raises(StructureError):
        RelationalStructure(("0",), sig, {"f": []})


def test_relation_order_does_not_matter():
    sig = Signature((("e", 2),))
    a = RelationalStructure(("0", "1"), sig, {"e": [("1", "0"), ("0", "1")]})
    b = RelationalStructure(("0", "1"), sig, {"e": [("0", "1"), ("1", "0"), ("0", "1")]})
    assert a == b and hash(a) == hash(b)
    assert a.relation("e") == (("0", "1"), ("1", "0"))


def test_template_needs_a_homomorphism():
    k2 = structure_from_lists(("0", "1"), {"e": [("0", "1"), ("1", "0")]})
    k3 = structure_from_lists(("0", "1", "2"), {"e": [(a, b) for a in "012" for b in "012" if a != b]})
    t = PromiseTemplate(k2, k3)
    assert check_homomorphism(k2, k3, t.witness)
    with pytest.raises(StructureError):
        PromiseTemplate(k3, k2)
    with pytest.raises(StructureError):
        PromiseTemplate(k2, k3, witness={"0": "0", "1": "0"})


def test_homomorphism_search_on_cycles():
    c3 = structure_from_lists(("a", "b", "c"), {"e": [("a", "b"), ("b", "c"), ("c", "a")]})
    c2 = structure_from_lists(("x", "y"), {"e": [("x", "y"), ("y", "x")]})
    assert find_homomorphism(c3, c2) is None
    c6 = structure_from_lists(tuple("012345"), {"e": [(str(i), str((i + 1) % 6)) for i in range(6)]})
    h = find_homomorphism(c6, c3)
    assert h is not None and check_homomorphism(c6, c3, h)
    assert h["0"] == "a"


def test_instance_validation():
    with pytest.raises(StructureError):
        Instance(("x", "x"), ())
    with pytest.raises(StructureError):
        Instance(("x",), (("pp", ("x", "y")),))
    t = get_template("2sat")
    with pytest.raises(StructureError):
        Instance(("x",), (("pp", ("x",)),)).validate(t.signature)
    with pytest.raises(StructureError):
        Instance(("x",), (("zz", ("x",)),)).validate(t.signature)


def test_instance_as_structure():
    t = get_template("2sat")
    inst = Instance(("x", "y"), (("pp", ("x", "y")), ("pp", ("x", "y")), ("t", ("y",))))
    S = inst.as_structure(t.signature)
    assert S.relation("pp") == (("x", "y"),)
    assert S.relation("t") == (("y",),)


def test_check_satisfies_requires_total_assignment():
    t = get_template("2sat")
    inst = Instance(("x", "y"), (("pp", ("x", "y")),))
    assert check_satisfies(inst, t.A, {"x": "0", "y": "1"})
    assert not check_satisfies(inst, t.A, {"x": "0", "y": "0"})
    with pytest.raises(StructureError):
        check_satisfies(inst, t.A, {"x": "0"})


def test_size_guard():
    t = get_template("k3")
    inst = Instance(tuple(f"v{i}" for i in range(30)), ())
    with pytest.raises(SizeGuardError):
        brute_force_satisfiable(inst, t.A, max_bits=40)


@pytest.mark.parametrize("name", ["2sat", "horn", "3lin", "1in3-nae", "cycles23", "k3"])
@given(data=st.data())
def test_brute_force_matches_plain_enumeration(name, data):
    t = get_template(name)
    inst = data.draw(instances(t, max_vars=4, max_constraints=5))
    for S in (t.A, t.B):
        assert brute_force_satisfiable(inst, S) == naive_satisfiable(inst, S)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.sets(st.tuples(st.integers(0, 2), st.integers(0, 2)))),
                max_size=5))
def test_csp_engine_lists_every_solution_in_order(cons):
    from itertools import product
    variables = ["a", "b", "c", "d"]
    constraints = [((variables[i], variables[j]), {tuple(map(str, p)) for p in allowed}) for i, j, allowed in cons]
    dom = {v: ("0", "1", "2") for v in variables}
    got = [tuple(s[v] for v in variables) for s in solve_csp(variables, dom, constraints)]
    want = [vals for vals in product("012", repeat=4)
            if all(tuple(vals[variables.index(x)] for x in scope) in allowed for scope, allowed in constraints)]
    assert got == want
