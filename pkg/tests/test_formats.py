import pytest
from hypothesis import given, settings, strategies as st

from blpaff.corpus import CORPUS, get_template
from blpaff.decide import decide
from blpaff.formats import (ParseError, parse_assignment, parse_function, parse_instance, parse_template,
                            parse_witness, serialize_assignment, serialize_function, serialize_instance,
                            serialize_template, serialize_witness, witness_document)
from blpaff.polymorphisms import alternating_threshold, family, majority
from strategies import instances


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_template_round_trip(name):
    t = get_template(name)
    back = parse_template(serialize_template(t))
    assert back.A == t.A and back.B == t.B and back.witness == t.witness


@pytest.mark.parametrize("name", ["2sat", "3lin", "1in3-nae", "horn", "cycles23"])
@settings(max_examples=25)
@given(data=st.data())
def test_instance_and_witness_round_trip(name, data):
    t = get_template(name)
    inst = data.draw(instances(t, max_vars=4, max_constraints=4))
    assert parse_instance(serialize_instance(inst), t.signature) == inst
    d = decide(t, inst)
    doc = parse_witness(serialize_witness(d))
    assert doc == witness_document(d)
    assert doc.decision() == d


def test_comments_and_blank_lines():
    text = "# a comment\n\ninstance\nvariables a b  # two\nconstraint pp a b\n"
    inst = parse_instance(text)
    assert inst.variables == ("a", "b") and inst.constraints == (("pp", ("a", "b")),)


@pytest.mark.parametrize("text,line,fragment", [
    ("", 0, "empty document"),
    ("template\n", 1, "expected 'instance' header"),
    ("instance\nconstraint pp x y\n", 2, "before 'variables'"),
    ("instance\nvariables x\nconstraint pp x y\n", 3, "undeclared variable"),
    ("instance\nvariables x x\n", 2, "duplicate"),
    ("instance\nvariables x\nbogus\n", 3, "unknown keyword"),
])
def test_instance_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as e:
        parse_instance(text or "\n")
    if not text:
        assert "empty" in str(e.value)
        return
    assert e.value.line == line
    assert fragment in str(e.value)
    assert str(e.value).startswith(f"line {line}:")


def test_instance_checked_against_signature():
    sig = get_template("2sat").signature
    with pytest.raises(ParseError, match="line 3: .*signature"):
        parse_instance("instance\nvariables x\nconstraint zz x\n", sig)
    with pytest.raises(ParseError, match="line 3: pp has arity 2"):
        parse_instance("instance\nvariables x\nconstraint pp x\n", sig)


TEMPLATE_ERRORS = [
    ("template t\ndomain A 0 1\nsymbol e 2\ntuple A e 0 2\n", 4, "not in domain"),
    ("template t\ndomain A 0 1\ntuple A e 0 1\n", 3, "before its declaration"),
    ("template t\ndomain A 0 1\nsymbol e 2\nsymbol e 2\n", 4, "declared twice"),
    ("template t\ndomain A 0 1\nsymbol e 0\n", 3, "positive"),
    ("template t\ndomain A 0 1\nsymbol e 2\ntuple A e 0\n", 4, "arity 2"),
    ("template t\ndomain A 0\ndomain B 0\nsymbol u 1\ntuple A u 0\nhom 0 0\nhom 0 0\n", 7, "twice"),
]


@pytest.mark.parametrize("text,line,fragment", TEMPLATE_ERRORS)
def test_template_errors(text, line, fragment):
    with pytest.raises(ParseError) as e:
        parse_template(text)
    assert e.value.line == line and fragment in e.value.message


def test_template_without_a_homomorphism_is_refused():
    text = ("template t\ndomain A 0 1\ndomain B 0 1\nsymbol u 1\ntuple A u 0\ntuple A u 1\ntuple B u 0\n"
            "hom 0 0\nhom 1 1\n")
    with pytest.raises(ParseError):
        parse_template(text)


def test_witness_errors():
    with pytest.raises(ParseError, match="line 2"):
        parse_witness("witness\nverdict reject\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_witness("witness\nverdict accept lp\n")
    with pytest.raises(ParseError, match="line 3"):
        parse_witness("witness\nverdict accept\nw x 0 1/0\n")
    with pytest.raises(ParseError, match="line 4"):
        parse_witness("witness\nverdict accept\nw x 0 1/2\nw x 0 1/2\n")
    with pytest.raises(ParseError, match="exact rational"):
        parse_witness("witness\nverdict accept\nw x 0 0.5\n")
    # a stated ell that disagrees with the LP values is caught
    with pytest.raises(ParseError, match="ell is 3"):
        parse_witness("witness\nverdict accept\nell 3\nw x 0 1/2\nw x 1 1/2\nr x 0 0\nr x 1 1\n")
    doc = parse_witness("witness\nverdict reject lp\n")
    assert str(doc.decision()) == "REJECT(lp)"


def test_assignment_round_trip():
    asg = {"x": "1", "y": "0"}
    text = serialize_assignment(asg, ["y", "x"])
    assert text.splitlines()[1] == "value y 0"
    assert parse_assignment(text) == asg
    with pytest.raises(ParseError, match="line 3"):
        parse_assignment("assignment\nvalue x 1\nvalue x 0\n")


@pytest.mark.parametrize("f", [majority(3), family("min", 2, ("a", "b", "c")), family("parity", 3)])
def test_function_round_trip(f):
    sym = parse_function(serialize_function(f))
    assert sym.histogram_table() == f.histogram_table()
    full = parse_function(serialize_function(f.to_table(), "t"))
    assert full == f.to_table()


def test_block_function_is_written_as_a_table():
    f = alternating_threshold(3)
    assert parse_function(serialize_function(f)) == f.to_table()


def test_function_errors():
    head = "function g\narity 2\ndomain 0 1\ncodomain 0 1\n"
    with pytest.raises(ParseError, match="line 5: .*'symmetric'"):
        parse_function(head + "counts 1 1 0\n")
    with pytest.raises(ParseError, match="line 6: .*sum to 2"):
        parse_function(head + "symmetric\ncounts 1 2 0\n")
    with pytest.raises(ParseError, match="line 5: .*codomain"):
        parse_function(head + "row 0 0 7\n")
    with pytest.raises(ParseError, match="line 1: .*missing"):
        parse_function("function g\n")
