import subprocess
import sys
from itertools import product

import pytest

from blpaff.cli import main
from blpaff.corpus import get_template
from blpaff.formats import parse_assignment, parse_instance, parse_witness, serialize_template
from blpaff.structures import check_satisfies


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


ODD = "instance\nvariables x y z\nconstraint e1 x y\nconstraint e1 y z\nconstraint e1 z x\n"
CHAIN = "instance\nvariables x y z\nconstraint l1 x y z\nconstraint e0 x y\n"


def test_decide_exit_codes(tmp_path, capsys):
    odd = write(tmp_path, "odd.txt", ODD)
    assert main(["decide", "-t", "3lin", "-i", odd]) == 1
    assert capsys.readouterr().out.strip() == "REJECT(affine)"
    chain = write(tmp_path, "chain.txt", CHAIN)
    wit = str(tmp_path / "w.txt")
    assert main(["decide", "-t", "3lin", "-i", chain, "-w", wit]) == 0
    assert capsys.readouterr().out.strip() == "ACCEPT"
    assert parse_witness(open(wit).read()).verdict == "accept"


def test_input_errors_exit_2(tmp_path, capsys):
    assert main(["decide", "-t", "nosuch", "-i", "x"]) == 2
    bad = write(tmp_path, "bad.txt", "instance\nvariables x\nconstraint e1 x\n")
    assert main(["decide", "-t", "3lin", "-i", bad]) == 2
    err = capsys.readouterr().err
    assert "line 3" in err
    assert main(["decide", "-t", "3lin", "-i", str(tmp_path / "missing.txt")]) == 2
    with pytest.raises(SystemExit) as e:
        main(["decide", "-t", "3lin"])
    assert e.value.code == 2


def test_template_from_file(tmp_path, capsys):
    path = write(tmp_path, "t.txt", serialize_template(get_template("2sat")))
    inst = write(tmp_path, "i.txt", "instance\nvariables a\nconstraint t a\nconstraint f a\n")
    assert main(["decide", "-t", path, "-i", inst]) == 1
    assert "REJECT(lp)" in capsys.readouterr().out
    assert main(["show", "-t", path]) == 0
    assert capsys.readouterr().out == serialize_template(get_template("2sat"))


def test_round_outputs_an_assignment_in_B(tmp_path, capsys):
    t = get_template("1in3-nae")
    inst_text = "instance\nvariables a b c d\nconstraint r a b c\nconstraint r b c d\n"
    inst = write(tmp_path, "i.txt", inst_text)
    assert main(["round", "-t", "1in3-nae", "-i", inst, "AT"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# ell=")
    asg = parse_assignment(out.split("\n", 1)[1])
    assert check_satisfies(parse_instance(inst_text), t.B, asg)


def test_round_failures(tmp_path, capsys):
    inst = write(tmp_path, "i.txt", "instance\nvariables a b\nconstraint e1 a b\n")
    assert main(["round", "-t", "3lin", "-i", inst, "majority"]) == 4
    assert main(["round", "-t", "3lin", "-i", inst, "parity", "--arity", "1"]) == 4
    odd = write(tmp_path, "odd.txt", ODD)
    assert main(["round", "-t", "3lin", "-i", odd, "parity"]) == 1
    assert main(["round", "-t", "3lin", "-i", inst, "median"]) == 2


def test_round_from_a_witness_file(tmp_path, capsys):
    inst = write(tmp_path, "i.txt", CHAIN)
    wit = str(tmp_path / "w.txt")
    assert main(["decide", "-t", "3lin", "-i", inst, "-w", wit]) == 0
    assert main(["round", "-t", "3lin", "-i", inst, "parity", "-w", wit]) == 0
    # a witness that does not fit the instance is an input error
    other = write(tmp_path, "o.txt", "instance\nvariables x y z\nconstraint e1 x y\n")
    assert main(["round", "-t", "3lin", "-i", other, "parity", "-w", wit]) == 2
    reject = write(tmp_path, "r.txt", "witness\nverdict reject lp\n")
    assert main(["round", "-t", "3lin", "-i", inst, "-w", reject]) == 2


def majority_table(k):
    rows = "".join(f"row {' '.join(map(str, xs))} {int(2 * sum(xs) > k)}\n" for xs in product((0, 1), repeat=k))
    return f"function maj\narity {k}\ndomain 0 1\ncodomain 0 1\n" + rows


def test_round_with_a_table(tmp_path, capsys):
    # b is free, so ell = 2 and the table needs arity at least 4
    inst = write(tmp_path, "i.txt", "instance\nvariables a b\nconstraint pn a b\nconstraint t a\n")
    assert main(["round", "-t", "2sat", "-i", inst, "--table", write(tmp_path, "m3.txt", majority_table(3))]) == 4
    assert main(["round", "-t", "2sat", "-i", inst, "--table", write(tmp_path, "m5.txt", majority_table(5))]) == 0
    assert capsys.readouterr().out.startswith("# ell=2 M=1 arity=5")
    first = write(tmp_path, "first.txt", "function g\narity 2\ndomain 0 1\ncodomain 0 1\n"
                  "row 0 0 0\nrow 0 1 0\nrow 1 0 1\nrow 1 1 1\n")
    assert main(["round", "-t", "2sat", "-i", inst, "--table", first]) == 4


def test_polycheck_and_polyenum(tmp_path, capsys):
    assert main(["polycheck", "-t", "2sat", "majority", "3"]) == 0
    assert main(["polycheck", "-t", "3lin", "majority", "--arity", "3"]) == 1
    assert capsys.readouterr().out.split() == ["true", "false"]
    assert main(["polycheck", "-t", "2sat"]) == 2
    assert main(["polycheck", "-t", "2sat", "majority", "9", "--max-checks", "5"]) == 3
    assert main(["polyenum", "-t", "cycles23", "--arity", "2", "--symmetric"]) == 1
    capsys.readouterr()
    assert main(["polyenum", "-t", "2sat", "--arity", "3", "--symmetric", "--limit", "1"]) == 0
    line = capsys.readouterr().out.strip()
    assert line.count("=") == 4 and "3.0=" in line
    assert main(["polyenum", "-t", "1in3-nae", "--blocks", "1,1"]) == 0
    assert "|" in capsys.readouterr().out
    assert main(["polyenum", "-t", "2sat"]) == 2


def test_classify_fool_free_generate(tmp_path, capsys):
    inst = write(tmp_path, "odd.txt", ODD)
    assert main(["classify", "-t", "3lin", "-i", inst]) == 0
    out = capsys.readouterr().out
    assert "lp=true" in out and "affine_unrefined=false" in out and "REJECT(affine)" in out
    assert main(["fool", "-t", "cycles23", "--max-vars", "1", "--max-constraints", "1"]) == 0
    assert "constraint e x0 x0" in capsys.readouterr().out
    assert main(["fool", "-t", "2sat", "--max-vars", "2", "--max-constraints", "2"]) == 1
    capsys.readouterr()
    assert main(["free", "-t", "horn", "--minion", "qconv", "--ell", "2", "--show"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("domain=3") and "hom_to_B=true" in out
    assert main(["free", "-t", "horn", "--ell", "4", "--max-objects", "3"]) == 3
    assert main(["generate", "-t", "1in3-nae", "--vars", "4", "--constraints", "3", "--seed", "1"]) == 0
    gen = capsys.readouterr().out
    assert parse_instance(gen).m == 3
    assert main(["generate", "-t", "1in3-nae", "--vars", "2", "--constraints", "1"]) == 2


def test_module_entry_point(tmp_path):
    inst = write(tmp_path, "i.txt", CHAIN)
    done = subprocess.run([sys.executable, "-m", "blpaff", "decide", "-t", "3lin", "-i", inst],
                          capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout.strip() == "ACCEPT"
