import io
import os
from pathlib import Path

import pytest

from cilattice import cli

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

Q_FOUR = ["I(c, d | a b)", "I(a, b | c)", "I(a, b | d)", "I(c, d)"]

# golden name -> list of argv invocations whose outputs are concatenated
CASES = {
    "bc_d_given_a.lattice": [["lattice", "bc_d_given_a.ci"]],
    "strong_contraction.lattice": [["lattice", "strong_contraction.ci"]],
    "strong_contraction.check": [["check", "--explain", "strong_contraction.ci"]],
    "four_antecedents.closure": [["closure", "--trace", "four_antecedents.ci"]],
    "four_antecedents.check": [["check", "four_antecedents.ci", "--query", q] for q in Q_FOUR],
    "four_antecedents_no_sc.closure": [["closure", "--rules", "a-minus-sc", "four_antecedents.ci"]],
    "intersection.check": [["check", "--explain", "intersection.ci"]],
    "intersection.falsify": [["falsify", "intersection.ci"]],
    "intersection.certificate": [["certificate", "intersection.ci"]],
    "trivial.check": [["check", "trivial.ci"]],
}


def run(argv):
    out = io.StringIO()
    argv = [str(DATA / a) if a.endswith(".ci") else a for a in argv]
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def render(invocations):
    chunks = []
    for argv in invocations:
        code, text = run(argv)
        assert code == cli.EXIT_OK
        chunks.append(text)
    return "".join(chunks)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    path = GOLDEN / f"{name}.out"
    got = render(CASES[name])
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(got, encoding="utf-8")
    assert got == path.read_text(encoding="utf-8")


def test_inline_flags_match_instance_file():
    _, from_file = run(["check", "intersection.ci"])
    _, inline = run(
        ["check", "--universe", "a b c d", "--given", "I(a, b | c d)", "--given", "I(a, d | b c)", "--query", "I(a, b d | c)"]
    )
    assert inline == from_file == "NotImplied\tH1\tcertificate={c}\n"


def test_lattice_small_commands():
    _, text = run(["lattice", "--universe", "a b c d e", "--query", "I(a, b)"])
    assert "count: 8\n" in text
    assert text.splitlines()[1].count(",") == 7
    _, text = run(["lattice", "--universe", "a b c", "--query", "I(a, | b)"])
    assert "elements: \n" in text and "count: 0\n" in text


def test_wdec_minimize_stable():
    _, text = run(["wdec", "--universe", "a b c d", "--query", "I(b c, d | a)"])
    assert text == "I(b, d | a)\nI(c, d | a)\n"
    _, text = run(["minimize", "--universe", "a b c d", "--given", "I(a, b)", "--given", "I(a, b | c)"])
    assert text == "I(a, b)\n"
    _, text = run(["stable", "--universe", "a b c", "--given", "I(a, b)", "--given", "I(a, b | c)"])
    assert text == "I(a, b)\tstable\nI(a, b | c)\tstable\n"
    _, text = run(["stable", "--universe", "a b c", "--given", "I(a, b)"])
    assert text == "I(a, b)\tunstable\n"


def test_certificate_none():
    _, text = run(["certificate", "strong_contraction.ci"])
    assert text == "none\n"


def test_exit_codes(capsys):
    assert run(["check", "--universe", "a b", "--query", "I(a, q)"])[0] == cli.EXIT_INPUT
    assert run(["check", "--universe", "a a", "--query", "I(a, b)"])[0] == cli.EXIT_INPUT
    assert run(["check", "--universe", "a b"])[0] == cli.EXIT_INPUT
    assert run(["check"])[0] == cli.EXIT_INPUT
    assert run(["check", str(DATA / "missing.ci")])[0] == cli.EXIT_INPUT
    big = " ".join(f"v{i}" for i in range(7))
    assert run(["closure", "--universe", big, "--given", "I(v0, v1)"])[0] == cli.EXIT_CAP
    with pytest.raises(SystemExit) as exc:
        cli.main(["closure", "--rules", "nope"])
    assert exc.value.code == 2


def test_experiment_command(tmp_path):
    code, text = run(["experiment", "--attrs", "4", "--sets", "10", "--seed", "7"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "k,instances,full,h1,h2,h1_or_h2,ratio" and len(lines) == 9
    assert run(["experiment", "--attrs", "4", "--sets", "10", "--seed", "7"])[1] == text
    out = tmp_path / "rows.csv"
    log = tmp_path / "log.txt"
    run(["experiment", "--attrs", "4", "--sets", "2", "--k-min", "3", "--k-max", "3", "-o", str(out), "--log", str(log)])
    assert out.read_text().startswith("k,instances")
    assert log.read_text().count("universe: a b c d\n") == 2 * (24 - 3)
