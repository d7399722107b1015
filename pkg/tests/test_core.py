import itertools

import pytest
from hypothesis import given

from cilattice.core import (
    CapExceeded,
    CIStatement,
    DuplicateVariable,
    NonDisjoint,
    ParseError,
    Universe,
    UniverseMismatch,
    UnknownVariable,
    VarSet,
    all_statements,
    classify,
    elementary_statements,
    format_instance,
    format_statement,
    parse_instance,
    parse_statement,
    parse_universe,
)

from .strategies import statements, stmt


def test_parse_universe_variants():
    u = parse_universe("a b c d")
    assert u.names == ("a", "b", "c", "d") and u.n == 4
    assert parse_universe("a,b,c,d,e").n == 5
    assert parse_universe(" x1,  y_2 z ").names == ("x1", "y_2", "z")


@pytest.mark.parametrize(
    "text, exc",
    [("a a", DuplicateVariable), ("", ParseError), ("a b-c", ParseError), (" ".join(f"v{i}" for i in range(65)), CapExceeded)],
)
def test_parse_universe_errors(text, exc):
    with pytest.raises(exc):
        parse_universe(text)


def test_universe_of_64_is_allowed():
    assert parse_universe(" ".join(f"v{i}" for i in range(64))).n == 64


def test_parse_statement(abcd):
    c = stmt("I(b c, d | a)", abcd)
    assert c.left == abcd.varset("b c") and c.right == abcd.varset("d") and c.given == abcd.varset("a")
    assert stmt("I(a, b)", abcd).given == abcd.empty
    assert stmt("I(bc, d|a)", abcd) == c  # concatenated names


@pytest.mark.parametrize(
    "text, exc",
    [
        ("I(a, a|b)", NonDisjoint),
        ("I(a, b|a)", NonDisjoint),
        ("I(a, q)", UnknownVariable),
        ("I(a b)", ParseError),
        ("I(a, b, c)", ParseError),
        ("I(a, b | c | d)", ParseError),
        ("J(a, b)", ParseError),
        ("I(a, b", ParseError),
    ],
)
def test_parse_statement_errors(abcd, text, exc):
    with pytest.raises(exc):
        stmt(text, abcd)


def test_symmetry_is_quotiented(abcd):
    assert stmt("I(d, b c|a)", abcd) == stmt("I(b c, d|a)", abcd)
    assert format_statement(stmt("I(d, b c|a)", abcd)) == "I(b c, d | a)"
    assert hash(stmt("I(d, b c|a)", abcd)) == hash(stmt("I(b c, d|a)", abcd))


def test_format_statement(abcd):
    assert format_statement(stmt("I(b c, d | a)", abcd)) == "I(b c, d | a)"
    assert format_statement(stmt("I(a, b | )", abcd)) == "I(a, b)"
    assert format_statement(stmt("I(a, | c)", abcd)) == "I(, a | c)"


def test_classify(abcd, abc):
    assert classify(stmt("I(bc, d|a)", abcd)) == {"trivial": False, "saturated": True, "elementary": False}
    assert classify(stmt("I(a, |c)", abcd))["trivial"]
    assert classify(stmt("I(a, b)", abc)) == {"trivial": False, "saturated": False, "elementary": True}


@given(statements())
def test_format_parse_roundtrip(c):
    assert parse_statement(format_statement(c), c.universe) == c


@given(statements())
def test_canonical_under_swap(c):
    swapped = CIStatement(c.right, c.left, c.given)
    assert swapped == c and format_statement(swapped) == format_statement(c)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_varset_laws_exhaustive(n):
    u = Universe.of_size(n)
    sets = list(u.subsets())
    for x, y in itertools.product(sets, repeat=2):
        assert ~(x | y) == (~x & ~y)
        assert ~(x & y) == (~x | ~y)
        assert x | (x & y) == x and x & (x | y) == x
        assert (x <= y) == (x | y == y) == (x & y == x)
        assert x - y == x & ~y
        assert ~~x == x
    assert len(sets) == 2**n


def test_subset_order(abc):
    labels = [s.compact() for s in abc.subsets()]
    assert labels == ["∅", "a", "b", "c", "ab", "ac", "bc", "abc"]


def test_universe_mismatch():
    u1, u2 = Universe.of_size(3), Universe(("x", "y", "z"))
    with pytest.raises(UniverseMismatch):
        u1.varset("a") | u2.varset("x")
    with pytest.raises(UniverseMismatch):
        CIStatement(u1.varset("a"), u2.varset("y"), u1.empty)


def test_varset_is_immutable(abc):
    v = abc.varset("a")
    with pytest.raises(AttributeError):
        v.mask = 3


def test_statement_counts():
    u = Universe.of_size(4)
    # assignments to left/right/given/none with both sides non-empty, halved for symmetry
    assert len(all_statements(u)) == (4**4 - 2 * 3**4 + 2**4) // 2
    assert len(elementary_statements(Universe.of_size(5))) == 80
    assert len(elementary_statements(Universe.of_size(2))) == 1


def test_instance_roundtrip(abcd):
    text = """
    # comment line
    universe: a b c d
    given: I(a, b)   # trailing comment
    given: I(c, d | a)
    query: I(c, d)
    """
    inst = parse_instance(text)
    assert inst.universe == abcd
    assert inst.given == [stmt("I(a,b)", abcd), stmt("I(c,d|a)", abcd)]
    assert inst.query == stmt("I(c,d)", abcd)
    assert parse_instance(format_instance(inst)) == inst


@pytest.mark.parametrize(
    "text",
    [
        "given: I(a, b)\nuniverse: a b",
        "universe: a b\nquery: I(a, b)\nquery: I(a, b)",
        "universe: a b\nfoo: bar",
        "universe: a b\nI(a, b)",
        "# nothing",
    ],
)
def test_instance_errors(text):
    with pytest.raises(ParseError):
        parse_instance(text)


def test_varset_str_and_compact():
    u = Universe(("x1", "x2", "x3"))
    v = u.varset("x1 x3")
    assert str(v) == "{x1,x3}"
    assert v.compact() == "x1 x3"
    assert isinstance(u.empty, VarSet) and u.empty.compact() == "∅"
