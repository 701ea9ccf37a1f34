import pytest
from hypothesis import given, strategies as st

from loopw.gen import generate
from loopw.parser import KEYWORDS, ParseError, parse_cmd, parse_exp, parse_program, tokenize
from loopw.pretty import pretty
from loopw.programs import ackermann_driver
from loopw.syntax import (
    BOOL, EMPTY, INT, And, Assign, Block, BoolV, Call, EmptyBlock, Eq, For, Gt, InitVar, Lt,
    Minus, Mode, Not, Or, Plus, ProcDecl, ProcT, ProcV, Param, Seq, Times, Val, Var, lit,
)


def kinds(text):
    return [(t.kind, t.text) for t in tokenize(text) if t.kind != "eof"]


def test_tokenize_assignment():
    assert kinds("X := 0;") == [("ident", "X"), ("sym", ":="), ("num", "0"), ("sym", ";")]


def test_tokenize_spaced_range():
    assert [t for _, t in kinds("for I in 1 . . M loop")] == ["for", "I", "in", "1", "..", "M", "loop"]


def test_comment_is_skipped():
    assert kinds("-- comment\nnull") == [("kw", "null")]


def test_double_underscore_is_reserved():
    with pytest.raises(ParseError):
        tokenize("X__1 := 0")


def test_unknown_character():
    with pytest.raises(ParseError) as err:
        tokenize("X := 1 $ 2")
    assert (err.value.line, err.value.column) == (1, 8)


def test_identifiers_never_lex_as_keywords():
    for kw in KEYWORDS:
        assert kinds(kw)[0][0] != "ident"
    assert kinds("nulls")[0] == ("ident", "nulls")


def test_smallest_program():
    assert parse_program("begin end") == EmptyBlock()


def test_initvar_program():
    d = parse_program("X : int := 1; begin X := X + 1; end")
    assert d == InitVar("X", INT, lit(1), Block(Assign("X", Plus(Var("X"), lit(1)))))


def test_ackermann_shape():
    d = parse_program(ackermann_driver(2, 3))
    assert isinstance(d, ProcDecl) and d.name == "Incr"
    ack = d.rest
    assert ack.name == "Ack"
    assert ack.params == (Param("M", Mode.IN, INT), Param("N", Mode.IN, INT), Param("R", Mode.OUT, INT))
    assert ack.body.type == ProcT(((Mode.IN, INT), (Mode.OUT, INT)))


@pytest.mark.parametrize("text, expected", [
    ("1 + 2 * 3", "1 + (2 * 3)"),
    ("not X and Y", "(not X) and Y"),
    ("A or B and C", "A or (B and C)"),
    ("1 - 2 - 3", "(1 - 2) - 3"),
    ("X + 1 > Y * 2", "(X + 1) > (Y * 2)"),
    ("not X = Y", "not (X = Y)"),
])
def test_precedence_against_parenthesized(text, expected):
    assert parse_exp(text) == parse_exp(expected)


def test_precedence_trees():
    assert parse_exp("1 + 2 * 3") == Plus(lit(1), Times(lit(2), lit(3)))
    assert parse_exp("not X and Y") == And(Not(Var("X")), Var("Y"))
    assert parse_exp("(X)") == Var("X")


def test_chained_comparison_rejected():
    with pytest.raises(ParseError):
        parse_exp("A < B < C")


def test_constant_algebra_braces_normalize():
    assert parse_exp("{2 + 1}") == lit(3)
    assert parse_exp("{0 - 4}") == lit(-4)


def test_if_requires_else_and_end_if():
    with pytest.raises(ParseError):
        parse_program("begin if true then null; end; end")
    with pytest.raises(ParseError):
        parse_program("begin if true then null; else null; end; end")


def test_error_position_and_path():
    with pytest.raises(ParseError) as err:
        parse_program("begin\n  X := ;\nend")
    e = err.value
    assert (e.line, e.column) == (2, 8)
    assert "2:8" in str(e)


def test_zero_argument_call():
    assert parse_cmd("P()") == Call(Var("P"), ())


def test_duplicate_parameters_rejected():
    with pytest.raises(ParseError):
        parse_program("procedure P(A : in int; A : out int) is begin end; begin end")


def test_mode_defaults_to_in():
    d = parse_program("procedure P(A : int) is begin end; begin end")
    assert d.params[0].mode == Mode.IN


def test_proc_literal_and_type():
    e = parse_exp("proc (N : in int) is begin null; end")
    assert isinstance(e, Val) and isinstance(e.value, ProcV)
    d = parse_program("P : proc(in int, out bool) := Q; begin end")
    assert d.type == ProcT(((Mode.IN, INT), (Mode.OUT, BOOL)))


def test_sequence_and_for():
    c = parse_cmd("for I in 1 .. 3 loop X := I; end loop; null")
    assert isinstance(c, Seq) and isinstance(c.first, For)


def test_pretty_leaves():
    assert pretty(parse_cmd("null")) == "null"
    assert pretty(Plus(lit(1), lit(2))) == "1 + 2"


# ---------------------------------------------------------------- round trip

_leaf = st.one_of(
    st.sampled_from(["X", "Y", "Z"]).map(Var),
    st.integers(-50, 50).map(lit),
    st.booleans().map(lambda b: Val(BoolV(b))),
)

_exps = st.recursive(_leaf, lambda sub: st.one_of(
    st.tuples(st.sampled_from([Plus, Minus, Times, Eq, Gt, Lt, And, Or]), sub, sub).map(
        lambda t: t[0](t[1], t[2])),
    sub.map(Not),
), max_leaves=12)


@given(_exps)
def test_expression_round_trip(e):
    assert parse_exp(pretty(e)) == e


@given(st.integers(0, 10_000))
def test_program_round_trip(seed):
    d = generate(seed)
    assert parse_program(pretty(d)) == d


def test_ackermann_round_trip():
    d = parse_program(ackermann_driver(3, 3))
    assert parse_program(pretty(d)) == d


def test_empty_block_constant():
    assert EMPTY == EmptyBlock()
