import operator
import random

import pytest
from hypothesis import given, strategies as st

from loopw.evaluator import EvalError, EvalErrorKind, const_compare, eval_exp, fetch
from loopw.parser import parse_exp, parse_program
from loopw.stepper import StuckError, store_update

from oracles import check_store_laws
from loopw.syntax import (
    UNINIT, And, BoolV, Eq, Gt, IntV, Lt, Minus, Not, Or, Plus, ProcV, Times, Val, lit, store,
)


def test_fetch_examples():
    assert fetch(store(("X", IntV(3))), "X") == IntV(3)
    assert fetch(store(("X", IntV(3)), ("X", IntV(7))), "X") == IntV(7)
    with pytest.raises(EvalError) as err:
        fetch(store(("Y", IntV(3))), "X")
    assert err.value.kind is EvalErrorKind.UNBOUND_VARIABLE


def test_fetch_uninitialized():
    with pytest.raises(EvalError) as err:
        fetch(store(("X", UNINIT)), "X")
    assert err.value.kind is EvalErrorKind.UNINITIALIZED_READ


def test_eval_examples():
    assert eval_exp((), parse_exp("2 * 3 + 1")) == IntV(7)
    assert eval_exp(store(("X", IntV(5))), parse_exp("X > 4")) == BoolV(True)
    p = ProcV((), parse_program("begin end"))
    assert eval_exp((), Val(p)) is p


def test_equal_on_booleans_has_no_rule():
    with pytest.raises(EvalError) as err:
        eval_exp((), parse_exp("true = true"))
    assert err.value.kind is EvalErrorKind.NO_RULE_APPLIES
    assert "E_Equal" in err.value.detail


def test_operand_errors_propagate_left_first():
    with pytest.raises(EvalError) as err:
        eval_exp((), parse_exp("A + B"))
    assert "A" in err.value.detail


def test_const_compare():
    assert const_compare(IntV(1), IntV(0)) == 1
    assert const_compare(IntV(3), IntV(3)) == 0
    assert const_compare(eval_exp((), parse_exp("{2 + 1}")), IntV(4)) == -1


# ---------------------------------------------------------------- normalization oracle

INT_OPS = {Plus: operator.add, Minus: operator.sub, Times: operator.mul}
BOOL_OPS = {And: lambda a, b: a and b, Or: lambda a, b: a or b}
CMP_OPS = {Gt: operator.gt, Lt: operator.lt, Eq: operator.eq}


def int_tree(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        k = rng.randint(-20, 20)
        return lit(k), k
    op = rng.choice(list(INT_OPS))
    (a, x), (b, y) = int_tree(rng, depth - 1), int_tree(rng, depth - 1)
    return op(a, b), INT_OPS[op](x, y)


def bool_tree(rng, depth):
    if depth == 0 or rng.random() < 0.2:
        b = rng.random() < 0.5
        return Val(BoolV(b)), b
    kind = rng.randrange(3)
    if kind == 0:
        op = rng.choice(list(CMP_OPS))
        (a, x), (b, y) = int_tree(rng, depth - 1), int_tree(rng, depth - 1)
        return op(a, b), CMP_OPS[op](x, y)
    if kind == 1:
        op = rng.choice(list(BOOL_OPS))
        (a, x), (b, y) = bool_tree(rng, depth - 1), bool_tree(rng, depth - 1)
        return op(a, b), BOOL_OPS[op](x, y)
    a, x = bool_tree(rng, depth - 1)
    return Not(a), not x


@given(st.integers(0, 2**32))
def test_normalization_matches_fold(seed):
    rng = random.Random(seed)
    e, k = int_tree(rng, 4)
    assert eval_exp((), e) == IntV(k)
    e, b = bool_tree(rng, 4)
    assert eval_exp((), e) == BoolV(b)


@given(st.integers(0, 2**32))
def test_eval_is_pure(seed):
    rng = random.Random(seed)
    e, _ = bool_tree(rng, 4)
    assert eval_exp((), e) == eval_exp((), e)


# ---------------------------------------------------------------- store laws

@given(st.integers(0, 2**32))
def test_store_laws(seed):
    check_store_laws(random.Random(seed))


def test_update_examples():
    assert store_update(store(("X", IntV(1))), "X", IntV(9)) == store(("X", IntV(9)))
    assert store_update(store(("X", IntV(1)), ("Y", IntV(2))), "X", IntV(9)) == \
        store(("X", IntV(9)), ("Y", IntV(2)))
    with pytest.raises(StuckError) as err:
        store_update((), "X", IntV(9))
    assert err.value.rule == "Update"
