"""Expression evaluation ``e =_mu v`` against a store."""

from __future__ import annotations

import enum

from .syntax import (
    UNINIT, And, BoolV, Eq, Gt, IntV, Lt, Minus, Not, Or, Plus, ProcV, Store, Times, Val,
    Var,
)


class EvalErrorKind(enum.Enum):
    UNBOUND_VARIABLE = "UnboundVariable"
    UNINITIALIZED_READ = "UninitializedRead"
    NO_RULE_APPLIES = "NoRuleApplies"

    def __str__(self):
        return self.value


class EvalError(Exception):
    def __init__(self, kind: EvalErrorKind, detail: str):
        super().__init__(f"{kind}: {detail}")
        self.kind = kind
        self.detail = detail


def fetch(store: Store, x: str):
    """Value of the rightmost binding of ``x``."""
    for name, v in reversed(store):
        if name == x:
            if v is UNINIT:
                raise EvalError(EvalErrorKind.UNINITIALIZED_READ, f"{x} read before assignment")
            return v
    raise EvalError(EvalErrorKind.UNBOUND_VARIABLE, f"{x} is not bound in the store")


_ARITH = {Plus: lambda a, b: a + b, Minus: lambda a, b: a - b, Times: lambda a, b: a * b}
_ORDER = {Gt: lambda a, b: a > b, Lt: lambda a, b: a < b, Eq: lambda a, b: a == b}
_LOGIC = {And: lambda a, b: a and b, Or: lambda a, b: a or b}


def _kind(v) -> str:
    return {IntV: "int", BoolV: "bool", ProcV: "proc"}.get(type(v), type(v).__name__)


def eval_exp(store: Store, e):
    match e:
        case Val(v):
            return v
        case Var(x):
            return fetch(store, x)
        case Not(a):
            v = eval_exp(store, a)
            if type(v) is BoolV:
                return BoolV(not v.b)
            raise EvalError(EvalErrorKind.NO_RULE_APPLIES, f"E_Not on a {_kind(v)} operand")
    op = type(e)
    # both operands are evaluated, left first, as in the rule premises
    a = eval_exp(store, e.left)
    b = eval_exp(store, e.right)
    if op in _ARITH or op in _ORDER:
        if type(a) is IntV and type(b) is IntV:
            if op in _ARITH:
                return IntV(_ARITH[op](a.n, b.n))
            return BoolV(_ORDER[op](a.n, b.n))
    elif op in _LOGIC:
        if type(a) is BoolV and type(b) is BoolV:
            return BoolV(_LOGIC[op](a.b, b.b))
    else:
        raise TypeError(f"not an expression: {e!r}")
    rule = "E_" + {Plus: "Plus", Minus: "Minus", Times: "Times", Gt: "Greater", Lt: "Less",
                   Eq: "Equal", And: "And", Or: "Or"}[op]
    raise EvalError(EvalErrorKind.NO_RULE_APPLIES, f"{rule} on {_kind(a)} and {_kind(b)} operands")


def const_compare(k: IntV, k2: IntV) -> int:
    """-1, 0 or 1 as ``k`` is less than, equal to or greater than ``k2``."""
    return (k.n > k2.n) - (k.n < k2.n)
