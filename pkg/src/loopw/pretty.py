"""Concrete-syntax rendering.  Output reparses to a structurally equal tree."""

from __future__ import annotations

from .syntax import (
    UNINIT, Alias, Aliases, And, Assign, BinExp, Block, BoolT, BoolV, Call, ConstDecl,
    Declare, EmptyBlock, Eq, For, Gt, If, InitVar, IntT, IntV, Lt, Minus, Not, Null, Or,
    Param, Plus, ProcDecl, ProcT, ProcV, Seq, Times, UninitVar, Val, Var, VoidT, While,
)

# Binding strength, loosest first.  Comparisons do not associate.
_LEVEL = {Or: 1, And: 2, Eq: 4, Gt: 4, Lt: 4, Plus: 5, Minus: 5, Times: 6}
_NOT = 3
_ATOM = 7


def pretty(node) -> str:
    match node:
        case IntT() | BoolT() | VoidT() | ProcT():
            return pp_type(node)
        case IntV() | BoolV() | ProcV():
            return pp_value(node)
        case Var() | Val() | BinExp() | Not():
            return pp_exp(node)
        case Null() | Assign() | Seq() | If() | While() | For() | Declare() | Call():
            return pp_cmd(node)
        case _:
            return pp_dcl(node)


def pp_type(t) -> str:
    match t:
        case ProcT(params):
            return "proc(" + ", ".join(f"{m} {pp_type(ty)}" for m, ty in params) + ")"
        case _:
            return str(t)


def pp_value(v) -> str:
    match v:
        case IntV(n) if n >= 0:
            return str(n)
        case IntV(n):
            # no unary minus in the language; use the constant algebra instead
            return f"{{0 - {-n}}}"
        case BoolV(b):
            return "true" if b else "false"
        case ProcV(params, body):
            return f"proc {_params(params)} is {pp_dcl(body)}"
        case _ if v is UNINIT:
            return "?"
    raise TypeError(f"not a value: {v!r}")


def _params(params: tuple[Param, ...]) -> str:
    return "(" + "; ".join(f"{p.name} : {p.mode} {pp_type(p.type)}" for p in params) + ")"


def _level(e) -> int:
    match e:
        case BinExp():
            return _LEVEL[type(e)]
        case Not():
            return _NOT
        case _:
            return _ATOM


def pp_exp(e, need: int = 0) -> str:
    match e:
        case Var(x):
            s = x
        case Val(v):
            s = pp_value(v)
        case Not(a):
            s = "not " + pp_exp(a, _NOT)
        case BinExp(a, b):
            lv = _LEVEL[type(e)]
            if lv == 4:
                s = f"{pp_exp(a, lv + 1)} {e.symbol} {pp_exp(b, lv + 1)}"
            else:
                s = f"{pp_exp(a, lv)} {e.symbol} {pp_exp(b, lv + 1)}"
        case _:
            raise TypeError(f"not an expression: {e!r}")
    return f"({s})" if _level(e) < need else s


def _seq_items(c) -> list[str]:
    items = []
    while isinstance(c, Seq):
        first = c.first
        items.append(f"({_seq_text(first)})" if isinstance(first, Seq) else pp_cmd(first))
        c = c.second
    items.append(pp_cmd(c))
    return items


def _seq_text(c) -> str:
    return "; ".join(_seq_items(c))


def _body(c) -> str:
    """A command list in a terminated position (``c ;`` before end/else)."""
    return _seq_text(c) + ";"


def pp_cmd(c) -> str:
    match c:
        case Null():
            return "null"
        case Assign(x, e):
            return f"{x} := {pp_exp(e)}"
        case Seq():
            return _seq_text(c)
        case If(e, c1, c2):
            return f"if {pp_exp(e)} then {_body(c1)} else {_body(c2)} end if"
        case While(e, body):
            return f"while {pp_exp(e)} loop {_body(body)} end loop"
        case For(x, lo, hi, body):
            return f"for {x} in {pp_exp(lo)} .. {pp_exp(hi)} loop {_body(body)} end loop"
        case Declare(d):
            return f"declare {pp_dcl(d)}"
        case Call(f, args):
            callee = pp_exp(f, _ATOM) if not isinstance(f, Val) else pp_exp(f)
            return f"{callee}(" + ", ".join(pp_exp(a) for a in args) + ")"
    raise TypeError(f"not a command: {c!r}")


def _alias(x, m, t, e) -> str:
    return f"{x} : {m} {pp_type(t)} = {pp_exp(e)}"


def pp_dcl(d) -> str:
    match d:
        case EmptyBlock():
            return "begin end"
        case Block(c):
            return f"begin {_body(c)} end"
        case UninitVar(x, t, rest):
            return f"{x} : {pp_type(t)}; {pp_dcl(rest)}"
        case InitVar(x, t, e, rest):
            return f"{x} : {pp_type(t)} := {pp_exp(e)}; {pp_dcl(rest)}"
        case ConstDecl(x, t, e, rest):
            return f"{x} : constant {pp_type(t)} := {pp_exp(e)}; {pp_dcl(rest)}"
        case ProcDecl(p, params, body, rest):
            return f"procedure {p}{_params(params)} is {pp_dcl(body)}; {pp_dcl(rest)}"
        case Aliases(bs, rest):
            return "[" + ", ".join(_alias(*b) for b in bs) + f"] {pp_dcl(rest)}"
        case Alias(x, m, t, e, rest):
            return f"({_alias(x, m, t, e)}) {pp_dcl(rest)}"
    raise TypeError(f"not a declaration: {d!r}")


def pp_store(mu) -> str:
    return "[" + ", ".join(f"{x} <- {pp_value(v)}" for x, v in mu) + "]"
