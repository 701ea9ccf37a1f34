"""Type system: lookup, expression typing, argument matching, declarations, commands.

Every check is syntax directed.  A failure raises :class:`TypeCheckError` naming
the innermost rule whose premise could not be established.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Optional

from .pretty import pp_exp, pp_type
from .syntax import (
    BOOL, INT, Alias, Aliases, And, Assign, BinExp, Block, BoolV, Call, ConstDecl, Declare,
    EmptyBlock, Env, EnvEntry, Eq, For, Gt, If, InitVar, IntV, Lt, Minus, Mode, Not, Null, Or,
    Plus, ProcDecl, ProcT, ProcV, Seq, Times, UninitVar, Val, Var, While,
)


class TypeCheckError(Exception):
    def __init__(self, rule: str, message: str, pos=None):
        super().__init__(message)
        self.rule = rule
        self.message = message
        self.pos = pos

    def __str__(self):
        where = f"{self.pos[0]}:{self.pos[1]}: " if self.pos else ""
        return f"{where}[{self.rule}] {self.message}"


@contextmanager
def _located(node):
    """Attach the source position of ``node`` to errors raised beneath it that lack one."""
    try:
        yield
    except TypeCheckError as err:
        if err.pos is None:
            err.pos = getattr(node, "pos", None)
        raise


def lookup(env: Env, x: str) -> tuple[Mode, object]:
    for entry in reversed(env):
        if entry.name == x:
            return entry.mode, entry.type
    raise TypeCheckError("Lookup", f"identifier {x} is not declared")


def lookup_anon(env: Env, delta) -> bool:
    mode, ty = delta
    return any(entry.mode == mode and entry.type == ty for entry in env)


_INT_OPS = {Plus: "Plus", Minus: "Minus", Times: "Times"}
_CMP_OPS = {Gt: "Greater", Lt: "Less"}
_BOOL_OPS = {And: "And", Or: "Or"}


def type_exp(env: Env, e):
    with _located(e):
        match e:
            case Var(x):
                m, t = lookup(env, x)
                if m == Mode.OUT:
                    raise TypeCheckError("Var", f"{x} has mode out and cannot be read (m ≠ out)")
                return t
            case Val(IntV()):
                return INT
            case Val(BoolV()):
                return BOOL
            case Val(ProcV()):
                raise TypeCheckError("Val", "no typing rule covers a procedure literal in an expression")
            case Not(a):
                _expect(env, a, BOOL, "Not")
                return BOOL
            case Eq(a, b):
                t = type_exp(env, a)
                u = type_exp(env, b)
                if t != u:
                    raise TypeCheckError(
                        "Equal", f"operands of = have types {pp_type(t)} and {pp_type(u)}")
                return BOOL
            case BinExp(a, b) if type(e) in _INT_OPS:
                rule = _INT_OPS[type(e)]
                _expect(env, a, INT, rule)
                _expect(env, b, INT, rule)
                return INT
            case BinExp(a, b) if type(e) in _CMP_OPS:
                rule = _CMP_OPS[type(e)]
                _expect(env, a, INT, rule)
                _expect(env, b, INT, rule)
                return BOOL
            case BinExp(a, b) if type(e) in _BOOL_OPS:
                rule = _BOOL_OPS[type(e)]
                _expect(env, a, BOOL, rule)
                _expect(env, b, BOOL, rule)
                return BOOL
    raise TypeError(f"not an expression: {e!r}")


def _expect(env, e, want, rule):
    got = type_exp(env, e)
    if got != want:
        raise TypeCheckError(
            rule, f"{pp_exp(e)} has type {pp_type(got)}, expected {pp_type(want)}",
            getattr(e, "pos", None))


def match_arg(env: Env, e, m: Mode, t) -> None:
    with _located(e):
        if m == Mode.IN:
            got = type_exp(env, e)
            if got != t:
                raise TypeCheckError(
                    "Match1", f"argument {pp_exp(e)} has type {pp_type(got)}, expected {pp_type(t)}")
            return
        rule = "Match2" if m == Mode.OUT else "Match3"
        if not isinstance(e, Var):
            raise TypeCheckError(rule, f"argument {pp_exp(e)} for an {m} parameter must be an identifier")
        dm, dt = lookup(env, e.name)
        if m == Mode.OUT and dm == Mode.IN:
            raise TypeCheckError(rule, f"{e.name} has mode in and cannot be passed as out (m ≠ in)")
        if m == Mode.IN_OUT and dm != Mode.IN_OUT:
            raise TypeCheckError(rule, f"{e.name} has mode {dm}; an in out parameter needs an in out identifier")
        if dt != t:
            raise TypeCheckError(rule, f"{e.name} has type {pp_type(dt)}, expected {pp_type(t)}")


def match_args(env: Env, args, params) -> None:
    if len(args) != len(params):
        raise TypeCheckError("MatchList", f"expected {len(params)} arguments, got {len(args)}")
    for i, (a, (m, t)) in enumerate(zip(args, params), 1):
        try:
            match_arg(env, a, m, t)
        except TypeCheckError as err:
            err.message = f"argument {i}: {err.message}"
            raise


def type_dcl(env: Env, d) -> None:
    with _located(d):
        match d:
            case EmptyBlock():
                return
            case Block(c):
                type_cmd(env, c)
            case UninitVar(x, t, rest):
                type_dcl(env + (EnvEntry(x, Mode.IN_OUT, t),), rest)
            case InitVar(x, t, e, rest):
                _expect(env, e, t, "InitVar")
                type_dcl(env + (EnvEntry(x, Mode.IN_OUT, t),), rest)
            case ConstDecl(x, t, e, rest):
                _expect(env, e, t, "Constant")
                type_dcl(env + (EnvEntry(x, Mode.IN, t),), rest)
            case ProcDecl(p, params, body, rest):
                names = [q.name for q in params]
                if len(set(names)) != len(names):
                    raise TypeCheckError("Proc", f"duplicate parameter names in procedure {p}")
                type_dcl(env + tuple(EnvEntry(*q) for q in params), body)
                type_dcl(env + (EnvEntry(p, Mode.IN, d.type),), rest)
            case Aliases() | Alias():
                raise TypeCheckError("Declaration typing", "alias binders are runtime forms with no typing rule")
            case _:
                raise TypeError(f"not a declaration: {d!r}")


def type_cmd(env: Env, c) -> None:
    with _located(c):
        match c:
            case Null():
                return
            case Seq(c1, c2):
                type_cmd(env, c1)
                type_cmd(env, c2)
            case Assign(x, e):
                m, t = lookup(env, x)
                if m == Mode.IN:
                    raise TypeCheckError("Assign", f"{x} has mode in and cannot be assigned (m ≠ in)")
                _expect(env, e, t, "Assign")
            case If(e, c1, c2):
                _expect(env, e, BOOL, "IfThenElse")
                type_cmd(env, c1)
                type_cmd(env, c2)
            case While(e, body):
                _expect(env, e, BOOL, "While")
                type_cmd(env, body)
            case For(x, lo, hi, body):
                _expect(env, lo, INT, "For")
                _expect(env, hi, INT, "For")
                type_cmd(env + (EnvEntry(x, Mode.IN, INT),), body)
            case Declare(d):
                type_dcl(env, d)
            case Call(f, args):
                ft = type_exp(env, f)
                if not isinstance(ft, ProcT):
                    raise TypeCheckError("ProcCall", f"{pp_exp(f)} has type {pp_type(ft)}, not a procedure type")
                match_args(env, args, ft.params)
            case _:
                raise TypeError(f"not a command: {c!r}")


def check_program(d, env: Optional[Env] = None) -> None:
    type_dcl(env or (), d)
