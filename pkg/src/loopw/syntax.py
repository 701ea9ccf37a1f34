"""Abstract syntax of Loop^w: types, values, expressions, commands, declarations.

Every node is an immutable dataclass.  Identifiers are plain ``str``.  Stores and
typing environments are tuples whose rightmost entry is the most recent one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union


class Mode(enum.Enum):
    IN = "in"
    OUT = "out"
    IN_OUT = "in out"

    def __str__(self):
        return self.value


# ---------------------------------------------------------------- types

@dataclass(frozen=True)
class IntT:
    def __str__(self):
        return "int"


@dataclass(frozen=True)
class BoolT:
    def __str__(self):
        return "bool"


@dataclass(frozen=True)
class VoidT:
    # Parsed and representable; no typing or evaluation rule consumes it.
    def __str__(self):
        return "void"


@dataclass(frozen=True)
class ProcT:
    params: tuple[tuple[Mode, "Type"], ...] = ()

    def __str__(self):
        return "proc(" + ", ".join(f"{m} {t}" for m, t in self.params) + ")"


Type = Union[IntT, BoolT, VoidT, ProcT]

INT = IntT()
BOOL = BoolT()
VOID = VoidT()


class Param(NamedTuple):
    name: str
    mode: Mode
    type: Type


# ---------------------------------------------------------------- values

@dataclass(frozen=True)
class IntV:
    n: int


@dataclass(frozen=True)
class BoolV:
    b: bool


@dataclass(frozen=True)
class ProcV:
    params: tuple[Param, ...]
    body: "Dcl"

    def __post_init__(self):
        names = [p.name for p in self.params]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in procedure literal: {names}")

    @property
    def type(self) -> ProcT:
        return ProcT(tuple((p.mode, p.type) for p in self.params))


Value = Union[IntV, BoolV, ProcV]

TRUE = BoolV(True)
FALSE = BoolV(False)


class Uninit:
    """Store marker for a declared-but-unassigned variable (``x : t ; d``)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNINIT"


UNINIT = Uninit()


# ---------------------------------------------------------------- expressions

# Source position (line, column) attached by the parser; ignored by equality.
Pos = Optional[tuple[int, int]]


def _pos():
    return field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Val:
    value: Value
    pos: Pos = _pos()


@dataclass(frozen=True)
class BinExp:
    left: "Exp"
    right: "Exp"
    pos: Pos = _pos()

    symbol = "?"


@dataclass(frozen=True)
class Plus(BinExp):
    symbol = "+"


@dataclass(frozen=True)
class Minus(BinExp):
    symbol = "-"


@dataclass(frozen=True)
class Times(BinExp):
    symbol = "*"


@dataclass(frozen=True)
class Eq(BinExp):
    symbol = "="


@dataclass(frozen=True)
class Gt(BinExp):
    symbol = ">"


@dataclass(frozen=True)
class Lt(BinExp):
    symbol = "<"


@dataclass(frozen=True)
class And(BinExp):
    symbol = "and"


@dataclass(frozen=True)
class Or(BinExp):
    symbol = "or"


@dataclass(frozen=True)
class Not:
    operand: "Exp"
    pos: Pos = _pos()


Exp = Union[Var, Val, Plus, Minus, Times, Eq, Gt, Lt, And, Or, Not]

ARITH_OPS = (Plus, Minus, Times)
COMPARE_OPS = (Eq, Gt, Lt)
BOOL_OPS = (And, Or)
BIN_OPS = ARITH_OPS + COMPARE_OPS + BOOL_OPS


# ---------------------------------------------------------------- commands

@dataclass(frozen=True)
class Null:
    pos: Pos = _pos()


@dataclass(frozen=True)
class Assign:
    target: str
    exp: Exp
    pos: Pos = _pos()


@dataclass(frozen=True)
class Seq:
    first: "Cmd"
    second: "Cmd"
    pos: Pos = _pos()


@dataclass(frozen=True)
class If:
    cond: Exp
    then: "Cmd"
    orelse: "Cmd"
    pos: Pos = _pos()


@dataclass(frozen=True)
class While:
    cond: Exp
    body: "Cmd"
    pos: Pos = _pos()


@dataclass(frozen=True)
class For:
    var: str
    lo: Exp
    hi: Exp
    body: "Cmd"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Declare:
    dcl: "Dcl"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Call:
    callee: Exp
    args: tuple[Exp, ...]
    pos: Pos = _pos()


Cmd = Union[Null, Assign, Seq, If, While, For, Declare, Call]

NULL = Null()


# ---------------------------------------------------------------- declarations

class AliasBinding(NamedTuple):
    name: str
    mode: Mode
    type: Type
    exp: Exp


@dataclass(frozen=True)
class EmptyBlock:
    pos: Pos = _pos()


@dataclass(frozen=True)
class Block:
    cmd: Cmd
    pos: Pos = _pos()


@dataclass(frozen=True)
class UninitVar:
    name: str
    type: Type
    rest: "Dcl"
    pos: Pos = _pos()


@dataclass(frozen=True)
class InitVar:
    name: str
    type: Type
    init: Exp
    rest: "Dcl"
    pos: Pos = _pos()


@dataclass(frozen=True)
class ConstDecl:
    name: str
    type: Type
    init: Exp
    rest: "Dcl"
    pos: Pos = _pos()


@dataclass(frozen=True)
class ProcDecl:
    name: str
    params: tuple[Param, ...]
    body: "Dcl"
    rest: "Dcl"
    pos: Pos = _pos()

    @property
    def type(self) -> ProcT:
        return ProcT(tuple((p.mode, p.type) for p in self.params))


@dataclass(frozen=True)
class Aliases:
    bindings: tuple[AliasBinding, ...]
    rest: "Dcl"
    pos: Pos = _pos()


@dataclass(frozen=True)
class Alias:
    name: str
    mode: Mode
    type: Type
    exp: Exp
    rest: "Dcl"
    pos: Pos = _pos()


Dcl = Union[EmptyBlock, Block, UninitVar, InitVar, ConstDecl, ProcDecl, Aliases, Alias]

EMPTY = EmptyBlock()


# ---------------------------------------------------------------- runtime state

class Binding(NamedTuple):
    name: str
    value: Union[Value, Uninit]


class EnvEntry(NamedTuple):
    name: str
    mode: Mode
    type: Type


Store = tuple[Binding, ...]
Env = tuple[EnvEntry, ...]


class Config(NamedTuple):
    cmd: Cmd
    store: Store = ()


Trace = list[Config]


def store(*pairs) -> Store:
    """Build a store from ``(name, value)`` pairs, oldest first; ints and bools are wrapped."""
    return tuple(Binding(x, wrap(v)) for x, v in pairs)


def env(*triples) -> Env:
    return tuple(EnvEntry(*t) for t in triples)


def wrap(v) -> Value:
    if isinstance(v, bool):
        return BoolV(v)
    if isinstance(v, int):
        return IntV(v)
    return v


def lit(v) -> Val:
    return Val(wrap(v))


def seq(*cmds: Cmd) -> Cmd:
    """Right-nested sequence, the shape the parser produces for ``c1; c2; c3``."""
    if not cmds:
        return NULL
    out = cmds[-1]
    for c in reversed(cmds[:-1]):
        out = Seq(c, out)
    return out
