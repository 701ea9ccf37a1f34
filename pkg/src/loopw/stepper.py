"""One-step evaluation of commands and declarations, with explicit aliasing.

``step_cmd`` and ``step_dcl`` return a :class:`Step` or ``None`` when the
configuration is terminal (``null`` / ``begin end``).  When no rule applies they
raise :class:`StuckError`.

Local variables live in the store only while the continuation that declared
them takes a step: the binding is pushed, the continuation steps, and the
binding is popped back into the residual declaration (``x : t := v'; d'``).
"""

from __future__ import annotations

import enum
from typing import NamedTuple, Optional, Union

from .binding import FreshSupply, free_idents, rename, subst
from .evaluator import EvalError, eval_exp
from .pretty import pp_cmd, pp_dcl
from .syntax import (
    EMPTY, INT, NULL, UNINIT, Alias, AliasBinding, Aliases, Assign, Binding, Block, BoolV,
    Call, Config, ConstDecl, Declare, EmptyBlock, For, If, InitVar, IntV, Mode, Null, ProcDecl,
    ProcV, Seq, Store, UninitVar, Val, Var, While,
)


class Rule(str, enum.Enum):
    E_Null = "E_Null"
    E_Seq = "E_Seq"
    E_Assign = "E_Assign"
    E_IfThenElse1 = "E_IfThenElse1"
    E_IfThenElse2 = "E_IfThenElse2"
    E_While1 = "E_While1"
    E_While2 = "E_While2"
    E_Decl1 = "E_Decl1"
    E_Decl2 = "E_Decl2"
    E_For1 = "E_For1"
    E_For2 = "E_For2"
    E_ProcCall = "E_ProcCall"
    E_Block1 = "E_Block1"
    E_Block2 = "E_Block2"
    E_InitVar1 = "E_InitVar1"
    E_InitVar2 = "E_InitVar2"
    E_Const1 = "E_Const1"
    E_Const2 = "E_Const2"
    E_Proc = "E_Proc"
    E_Alias1 = "E_Alias1"
    E_Alias2 = "E_Alias2"
    E_Alias3 = "E_Alias3"
    E_Aliases1 = "E_Aliases1"
    E_Aliases2 = "E_Aliases2"
    E_Aliases3 = "E_Aliases3"
    Update1 = "Update1"
    Update2 = "Update2"

    def __str__(self):
        return self.value


class Pop(NamedTuple):
    """A binding discarded at scope exit, with the declare-nesting depth it left from."""
    name: str
    value: object
    depth: int


class Step(NamedTuple):
    node: object             # the rewritten command or declaration
    store: Store
    rules: tuple[Rule, ...]  # derivation path, outermost rule first
    pops: tuple[Pop, ...] = ()


class StuckError(Exception):
    def __init__(self, rule: str, reason: Union[str, EvalError]):
        super().__init__(f"{rule}: {reason}")
        self.rule = rule
        self.reason = reason
        self.node = None
        self.store = None


# ---------------------------------------------------------------- store and compatibility

def store_update(store: Store, x: str, v) -> Store:
    """Replace the value of the rightmost binding of ``x``."""
    for i in range(len(store) - 1, -1, -1):
        if store[i].name == x:
            return store[:i] + (Binding(x, v),) + store[i + 1:]
    raise StuckError("Update", f"{x} is not bound in the store")


def copy_in(store: Store, y: str):
    """The current binding of an aliased identifier, uninitialized marker included.

    Copying a value in is not a read: an ``out`` argument may still be unassigned.
    """
    for b in reversed(store):
        if b.name == y:
            return b.value
    raise StuckError(Rule.E_Alias3, f"{y} is not bound in the store")


def compat_zip(params, args) -> tuple[AliasBinding, ...]:
    if len(params) != len(args):
        raise StuckError("E_Compat", f"{len(params)} parameters but {len(args)} arguments")
    return tuple(AliasBinding(p.name, p.mode, p.type, e) for p, e in zip(params, args))


# ---------------------------------------------------------------- helpers

def _eval(rule, store, e):
    try:
        return eval_exp(store, e)
    except EvalError as err:
        raise StuckError(rule, err) from None


def _observe(store, e):
    """Best-effort value of ``e`` for a pop event; None when it does not evaluate."""
    try:
        return eval_exp(store, e)
    except EvalError:
        return None


def _pop_top(rule, x, store):
    """Split the pushed binding of ``x`` back off a stepped store."""
    if not store or store[-1].name != x:
        raise StuckError(rule, f"store lost its top binding for {x}")
    return store[:-1], store[-1].value


def _pop(x, v, depth):
    return () if v is None or v is UNINIT else (Pop(x, v, depth),)


def _inner(rule, store, inner_step):
    if inner_step is None:
        raise StuckError(rule, "premise configuration is terminal")
    return inner_step


# ---------------------------------------------------------------- commands

def step_cmd(c, store: Store, supply: Optional[FreshSupply] = None, depth: int = 0) -> Optional[Step]:
    if supply is None:
        supply = FreshSupply()
    match c:
        case Null():
            return None
        case Seq(Null(), c2):
            return Step(c2, store, (Rule.E_Null,))
        case Seq(c1, c2):
            s = _inner(Rule.E_Seq, store, step_cmd(c1, store, supply, depth))
            return Step(Seq(s.node, c2), s.store, (Rule.E_Seq,) + s.rules, s.pops)
        case Assign(x, e):
            v = _eval(Rule.E_Assign, store, e)
            try:
                mu = store_update(store, x, v)
            except StuckError as err:
                raise StuckError(Rule.E_Assign, err.reason) from None
            return Step(NULL, mu, (Rule.E_Assign,))
        case If(e, c1, c2):
            match _eval("E_IfThenElse", store, e):
                case BoolV(True):
                    return Step(c1, store, (Rule.E_IfThenElse1,))
                case BoolV(False):
                    return Step(c2, store, (Rule.E_IfThenElse2,))
            raise StuckError("E_IfThenElse", "condition is not a boolean")
        case While(e, body):
            match _eval("E_While", store, e):
                case BoolV(False):
                    return Step(NULL, store, (Rule.E_While1,))
                case BoolV(True):
                    return Step(Seq(body, c), store, (Rule.E_While2,))
            raise StuckError("E_While", "condition is not a boolean")
        case Declare(EmptyBlock()):
            return Step(NULL, store, (Rule.E_Decl1,))
        case Declare(d):
            s = _inner(Rule.E_Decl2, store, step_dcl(d, store, supply, depth))
            return Step(Declare(s.node), s.store, (Rule.E_Decl2,) + s.rules, s.pops)
        case For(x, lo, hi, body):
            k = _eval("E_For", store, lo)
            k2 = _eval("E_For", store, hi)
            if type(k) is not IntV or type(k2) is not IntV:
                raise StuckError("E_For", "loop bounds are not integers")
            if k.n > k2.n:
                return Step(NULL, store, (Rule.E_For1,))
            unrolled = Declare(ConstDecl(x, INT, Val(k), Block(body)))
            return Step(Seq(unrolled, For(x, Val(IntV(k.n + 1)), Val(k2), body)),
                        store, (Rule.E_For2,))
        case Call(f, args):
            p = _eval(Rule.E_ProcCall, store, f)
            if type(p) is not ProcV:
                raise StuckError(Rule.E_ProcCall, "callee is not a procedure value")
            try:
                bindings = compat_zip(p.params, args)
            except StuckError as err:
                raise StuckError(Rule.E_ProcCall, err.reason) from None
            return Step(Declare(Aliases(bindings, p.body)), store, (Rule.E_ProcCall,))
    raise TypeError(f"not a command: {c!r}")


# ---------------------------------------------------------------- declarations

def step_dcl(d, store: Store, supply: Optional[FreshSupply] = None, depth: int = 0) -> Optional[Step]:
    if supply is None:
        supply = FreshSupply()
    match d:
        case EmptyBlock():
            return None

        case Block(Null()):
            return Step(EMPTY, store, (Rule.E_Block1,))
        case Block(c):
            s = _inner(Rule.E_Block2, store, step_cmd(c, store, supply, depth + 1))
            return Step(Block(s.node), s.store, (Rule.E_Block2,) + s.rules, s.pops)

        case InitVar(x, _, e, EmptyBlock()):
            return Step(EMPTY, store, (Rule.E_InitVar1,), _pop(x, _observe(store, e), depth))
        case InitVar(x, t, e, rest):
            v = _eval(Rule.E_InitVar2, store, e)
            s = _inner(Rule.E_InitVar2, store, step_dcl(rest, store + (Binding(x, v),), supply, depth))
            mu, v2 = _pop_top(Rule.E_InitVar2, x, s.store)
            return Step(InitVar(x, t, Val(v2), s.node), mu, (Rule.E_InitVar2,) + s.rules, s.pops)

        # Uninitialized variables have no rule of their own; they follow the
        # InitVar push/step/pop discipline with an UNINIT marker in the store.
        case UninitVar(x, _, EmptyBlock()):
            return Step(EMPTY, store, (Rule.E_InitVar1,))
        case UninitVar(x, t, rest):
            s = _inner(Rule.E_InitVar2, store, step_dcl(rest, store + (Binding(x, UNINIT),), supply, depth))
            mu, v2 = _pop_top(Rule.E_InitVar2, x, s.store)
            node = UninitVar(x, t, s.node) if v2 is UNINIT else InitVar(x, t, Val(v2), s.node)
            return Step(node, mu, (Rule.E_InitVar2,) + s.rules, s.pops)

        case ConstDecl(x, _, e, EmptyBlock()):
            return Step(EMPTY, store, (Rule.E_Const1,), _pop(x, _observe(store, e), depth))
        case ConstDecl(x, t, e, rest):
            v = _eval(Rule.E_Const2, store, e)
            s = _inner(Rule.E_Const2, store, step_dcl(subst(rest, v, x, supply), store, supply, depth))
            return Step(ConstDecl(x, t, Val(v), s.node), s.store, (Rule.E_Const2,) + s.rules, s.pops)

        case ProcDecl(p, params, body, rest):
            return Step(subst(rest, ProcV(params, body), p, supply), store, (Rule.E_Proc,))

        case Alias(x, _, _, e, EmptyBlock()):
            return Step(EMPTY, store, (Rule.E_Alias1,), _pop(x, _observe(store, e), depth))
        case Alias(x, Mode.IN, _, e, rest):
            v = _eval(Rule.E_Alias2, store, e)
            s = _inner(Rule.E_Alias2, store, step_dcl(subst(rest, v, x, supply), store, supply, depth))
            return Step(s.node, s.store, (Rule.E_Alias2,) + s.rules, s.pops)
        case Alias(x, m, t, Var(y) as e, rest):
            v = copy_in(store, y)
            s = _inner(Rule.E_Alias3, store, step_dcl(rest, store + (Binding(x, v),), supply, depth))
            mu, v2 = _pop_top(Rule.E_Alias3, x, s.store)
            try:
                mu = store_update(mu, y, v2)
            except StuckError as err:
                raise StuckError(Rule.E_Alias3, err.reason) from None
            return Step(Alias(x, m, t, e, s.node), mu, (Rule.E_Alias3,) + s.rules, s.pops)
        case Alias(x, m, _, e, _):
            raise StuckError(Rule.E_Alias3, f"{m} alias {x} is bound to a non-identifier")

        case Aliases((), rest):
            return Step(rest, store, (Rule.E_Aliases1,))
        case Aliases(bs, EmptyBlock()):
            pops = tuple(p for b in bs for p in _pop(b.name, _observe(store, b.exp), depth))
            return Step(EMPTY, store, (Rule.E_Aliases2,), pops)
        case Aliases(bs, rest):
            head = unchain_head(bs, rest, supply)
            s = _inner(Rule.E_Aliases3, store, step_dcl(head, store, supply, depth))
            return Step(s.node, s.store, (Rule.E_Aliases3,) + s.rules, s.pops)
    raise TypeError(f"not a declaration: {d!r}")


def unchain_head(bs, rest, supply: FreshSupply):
    """``[x = e, tail] d``  ->  ``(x = e) [tail] d``.

    The nested form scopes ``x`` over the tail's argument expressions, which the
    flat list does not; when ``x`` occurs free there it is renamed apart first.
    """
    (x, m, t, e), tail = bs[0], bs[1:]
    if any(x in free_idents(b.exp) for b in tail):
        avoid = free_idents(Aliases(bs, rest)) | {b.name for b in bs}
        x2 = supply.fresh(x, avoid)
        rest = rename(rest, x, x2)
        x = x2
    return Alias(x, m, t, e, Aliases(tail, rest))


def step(cfg: Config, supply: Optional[FreshSupply] = None) -> Optional[Step]:
    """One step of a configuration; ``None`` when the command is ``null``."""
    try:
        return step_cmd(cfg.cmd, cfg.store, supply)
    except StuckError as err:
        err.node, err.store = cfg.cmd, cfg.store
        raise


def describe(node) -> str:
    if isinstance(node, (Null, Assign, Seq, If, While, For, Declare, Call)):
        return pp_cmd(node)
    return pp_dcl(node)
