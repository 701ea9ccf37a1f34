"""The one-step relation read as a set of rules, for auditing determinism.

Every rule is tried independently of the others: its conclusion shape is
matched against the configuration and its premises are established by
recursively enumerating the derivations of the premise configuration.  The
result is the list of all derivations, each a rule path plus the resulting
configuration.  Unlike :mod:`loopw.stepper`, nothing here relies on the order
in which cases are tried.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .binding import FreshSupply, subst
from .evaluator import EvalError, eval_exp
from .stepper import Rule, StuckError, compat_zip, step_cmd, store_update, unchain_head
from .syntax import (
    EMPTY, INT, NULL, UNINIT, Alias, Aliases, Assign, Binding, Block, BoolV, Call, Config, ConstDecl,
    Declare, EmptyBlock, For, If, InitVar, IntV, Mode, Null, ProcDecl, ProcV, Seq, UninitVar, Val,
    Var, While,
)


@dataclass(frozen=True)
class Derivation:
    rules: tuple[Rule, ...]
    node: object
    store: tuple


def _value(store, e):
    try:
        return eval_exp(store, e)
    except EvalError:
        return None


def _int(store, e):
    v = _value(store, e)
    return v if type(v) is IntV else None


def _wrap(rule, inner: Iterator[Derivation], build: Callable) -> Iterator[Derivation]:
    for d in inner:
        node, store = build(d)
        yield Derivation((rule,) + d.rules, node, store)


# ---------------------------------------------------------------- commands

def cmd_derivations(c, store, supply: FreshSupply) -> list[Derivation]:
    out: list[Derivation] = []
    for rule in _CMD_RULES:
        out.extend(rule(c, store, supply.copy()))
    return out


def _e_null(c, mu, supply):
    if isinstance(c, Seq) and isinstance(c.first, Null):
        yield Derivation((Rule.E_Null,), c.second, mu)


def _e_seq(c, mu, supply):
    if isinstance(c, Seq):
        yield from _wrap(Rule.E_Seq, cmd_derivations(c.first, mu, supply),
                         lambda d: (Seq(d.node, c.second), d.store))


def _e_assign(c, mu, supply):
    if isinstance(c, Assign):
        v = _value(mu, c.exp)
        if v is not None and any(b.name == c.target for b in mu):
            yield Derivation((Rule.E_Assign,), NULL, store_update(mu, c.target, v))


def _e_if(c, mu, supply):
    if isinstance(c, If):
        v = _value(mu, c.cond)
        if v == BoolV(True):
            yield Derivation((Rule.E_IfThenElse1,), c.then, mu)
        if v == BoolV(False):
            yield Derivation((Rule.E_IfThenElse2,), c.orelse, mu)


def _e_while(c, mu, supply):
    if isinstance(c, While):
        v = _value(mu, c.cond)
        if v == BoolV(False):
            yield Derivation((Rule.E_While1,), NULL, mu)
        if v == BoolV(True):
            yield Derivation((Rule.E_While2,), Seq(c.body, c), mu)


def _e_decl(c, mu, supply):
    if isinstance(c, Declare):
        if isinstance(c.dcl, EmptyBlock):
            yield Derivation((Rule.E_Decl1,), NULL, mu)
        yield from _wrap(Rule.E_Decl2, dcl_derivations(c.dcl, mu, supply),
                         lambda d: (Declare(d.node), d.store))


def _e_for(c, mu, supply):
    if isinstance(c, For):
        k, k2 = _int(mu, c.lo), _int(mu, c.hi)
        if k is None or k2 is None:
            return
        if k.n > k2.n:
            yield Derivation((Rule.E_For1,), NULL, mu)
        if k.n <= k2.n:
            first = Declare(ConstDecl(c.var, INT, Val(k), Block(c.body)))
            yield Derivation((Rule.E_For2,),
                             Seq(first, For(c.var, Val(IntV(k.n + 1)), Val(k2), c.body)), mu)


def _e_call(c, mu, supply):
    if isinstance(c, Call):
        p = _value(mu, c.callee)
        if type(p) is ProcV and len(p.params) == len(c.args):
            yield Derivation((Rule.E_ProcCall,), Declare(Aliases(compat_zip(p.params, c.args), p.body)), mu)


_CMD_RULES = (_e_null, _e_seq, _e_assign, _e_if, _e_while, _e_decl, _e_for, _e_call)


# ---------------------------------------------------------------- declarations

def dcl_derivations(d, store, supply: FreshSupply) -> list[Derivation]:
    out: list[Derivation] = []
    for rule in _DCL_RULES:
        out.extend(rule(d, store, supply.copy()))
    return out


def _pushed(rule, x, inner, rebuild):
    """Wrap premise derivations taken with ``x`` pushed, popping it back off."""
    for d in inner:
        if not d.store or d.store[-1].name != x:
            continue
        yield Derivation((rule,) + d.rules, rebuild(d, d.store[-1].value), d.store[:-1])


def _e_block(d, mu, supply):
    if isinstance(d, Block):
        if isinstance(d.cmd, Null):
            yield Derivation((Rule.E_Block1,), EMPTY, mu)
        yield from _wrap(Rule.E_Block2, cmd_derivations(d.cmd, mu, supply),
                         lambda s: (Block(s.node), s.store))


def _e_initvar(d, mu, supply):
    if isinstance(d, InitVar):
        if isinstance(d.rest, EmptyBlock):
            yield Derivation((Rule.E_InitVar1,), EMPTY, mu)
        v = _value(mu, d.init)
        if v is not None:
            inner = dcl_derivations(d.rest, mu + (Binding(d.name, v),), supply)
            yield from _pushed(Rule.E_InitVar2, d.name, inner,
                               lambda s, v2: InitVar(d.name, d.type, Val(v2), s.node))
    if isinstance(d, UninitVar):
        if isinstance(d.rest, EmptyBlock):
            yield Derivation((Rule.E_InitVar1,), EMPTY, mu)
        inner = dcl_derivations(d.rest, mu + (Binding(d.name, UNINIT),), supply)
        yield from _pushed(Rule.E_InitVar2, d.name, inner,
                           lambda s, v2: (UninitVar(d.name, d.type, s.node) if v2 is UNINIT
                                          else InitVar(d.name, d.type, Val(v2), s.node)))


def _e_const(d, mu, supply):
    if isinstance(d, ConstDecl):
        if isinstance(d.rest, EmptyBlock):
            yield Derivation((Rule.E_Const1,), EMPTY, mu)
        v = _value(mu, d.init)
        if v is not None:
            inner = dcl_derivations(subst(d.rest, v, d.name, supply), mu, supply)
            yield from _wrap(Rule.E_Const2, inner,
                             lambda s: (ConstDecl(d.name, d.type, Val(v), s.node), s.store))


def _e_proc(d, mu, supply):
    if isinstance(d, ProcDecl):
        yield Derivation((Rule.E_Proc,), subst(d.rest, ProcV(d.params, d.body), d.name, supply), mu)


def _e_alias(d, mu, supply):
    if not isinstance(d, Alias):
        return
    if isinstance(d.rest, EmptyBlock):
        yield Derivation((Rule.E_Alias1,), EMPTY, mu)
    if d.mode == Mode.IN:
        v = _value(mu, d.exp)
        if v is not None:
            inner = dcl_derivations(subst(d.rest, v, d.name, supply), mu, supply)
            yield from _wrap(Rule.E_Alias2, inner, lambda s: (s.node, s.store))
    if d.mode != Mode.IN and isinstance(d.exp, Var):
        y = d.exp.name
        if not any(b.name == y for b in mu):
            return
        v = next(b.value for b in reversed(mu) if b.name == y)
        inner = dcl_derivations(d.rest, mu + (Binding(d.name, v),), supply)
        for s in inner:
            if not s.store or s.store[-1].name != d.name:
                continue
            try:
                mu2 = store_update(s.store[:-1], y, s.store[-1].value)
            except StuckError:
                continue
            yield Derivation((Rule.E_Alias3,) + s.rules,
                             Alias(d.name, d.mode, d.type, d.exp, s.node), mu2)


def _e_aliases(d, mu, supply):
    if not isinstance(d, Aliases):
        return
    if not d.bindings:
        yield Derivation((Rule.E_Aliases1,), d.rest, mu)
        return
    if isinstance(d.rest, EmptyBlock):
        yield Derivation((Rule.E_Aliases2,), EMPTY, mu)
    head = unchain_head(d.bindings, d.rest, supply)
    yield from _wrap(Rule.E_Aliases3, dcl_derivations(head, mu, supply), lambda s: (s.node, s.store))


_DCL_RULES = (_e_block, _e_initvar, _e_const, _e_proc, _e_alias, _e_aliases)


# ---------------------------------------------------------------- audit

@dataclass
class AuditFinding:
    step: int
    config: Config
    derivations: list[Derivation]
    kind: str   # "none", "ambiguous" or "disagrees" (with the stepper)


@dataclass
class AuditReport:
    steps: int
    findings: list[AuditFinding]
    converged: bool

    @property
    def ok(self) -> bool:
        return not self.findings


def audit(cfg: Config, budget: int = 100_000) -> AuditReport:
    """Walk a run, enumerating the applicable derivations at every non-terminal configuration.

    Each configuration must have exactly one derivation, and it must agree
    with what :func:`loopw.stepper.step_cmd` computes.  The walk follows the
    stepper, so one ambiguity does not hide later ones.
    """
    supply = FreshSupply()
    findings = []
    for i in range(budget):
        if isinstance(cfg.cmd, Null):
            return AuditReport(i, findings, True)
        ds = cmd_derivations(cfg.cmd, cfg.store, supply)
        try:
            s = step_cmd(cfg.cmd, cfg.store, supply)
        except StuckError:
            s = None
        if len(ds) != 1:
            findings.append(AuditFinding(i, cfg, ds, "ambiguous" if ds else "none"))
        elif s is None or (s.rules, s.node, s.store) != (ds[0].rules, ds[0].node, ds[0].store):
            findings.append(AuditFinding(i, cfg, ds, "disagrees"))
        if s is None:
            return AuditReport(i, findings, False)
        cfg = Config(s.node, s.store)
    return AuditReport(budget, findings, isinstance(cfg.cmd, Null))
