"""Random well-typed, terminating programs for property tests and audits.

Programs are built against a typing scope, so every draw type checks.  The
generator keeps runs finite and free of stuck states:

* ``for`` loops have a small literal upper bound, and ``while`` loops count
  down a variable their body cannot assign;
* procedure bodies never mention procedure *variables*, so no call can reach
  itself, and a procedure whose body touches outer variables is never stored
  in a variable that outlives those variables;
* a variable declared without initializer is assigned at the start of its
  block before anything reads it.

Nesting depth (see :func:`nesting_depth`) is bounded by ``GenConfig.max_depth``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .binding import free_idents
from .syntax import (
    BOOL, EMPTY, INT, NULL, And, Assign, Block, BoolV, Call, ConstDecl, Declare, EmptyBlock, Eq,
    For, Gt, If, InitVar, IntV, Lt, Minus, Mode, Not, Or, Param, Plus, ProcDecl, ProcT, Seq,
    Times, UninitVar, Val, Var, While,
)


@dataclass
class GenConfig:
    max_depth: int = 5
    max_exp_depth: int = 2
    max_params: int = 3
    max_loop: int = 3
    var_names: tuple[str, ...] = ("X", "Y", "Z", "W", "A", "B")
    proc_names: tuple[str, ...] = ("P", "Q", "F")


@dataclass(frozen=True)
class Entry:
    name: str
    mode: Mode
    type: object
    kind: str = "var"          # "var", "const", "proc" (declared procedure), "param", "index"
    unset: bool = False        # declared without a value and not yet assigned
    pure: bool = True          # for procedures: body mentions no outer variable
    frozen: bool = False       # loop counter: readable, never assigned by the body


@dataclass
class _Scope:
    entries: tuple[Entry, ...] = ()
    in_proc: bool = False      # generating a procedure body
    outer: frozenset = field(default_factory=frozenset)  # names visible from outside the body

    def push(self, *es: Entry) -> "_Scope":
        return _Scope(self.entries + es, self.in_proc, self.outer)

    def visible(self) -> list[tuple[int, Entry]]:
        seen, out = set(), []
        for i in range(len(self.entries) - 1, -1, -1):
            e = self.entries[i]
            if e.name not in seen:
                seen.add(e.name)
                out.append((i, e))
        return out[::-1]


class ProgramGenerator:
    def __init__(self, seed: int = 0, config: GenConfig | None = None):
        self.rng = random.Random(seed)
        self.cfg = config or GenConfig()

    # ------------------------------------------------------------ scope queries

    def _readable(self, sc: _Scope, ty):
        return [e for _, e in sc.visible()
                if e.type == ty and e.mode != Mode.OUT and not e.unset and self._usable(sc, e)]

    def _writable(self, sc: _Scope, ty, allow_unset=True):
        return [e for _, e in sc.visible()
                if e.type == ty and e.mode != Mode.IN and not e.frozen and self._usable(sc, e)
                and (allow_unset or not e.unset)]

    def _usable(self, sc: _Scope, e: Entry) -> bool:
        # inside a procedure body, procedure variables from outside are off limits
        return not (sc.in_proc and isinstance(e.type, ProcT) and e.kind == "var" and e.name in sc.outer)

    # ------------------------------------------------------------ expressions

    def exp(self, sc: _Scope, ty, depth=None):
        depth = self.cfg.max_exp_depth if depth is None else depth
        r = self.rng
        leaves = self._readable(sc, ty)
        if depth <= 0 or r.random() < 0.35:
            if leaves and r.random() < 0.6:
                return Var(r.choice(leaves).name)
            if ty == INT:
                return Val(IntV(r.randint(0, 5)))
            return Val(BoolV(r.random() < 0.5))
        d = depth - 1
        if ty == INT:
            op = r.choice((Plus, Plus, Minus, Times))
            return op(self.exp(sc, INT, d), self.exp(sc, INT, d))
        match r.randrange(4):
            case 0:
                return r.choice((Gt, Lt, Eq))(self.exp(sc, INT, d), self.exp(sc, INT, d))
            case 1:
                return r.choice((And, Or))(self.exp(sc, BOOL, d), self.exp(sc, BOOL, d))
            case 2:
                return Not(self.exp(sc, BOOL, d))
        return self.exp(sc, BOOL, 0)

    # ------------------------------------------------------------ commands

    def cmds(self, sc: _Scope, depth: int, n=None):
        n = n if n is not None else self.rng.randint(1, 3)
        out = []
        for _ in range(n):
            c, sc = self.cmd(sc, depth)
            out.append(c)
        return _seq(out)

    def cmd(self, sc: _Scope, depth: int):
        """A command and the scope after it (assignments may mark variables set)."""
        r = self.rng
        choices = ["assign", "assign", "call", "call", "null"]
        if depth > 0:
            choices += ["if", "for", "declare", "declare"] + ["while"] * (depth >= 2)
        match r.choice(choices):
            case "assign":
                ty = r.choice((INT, INT, BOOL))
                targets = self._writable(sc, ty)
                if targets:
                    t = r.choice(targets)
                    return Assign(t.name, self.exp(sc, ty)), _set(sc, t.name)
            case "call":
                c = self.call(sc) if r.random() < 0.8 else self.proc_assign(sc)
                if c is not None:
                    return c, sc
            case "if":
                return If(self.exp(sc, BOOL), self.cmds(sc, depth - 1), self.cmds(sc, depth - 1)), sc
            case "for":
                x = r.choice(self.cfg.var_names)
                lo = self.exp(sc, INT, 1)
                hi = Val(IntV(r.randint(0, self.cfg.max_loop)))
                body = self.cmds(sc.push(Entry(x, Mode.IN, INT, "index")), depth - 1)
                return For(x, lo, hi, body), sc
            case "while":
                return self.counted_while(sc, depth), sc
            case "declare":
                return Declare(self.dcl(sc, depth - 1)), sc
        return NULL, sc

    def counted_while(self, sc: _Scope, depth: int):
        c = self.rng.choice(self.cfg.var_names)
        k = self.rng.randint(0, self.cfg.max_loop)
        inner = sc.push(Entry(c, Mode.IN_OUT, INT, frozen=True))
        body = self.cmds(inner, max(depth - 2, 0))
        loop = While(Gt(Var(c), Val(IntV(0))), Seq(body, Assign(c, Minus(Var(c), Val(IntV(1))))))
        return Declare(InitVar(c, INT, Val(IntV(k)), Block(loop)))

    def call(self, sc: _Scope):
        procs = [e for _, e in sc.visible()
                 if isinstance(e.type, ProcT) and e.mode != Mode.OUT and not e.unset
                 and self._usable(sc, e)]
        self.rng.shuffle(procs)
        for p in procs:
            args = []
            for m, t in p.type.params:
                if m == Mode.IN:
                    args.append(self.exp(sc, t, 1))
                    continue
                pool = self._writable(sc, t, allow_unset=(m == Mode.OUT))
                if m == Mode.IN_OUT:
                    pool = [e for e in pool if e.mode == Mode.IN_OUT]
                if not pool:
                    break
                args.append(Var(self.rng.choice(pool).name))
            else:
                return Call(Var(p.name), tuple(args))
        return None

    # ------------------------------------------------------------ declarations

    def dcl(self, sc: _Scope, depth: int, budget: int | None = None):
        r = self.rng
        budget = r.randint(0, 3) if budget is None else budget
        if budget == 0:
            if r.random() < 0.1:
                return EMPTY
            return self.block(sc, max(depth, 0))
        kind = r.choice(("var", "var", "uninit", "const", "proc", "proc", "procvar"))
        ty = r.choice((INT, INT, BOOL))
        x = r.choice(self.cfg.var_names)
        match kind:
            case "var":
                e = self.exp(sc, ty)
                return InitVar(x, ty, e, self.dcl(sc.push(Entry(x, Mode.IN_OUT, ty)), depth, budget - 1))
            case "uninit":
                rest = self.dcl(sc.push(Entry(x, Mode.IN_OUT, ty, unset=True)), depth, budget - 1)
                return UninitVar(x, ty, rest)
            case "const":
                e = self.exp(sc, ty)
                return ConstDecl(x, ty, e, self.dcl(sc.push(Entry(x, Mode.IN, ty, "const")), depth, budget - 1))
            case "proc":
                return self.proc_decl(sc, depth, budget)
        return self.proc_var(sc, depth, budget)

    def block(self, sc: _Scope, depth: int):
        first = []
        for _, e in sc.visible():
            if e.unset:
                first.append(Assign(e.name, self.exp(sc, e.type)))
                sc = _set(sc, e.name)
        body = self.cmds(sc, depth)
        return Block(_seq(first + [body]))

    def proc_decl(self, sc: _Scope, depth: int, budget: int):
        r = self.rng
        p = r.choice(self.cfg.proc_names)
        names = r.sample(("A", "B", "C", "D", "S", "R"), r.randint(1, self.cfg.max_params))
        params = tuple(Param(n, r.choice((Mode.IN, Mode.IN, Mode.OUT, Mode.IN_OUT)), r.choice((INT, INT, BOOL)))
                       for n in names)
        inner = _Scope(sc.entries, True, frozenset(e.name for _, e in sc.visible()))
        inner = inner.push(*(Entry(q.name, q.mode, q.type, "param") for q in params))
        body = self.dcl(inner, depth - 1)
        outer_vars = {e.name for _, e in sc.visible() if not isinstance(e.type, ProcT) and e.kind != "const"}
        pure = not ((free_idents(body) - set(names)) & outer_vars)
        ty = ProcT(tuple((q.mode, q.type) for q in params))
        rest = self.dcl(sc.push(Entry(p, Mode.IN, ty, "proc", pure=pure)), depth, budget - 1)
        return ProcDecl(p, params, body, rest)

    def proc_var(self, sc: _Scope, depth: int, budget: int):
        """``V : proc(...) := P`` for a visible procedure ``P`` that may be stored."""
        vis = sc.visible()
        cands = [e for _, e in vis if e.kind == "proc"]
        x = self.rng.choice(self.cfg.var_names)
        if not cands:
            return self.dcl(sc, depth, budget - 1)
        p = self.rng.choice(cands)
        entry = Entry(x, Mode.IN_OUT, p.type)
        rest_scope = sc.push(entry)
        return InitVar(x, p.type, Var(p.name), self.dcl(rest_scope, depth, budget - 1))

    def proc_assign(self, sc: _Scope):
        """``V := P`` where ``P`` cannot outlive the variables its body uses."""
        vis = sc.visible()
        pairs = [(v, p) for i, v in vis if isinstance(v.type, ProcT) and v.kind == "var"
                 and self._usable(sc, v)
                 for j, p in vis if p.kind == "proc" and p.type == v.type and (p.pure or i > j)]
        if pairs:
            v, p = self.rng.choice(pairs)
            return Assign(v.name, Var(p.name))
        return None

    # ------------------------------------------------------------ entry point

    def program(self):
        # a declaration at depth d nests at most d + 1 deep
        return self.dcl(_Scope(), self.cfg.max_depth - 1, self.rng.randint(1, 4))


def _set(sc: _Scope, name: str) -> _Scope:
    for i in range(len(sc.entries) - 1, -1, -1):
        e = sc.entries[i]
        if e.name == name:
            if not e.unset:
                return sc
            fixed = Entry(e.name, e.mode, e.type, e.kind, False, e.pure, e.frozen)
            return _Scope(sc.entries[:i] + (fixed,) + sc.entries[i + 1:], sc.in_proc, sc.outer)
    return sc


def _seq(cmds):
    out = cmds[-1]
    for c in reversed(cmds[:-1]):
        out = Seq(c, out)
    return out


def nesting_depth(node) -> int:
    """Nesting of blocks and compound commands; a flat ``begin c; end`` has depth 1."""
    match node:
        case Block(c):
            return 1 + nesting_depth(c)
        case Seq(a, b):
            return max(nesting_depth(a), nesting_depth(b))
        case If(_, a, b):
            return 1 + max(nesting_depth(a), nesting_depth(b))
        case While(_, c) | For(_, _, _, c):
            return 1 + nesting_depth(c)
        case Declare(d):
            return nesting_depth(d)
        case InitVar(_, _, _, d) | UninitVar(_, _, d) | ConstDecl(_, _, _, d):
            return nesting_depth(d)
        case ProcDecl(_, _, body, d):
            return max(nesting_depth(body), nesting_depth(d))
        case EmptyBlock():
            return 0
    return 0


def generate(seed: int, config: GenConfig | None = None):
    return ProgramGenerator(seed, config).program()
