"""Free identifiers and capture-avoiding substitution ``d [ v / x ]``.

Binders: ``for x`` binds x in its body; ``x : t ...; d`` binds x in d (not in its
own initializer); ``procedure p (params) is d1; d2`` binds params in d1 and p in
d2; ``proc (params) is d`` binds params in d; ``[x1 = e1, ...] d`` and
``(x = e) d`` bind their names in d only.

Substitution replaces variables occurring in expression position.  Assignment
targets are not expressions and are left alone; they only change under
renaming.
"""

from __future__ import annotations

from .syntax import (
    Alias, AliasBinding, Aliases, Assign, BinExp, Block, BoolV, Call, ConstDecl, Declare,
    EmptyBlock, For, If, InitVar, IntV, Not, Null, Param, ProcDecl, ProcV, Seq, UninitVar,
    Val, Var, While,
)

_EMPTY = frozenset()


class FreshSupply:
    """Emits ``<base>__<n>`` names.  The lexer rejects ``__`` in user identifiers."""

    def __init__(self, pool=()):
        self.counter = 0
        self.used = set(pool)

    def fresh(self, base: str, avoid=()) -> str:
        root = base.split("__", 1)[0]
        while True:
            self.counter += 1
            name = f"{root}__{self.counter}"
            if name not in self.used and name not in avoid:
                self.used.add(name)
                return name

    def copy(self) -> "FreshSupply":
        other = FreshSupply()
        other.counter = self.counter
        other.used = set(self.used)
        return other


# ---------------------------------------------------------------- free identifiers

def free_idents(node) -> frozenset:
    """Identifiers occurring free in an expression, command, declaration or value."""
    cache = node.__dict__
    fv = cache.get("_fv")
    if fv is None:
        fv = _free(node)
        cache["_fv"] = fv
    return fv


def _free(node) -> frozenset:
    match node:
        case Var(x):
            return frozenset((x,))
        case Val(v):
            return free_idents(v)
        case IntV() | BoolV():
            return _EMPTY
        case ProcV(params, body):
            return free_idents(body) - {p.name for p in params}
        case BinExp(a, b):
            return free_idents(a) | free_idents(b)
        case Not(a):
            return free_idents(a)
        case Null() | EmptyBlock():
            return _EMPTY
        case Assign(x, e):
            return free_idents(e) | {x}
        case Seq(c1, c2):
            return free_idents(c1) | free_idents(c2)
        case If(e, c1, c2):
            return free_idents(e) | free_idents(c1) | free_idents(c2)
        case While(e, c):
            return free_idents(e) | free_idents(c)
        case For(x, lo, hi, c):
            return free_idents(lo) | free_idents(hi) | (free_idents(c) - {x})
        case Declare(d) | Block(d):
            return free_idents(d)
        case Call(f, args):
            out = free_idents(f)
            for a in args:
                out |= free_idents(a)
            return out
        case UninitVar(x, _, d):
            return free_idents(d) - {x}
        case InitVar(x, _, e, d) | ConstDecl(x, _, e, d):
            return free_idents(e) | (free_idents(d) - {x})
        case ProcDecl(p, params, d1, d2):
            return (free_idents(d1) - {q.name for q in params}) | (free_idents(d2) - {p})
        case Aliases(bs, d):
            out = free_idents(d) - {b.name for b in bs}
            for b in bs:
                out |= free_idents(b.exp)
            return out
        case Alias(x, _, _, e, d):
            return free_idents(e) | (free_idents(d) - {x})
    raise TypeError(f"not a syntax node: {node!r}")


# ---------------------------------------------------------------- substitution

def subst(node, value, target: str, supply: FreshSupply | None = None):
    """Replace free occurrences of ``target`` by ``Val(value)``, renaming binders that would capture."""
    if supply is None:
        supply = FreshSupply()
    return _walk(node, target, Val(value), free_idents(value), supply)


def rename(node, old: str, new: str):
    """Rename free ``old`` to ``new`` everywhere, assignment targets included.

    ``new`` must not occur in ``node``; no capture check is made beyond that.
    """
    return _walk(node, old, Var(new), frozenset((new,)), FreshSupply())


def _walk(node, x, r, fv, supply):
    if x not in free_idents(node):
        return node
    go = lambda n: _walk(n, x, r, fv, supply)  # noqa: E731
    match node:
        case Var():
            return r
        case Val(v):
            return Val(go(v))
        case ProcV(params, body):
            names, (body,) = _bind([p.name for p in params], [body], x, r, fv, supply)
            return ProcV(_renamed_params(params, names), body)
        case BinExp(a, b):
            return type(node)(go(a), go(b))
        case Not(a):
            return Not(go(a))
        case Assign(y, e):
            if y == x and isinstance(r, Var):
                y = r.name
            return Assign(y, go(e))
        case Seq(c1, c2):
            return Seq(go(c1), go(c2))
        case If(e, c1, c2):
            return If(go(e), go(c1), go(c2))
        case While(e, c):
            return While(go(e), go(c))
        case For(y, lo, hi, c):
            (y,), (c,) = _bind([y], [c], x, r, fv, supply)
            return For(y, go(lo), go(hi), c)
        case Declare(d):
            return Declare(go(d))
        case Call(f, args):
            return Call(go(f), tuple(go(a) for a in args))
        case Block(c):
            return Block(go(c))
        case UninitVar(y, t, d):
            (y,), (d,) = _bind([y], [d], x, r, fv, supply)
            return UninitVar(y, t, d)
        case InitVar(y, t, e, d):
            e = go(e)
            (y,), (d,) = _bind([y], [d], x, r, fv, supply)
            return InitVar(y, t, e, d)
        case ConstDecl(y, t, e, d):
            e = go(e)
            (y,), (d,) = _bind([y], [d], x, r, fv, supply)
            return ConstDecl(y, t, e, d)
        case ProcDecl(p, params, d1, d2):
            names, (d1,) = _bind([q.name for q in params], [d1], x, r, fv, supply)
            (p,), (d2,) = _bind([p], [d2], x, r, fv, supply)
            return ProcDecl(p, _renamed_params(params, names), d1, d2)
        case Aliases(bs, d):
            exps = [go(b.exp) for b in bs]
            names, (d,) = _bind([b.name for b in bs], [d], x, r, fv, supply)
            return Aliases(tuple(AliasBinding(n, b.mode, b.type, e)
                                 for n, b, e in zip(names, bs, exps)), d)
        case Alias(y, m, t, e, d):
            e = go(e)
            (y,), (d,) = _bind([y], [d], x, r, fv, supply)
            return Alias(y, m, t, e, d)
    raise TypeError(f"not a syntax node: {node!r}")


def _bind(names, bodies, x, r, fv, supply):
    """Push the substitution under binders ``names`` scoping over ``bodies``."""
    if x in names or not any(x in free_idents(b) for b in bodies):
        return names, bodies
    names = list(names)
    for i, z in enumerate(names):
        if z in fv:
            avoid = set(fv)
            for b in bodies:
                avoid |= free_idents(b)
            z2 = supply.fresh(z, avoid)
            bodies = [rename(b, z, z2) for b in bodies]
            names[i] = z2
    return names, [_walk(b, x, r, fv, supply) for b in bodies]


def _renamed_params(params, names):
    return tuple(Param(n, p.mode, p.type) for p, n in zip(params, names))


# ---------------------------------------------------------------- alpha-equivalence

def canonical(node):
    """Rename every bound identifier to ``%<k>`` in binding order; free names are kept.

    Two terms are alpha-equivalent iff their canonical forms are equal.
    """
    return _Canon().run(node, {})


def alpha_equiv(a, b) -> bool:
    return canonical(a) == canonical(b)


class _Canon:
    def __init__(self):
        self.k = 0

    def new(self) -> str:
        self.k += 1
        return f"%{self.k}"

    def bind(self, env, names):
        env = dict(env)
        out = []
        for n in names:
            c = self.new()
            env[n] = c
            out.append(c)
        return env, out

    def run(self, node, env):
        go = lambda n, e=env: self.run(n, e)  # noqa: E731
        match node:
            case Var(y):
                return Var(env.get(y, y))
            case Val(v):
                return Val(go(v))
            case IntV() | BoolV() | Null() | EmptyBlock():
                return node
            case ProcV(params, body):
                inner, names = self.bind(env, [p.name for p in params])
                return ProcV(_renamed_params(params, names), go(body, inner))
            case BinExp(a, b):
                return type(node)(go(a), go(b))
            case Not(a):
                return Not(go(a))
            case Assign(y, e):
                return Assign(env.get(y, y), go(e))
            case Seq(c1, c2):
                return Seq(go(c1), go(c2))
            case If(e, c1, c2):
                return If(go(e), go(c1), go(c2))
            case While(e, c):
                return While(go(e), go(c))
            case For(y, lo, hi, c):
                lo, hi = go(lo), go(hi)
                inner, (y,) = self.bind(env, [y])
                return For(y, lo, hi, go(c, inner))
            case Declare(d):
                return Declare(go(d))
            case Call(f, args):
                return Call(go(f), tuple(go(a) for a in args))
            case Block(c):
                return Block(go(c))
            case UninitVar(y, t, d):
                inner, (y,) = self.bind(env, [y])
                return UninitVar(y, t, go(d, inner))
            case InitVar(y, t, e, d):
                e = go(e)
                inner, (y,) = self.bind(env, [y])
                return InitVar(y, t, e, go(d, inner))
            case ConstDecl(y, t, e, d):
                e = go(e)
                inner, (y,) = self.bind(env, [y])
                return ConstDecl(y, t, e, go(d, inner))
            case ProcDecl(p, params, d1, d2):
                inner, names = self.bind(env, [q.name for q in params])
                d1 = go(d1, inner)
                inner2, (p,) = self.bind(env, [p])
                return ProcDecl(p, _renamed_params(params, names), d1, go(d2, inner2))
            case Aliases(bs, d):
                exps = [go(b.exp) for b in bs]
                inner, names = self.bind(env, [b.name for b in bs])
                return Aliases(tuple(AliasBinding(n, b.mode, b.type, e)
                                     for n, b, e in zip(names, bs, exps)), go(d, inner))
            case Alias(y, m, t, e, d):
                e = go(e)
                inner, (y,) = self.bind(env, [y])
                return Alias(y, m, t, e, go(d, inner))
        raise TypeError(f"not a syntax node: {node!r}")
