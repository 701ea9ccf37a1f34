"""Tokenizer and recursive-descent parser for the Ada-like concrete syntax.

Expression precedence, loosest to tightest::

    or  <  and  <  not  <  = < > (non-associative)  <  + - (left)  <  * (left)

A program file holds exactly one declaration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .syntax import (
    BOOL, INT, VOID, Alias, AliasBinding, Aliases, And, Assign, Block, BoolV,
    Call, ConstDecl, Declare, EmptyBlock, Eq, For, Gt, If, InitVar, IntV, Lt, Minus, Mode, Not, Or,
    Null, Param, Plus, ProcDecl, ProcT, ProcV, Seq, Times, UninitVar, Val, Var, While,
)

KEYWORDS = frozenset({
    "null", "if", "then", "else", "end", "while", "loop", "for", "in", "out",
    "declare", "begin", "procedure", "is", "constant", "proc", "int", "bool",
    "true", "false", "not", "and", "or", "void",
})

SYMBOLS = (":=", "..", ":", ";", ",", "(", ")", "[", "]", "{", "}", "=", "<", ">", "+", "-", "*")

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>--[^\n]*)
  | (?P<range>\.[ \t\r\n]*\.)
  | (?P<word>[A-Za-z][A-Za-z0-9_]*)
  | (?P<num>[0-9]+)
  | (?P<sym>:=|[:;,()\[\]{}=<>+\-*])
""", re.VERBOSE)


class Token(NamedTuple):
    kind: str   # ident | num | kw | sym | eof
    text: str
    line: int
    col: int

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else repr(self.text)


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str


class ParseError(Exception):
    def __init__(self, line: int, column: int, message: str, expected=frozenset(), path=None):
        super().__init__(message)
        self.line = line
        self.column = column
        self.message = message
        self.expected = frozenset(expected)
        self.path = path

    def __str__(self):
        where = f"{self.path}:" if self.path else ""
        msg = self.message
        if self.expected:
            msg += " (expected " + ", ".join(sorted(self.expected)) + ")"
        return f"{where}{self.line}:{self.column}: {msg}"


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "word":
            if lexeme in KEYWORDS:
                tokens.append(Token("kw", lexeme, line, col))
            elif "__" in lexeme:
                raise ParseError(line, col, f"identifier {lexeme!r} contains '__', which is reserved")
            else:
                tokens.append(Token("ident", lexeme, line, col))
        elif kind == "num":
            tokens.append(Token("num", lexeme, line, col))
        elif kind == "range":
            tokens.append(Token("sym", "..", line, col))
        elif kind == "sym":
            tokens.append(Token("sym", lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            line_start = pos + lexeme.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


_CMP = {"=": Eq, "<": Lt, ">": Gt}
_ADD = {"+": Plus, "-": Minus}
_BLOCK_END = ("end", "else")


class Parser:
    def __init__(self, text: str, path: Optional[str] = None):
        self.path = path
        try:
            self.toks = tokenize(text)
        except ParseError as err:
            err.path = path
            raise
        self.i = 0

    # -- token plumbing

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, *texts: str) -> bool:
        t = self.tok
        return t.kind in ("kw", "sym") and t.text in texts

    def error(self, message: str, expected=()) -> ParseError:
        t = self.tok
        return ParseError(t.line, t.col, message, expected, self.path)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"unexpected {self.tok.describe()}", {repr(text)})
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def ident(self) -> str:
        t = self.tok
        if t.kind != "ident":
            raise self.error(f"unexpected {t.describe()}", {"identifier"})
        self.i += 1
        return t.text

    def here(self):
        return (self.tok.line, self.tok.col)

    def finish(self):
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.describe()}", {"end of input"})

    # -- types and parameters

    def mode(self) -> Mode:
        if self.accept("in"):
            return Mode.IN_OUT if self.accept("out") else Mode.IN
        if self.accept("out"):
            return Mode.OUT
        return Mode.IN  # Ada default when the mode is omitted

    def type(self):
        if self.accept("int"):
            return INT
        if self.accept("bool"):
            return BOOL
        if self.accept("void"):
            return VOID
        if self.accept("proc"):
            self.expect("(")
            params = []
            if not self.at(")"):
                params.append((self.mode(), self.type()))
                while self.accept(","):
                    params.append((self.mode(), self.type()))
            self.expect(")")
            return ProcT(tuple(params))
        raise self.error(f"unexpected {self.tok.describe()}", {"'int'", "'bool'", "'proc'", "'void'"})

    def params(self) -> tuple[Param, ...]:
        start = self.tok
        self.expect("(")
        params = []
        if not self.at(")"):
            while True:
                x = self.ident()
                self.expect(":")
                m = self.mode()
                params.append(Param(x, m, self.type()))
                if not self.accept(";"):
                    break
        self.expect(")")
        names = [p.name for p in params]
        for k, x in enumerate(names):
            if x in names[:k]:
                raise ParseError(start.line, start.col, f"duplicate parameter name {x!r}", (), self.path)
        return tuple(params)

    # -- expressions

    def exp(self):
        pos = self.here()
        e = self.and_exp()
        while self.accept("or"):
            e = Or(e, self.and_exp(), pos=pos)
        return e

    def and_exp(self):
        pos = self.here()
        e = self.not_exp()
        while self.accept("and"):
            e = And(e, self.not_exp(), pos=pos)
        return e

    def not_exp(self):
        pos = self.here()
        if self.accept("not"):
            return Not(self.not_exp(), pos=pos)
        return self.cmp_exp()

    def cmp_exp(self):
        pos = self.here()
        e = self.add_exp()
        if self.at(*_CMP):
            op = _CMP[self.tok.text]
            self.i += 1
            e = op(e, self.add_exp(), pos=pos)
            if self.at(*_CMP):
                raise self.error("comparison operators do not chain; add parentheses")
        return e

    def add_exp(self):
        pos = self.here()
        e = self.mul_exp()
        while self.at(*_ADD):
            op = _ADD[self.tok.text]
            self.i += 1
            e = op(e, self.mul_exp(), pos=pos)
        return e

    def mul_exp(self):
        pos = self.here()
        e = self.atom()
        while self.accept("*"):
            e = Times(e, self.atom(), pos=pos)
        return e

    def atom(self):
        t = self.tok
        pos = (t.line, t.col)
        if t.kind == "ident":
            self.i += 1
            return Var(t.text, pos=pos)
        if t.kind == "num":
            self.i += 1
            return Val(IntV(int(t.text)), pos=pos)
        if self.accept("true"):
            return Val(BoolV(True), pos=pos)
        if self.accept("false"):
            return Val(BoolV(False), pos=pos)
        if self.accept("("):
            e = self.exp()
            self.expect(")")
            return e
        if self.at("{"):
            return Val(self.constant(), pos=pos)
        if self.accept("proc"):
            params = self.params()
            self.expect("is")
            return Val(ProcV(params, self.dcl()), pos=pos)
        raise self.error(f"unexpected {t.describe()}", {"expression"})

    def constant(self):
        """Constant-algebra literal: ``{k1 + k2}``, ``{not b}``, ``{k1 = k2}`` ..., normalized."""
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return IntV(int(t.text))
        if self.accept("true"):
            return BoolV(True)
        if self.accept("false"):
            return BoolV(False)
        self.expect("{")
        if self.accept("not"):
            b = self.constant()
            result = None if not isinstance(b, BoolV) else BoolV(not b.b)
        else:
            a = self.constant()
            op = self.tok.text
            if not self.at("+", "-", "*", "=", "and", "or"):
                raise self.error(f"unexpected {self.tok.describe()}", {"constant operator"})
            self.i += 1
            b = self.constant()
            result = _fold(op, a, b)
        if result is None:
            raise ParseError(t.line, t.col, "ill-sorted constant expression", (), self.path)
        self.expect("}")
        return result

    # -- commands

    def cmd_list(self):
        """``c1 ; c2 ; ... ; cn ;`` up to (not including) ``end`` or ``else``."""
        items = [self.cmd()]
        self.expect(";")
        while not self.at(*_BLOCK_END):
            items.append(self.cmd())
            self.expect(";")
        return _right_seq(items)

    def cmd_group(self):
        pos = self.here()
        self.expect("(")
        items = [self.cmd()]
        while self.accept(";"):
            items.append(self.cmd())
        self.expect(")")
        return _right_seq(items, pos)

    def cmd(self):
        t = self.tok
        pos = (t.line, t.col)
        if self.accept("null"):
            return Null(pos=pos)
        if self.accept("if"):
            e = self.exp()
            self.expect("then")
            c1 = self.cmd_list()
            self.expect("else")
            c2 = self.cmd_list()
            self.expect("end")
            self.expect("if")
            return If(e, c1, c2, pos=pos)
        if self.accept("while"):
            e = self.exp()
            self.expect("loop")
            body = self.cmd_list()
            self.expect("end")
            self.expect("loop")
            return While(e, body, pos=pos)
        if self.accept("for"):
            x = self.ident()
            self.expect("in")
            lo = self.exp()
            self.expect("..")
            hi = self.exp()
            self.expect("loop")
            body = self.cmd_list()
            self.expect("end")
            self.expect("loop")
            return For(x, lo, hi, body, pos=pos)
        if self.accept("declare"):
            return Declare(self.dcl(), pos=pos)
        if t.kind == "ident" and self.peek().text == ":=" and self.peek().kind == "sym":
            self.i += 2
            return Assign(t.text, self.exp(), pos=pos)
        if self.at("("):
            mark = self.i
            try:
                return self.cmd_group()
            except ParseError as group_err:
                self.i = mark
                try:
                    return self.call()
                except ParseError as call_err:
                    raise max(group_err, call_err, key=lambda err: (err.line, err.column))
        if t.kind in ("ident", "num") or self.at("true", "false", "not", "{", "proc"):
            return self.call()
        raise self.error(f"unexpected {t.describe()}", {"command"})

    def call(self):
        pos = self.here()
        callee = self.exp()
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.exp())
            while self.accept(","):
                args.append(self.exp())
        self.expect(")")
        return Call(callee, tuple(args), pos=pos)

    # -- declarations

    def alias_binding(self) -> AliasBinding:
        x = self.ident()
        self.expect(":")
        m = self.mode()
        ty = self.type()
        self.expect("=")
        return AliasBinding(x, m, ty, self.exp())

    def dcl(self):
        t = self.tok
        pos = (t.line, t.col)
        if self.accept("begin"):
            if self.accept("end"):
                return EmptyBlock(pos=pos)
            c = self.cmd_list()
            self.expect("end")
            return Block(c, pos=pos)
        if self.accept("procedure"):
            p = self.ident()
            params = self.params()
            self.expect("is")
            body = self.dcl()
            self.expect(";")
            return ProcDecl(p, params, body, self.dcl(), pos=pos)
        if self.accept("["):
            bs = []
            if not self.at("]"):
                bs.append(self.alias_binding())
                while self.accept(","):
                    bs.append(self.alias_binding())
            self.expect("]")
            return Aliases(tuple(bs), self.dcl(), pos=pos)
        if self.accept("("):
            x, m, ty, e = self.alias_binding()
            self.expect(")")
            return Alias(x, m, ty, e, self.dcl(), pos=pos)
        if t.kind == "ident":
            x = self.ident()
            self.expect(":")
            if self.accept("constant"):
                ty = self.type()
                self.expect(":=")
                e = self.exp()
                self.expect(";")
                return ConstDecl(x, ty, e, self.dcl(), pos=pos)
            ty = self.type()
            if self.accept(":="):
                e = self.exp()
                self.expect(";")
                return InitVar(x, ty, e, self.dcl(), pos=pos)
            self.expect(";")
            return UninitVar(x, ty, self.dcl(), pos=pos)
        raise self.error(f"unexpected {t.describe()}", {"declaration", "'begin'"})


def _right_seq(items, pos=None):
    out = items[-1]
    for c in reversed(items[:-1]):
        out = Seq(c, out, pos=pos)
    return out


def _fold(op, a, b):
    match op, a, b:
        case "+", IntV(x), IntV(y):
            return IntV(x + y)
        case "-", IntV(x), IntV(y):
            return IntV(x - y)
        case "*", IntV(x), IntV(y):
            return IntV(x * y)
        case "=", IntV(x), IntV(y):
            return BoolV(x == y)
        case "and", BoolV(x), BoolV(y):
            return BoolV(x and y)
        case "or", BoolV(x), BoolV(y):
            return BoolV(x or y)
    return None


def parse_program(source):
    """Parse a whole program.  ``source`` is a :class:`SourceFile` or program text."""
    if isinstance(source, SourceFile):
        p = Parser(source.text, source.path)
    else:
        p = Parser(source)
    d = p.dcl()
    p.finish()
    return d


def parse_exp(text: str):
    p = Parser(text)
    e = p.exp()
    p.finish()
    return e


def parse_cmd(text: str):
    """Parse a command or an unterminated command sequence ``c1; c2``."""
    p = Parser(text)
    items = [p.cmd()]
    while p.accept(";"):
        if p.tok.kind == "eof":
            break
        items.append(p.cmd())
    p.finish()
    return _right_seq(items)


def read_program(path: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_program(SourceFile(path, text))
