"""Lexer and recursive-descent parser for .visc sources.

Grammar (one module per file):

    module    := "module" "[" state_decls? "]" NAME "(" params? ")"
                 "->" "(" params? ")" "{" stmt* "}" "<" expr ";" expr ">"
    state     := NAME ":" type "=" init
    param     := NAME ":" type
    type      := "int" | "bool" | "[" INT "]"
    init      := ["-"] INT | "true" | "false" | "[" INT ("," INT)* "]"
    stmt      := "let" NAME [":" type] "=" expr ";"
               | "@" NAME "=" expr ";"
               | NAME "=" expr ";"
               | NAME "[" expr "]" "=" expr ";"

Expression precedence, loosest to tightest (bitwise ops bind tighter than
comparisons, as in Rust, so ``x & 1 == 0`` reads ``(x & 1) == 0``):

    ?:   ||   &&   == != < <= > >=   |   ^   &   << >>   + -   *   unary   a[i]

Comments run from ``//`` to end of line.  The ``<valid; ready>`` trailer is
mandatory; at its top level a bare ``>`` would be read as the trailer's
closing delimiter, so ``>`` comparisons there must be parenthesized
(``<(a > b); true>``), the same rule C++ applies inside template arguments.
Division and modulo are rejected at parse time.
"""

from __future__ import annotations

from .syntax import (
    ArrayLit,
    Assign,
    AssignIndex,
    Binary,
    BoolLit,
    Cond,
    Expr,
    Index,
    IntLit,
    Let,
    ModuleAst,
    NextState,
    Param,
    ParseError,
    Pos,
    StateDecl,
    Stmt,
    Unary,
    Var,
    VType,
    array_type,
    BOOL,
    INT,
)

KEYWORDS = frozenset({"module", "let", "int", "bool", "true", "false"})

# Multi-character operators first so maximal munch wins.
_PUNCT = [
    "->", "<<", ">>", "==", "!=", "<=", ">=", "&&", "||",
    "[", "]", "(", ")", "{", "}", "<", ">", ",", ";", ":", "=", "@", "?",
    "&", "|", "^", "+", "-", "*", "~", "!",
]


class Token:
    __slots__ = ("kind", "text", "value", "pos")

    def __init__(self, kind: str, text: str, pos: Pos, value=None):
        self.kind = kind  # "ident" | "int" | "punct" | "eof"
        self.text = text
        self.value = value
        self.pos = pos

    def __repr__(self) -> str:
        return f"Token({self.kind!r}, {self.text!r}, {self.pos})"


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    line = 1
    line_start = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\n":
            line += 1
            i += 1
            line_start = i
            continue
        if c in " \t\r":
            i += 1
            continue
        pos = Pos(line, i - line_start + 1)
        if c == "/" and source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if c == "/":
            raise ParseError("division is not supported", pos)
        if c == "%":
            raise ParseError("modulo is not supported", pos)
        if c.isdigit():
            j = i
            if source.startswith("0x", i) or source.startswith("0X", i):
                j = i + 2
                while j < n and source[j] in "0123456789abcdefABCDEF":
                    j += 1
                if j == i + 2:
                    raise ParseError("malformed hex literal", pos)
                tok = Token("int", source[i:j], pos, int(source[i:j], 16))
            else:
                while j < n and source[j].isdigit():
                    j += 1
                tok = Token("int", source[i:j], pos, int(source[i:j], 10))
            tokens.append(tok)
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("ident", source[i:j], pos))
            i = j
            continue
        for p in _PUNCT:
            if source.startswith(p, i):
                tokens.append(Token("punct", p, pos))
                i += len(p)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", pos)
    tokens.append(Token("eof", "", Pos(line, n - line_start + 1)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0
        # Inside the <valid; ready> trailer an unparenthesized ">" closes the
        # trailer instead of comparing; parentheses re-enable it.
        self.block_gt = False

    # -- token helpers ----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_punct(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == text

    def expect_punct(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "punct" or tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or tok.kind!r}", tok.pos)
        return self.next()

    def accept_punct(self, text: str) -> bool:
        if self.at_punct(text):
            self.next()
            return True
        return False

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind != "ident" or tok.text != word:
            raise ParseError(f"expected {word!r}, found {tok.text or tok.kind!r}", tok.pos)
        return self.next()

    def expect_name(self) -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise ParseError(f"expected identifier, found {tok.text or tok.kind!r}", tok.pos)
        if tok.text in KEYWORDS:
            raise ParseError(f"{tok.text!r} is a keyword", tok.pos)
        return self.next()

    # -- module structure --------------------------------------------------

    def parse_module(self) -> ModuleAst:
        start = self.expect_keyword("module")
        self.expect_punct("[")
        state_decls: list[StateDecl] = []
        if not self.at_punct("]"):
            state_decls.append(self.parse_state_decl())
            while self.accept_punct(","):
                state_decls.append(self.parse_state_decl())
        self.expect_punct("]")
        name = self.expect_name()
        self.expect_punct("(")
        inputs = self.parse_params()
        self.expect_punct(")")
        self.expect_punct("->")
        self.expect_punct("(")
        outputs = self.parse_params()
        self.expect_punct(")")
        self.expect_punct("{")
        body: list[Stmt] = []
        while not self.at_punct("}"):
            body.append(self.parse_stmt())
        self.expect_punct("}")
        tok = self.peek()
        if not self.at_punct("<"):
            raise ParseError(
                "missing '<valid; ready>' trailer after module body", tok.pos
            )
        self.next()
        self.block_gt = True
        valid_expr = self.parse_expr()
        self.expect_punct(";")
        ready_expr = self.parse_expr()
        self.block_gt = False
        self.expect_punct(">")
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing input after module: {tok.text!r}", tok.pos)
        return ModuleAst(
            name=name.text,
            state_decls=tuple(state_decls),
            inputs=tuple(inputs),
            outputs=tuple(outputs),
            body=tuple(body),
            valid_expr=valid_expr,
            ready_expr=ready_expr,
            pos=start.pos,
        )

    def parse_state_decl(self) -> StateDecl:
        name = self.expect_name()
        self.expect_punct(":")
        vtype = self.parse_type()
        self.expect_punct("=")
        init = self.parse_init(vtype)
        return StateDecl(name.text, vtype, init, pos=name.pos)

    def parse_params(self) -> list[Param]:
        params: list[Param] = []
        if self.at_punct(")"):
            return params
        while True:
            name = self.expect_name()
            self.expect_punct(":")
            vtype = self.parse_type()
            params.append(Param(name.text, vtype, pos=name.pos))
            if not self.accept_punct(","):
                return params

    def parse_type(self) -> VType:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "int":
            self.next()
            return INT
        if tok.kind == "ident" and tok.text == "bool":
            self.next()
            return BOOL
        if self.at_punct("["):
            self.next()
            size = self.peek()
            if size.kind != "int":
                raise ParseError("array length must be an integer literal", size.pos)
            self.next()
            if size.value < 1:
                raise ParseError("array length must be >= 1", size.pos)
            self.expect_punct("]")
            return array_type(size.value)
        raise ParseError(f"expected a type, found {tok.text or tok.kind!r}", tok.pos)

    def parse_init(self, vtype: VType):
        tok = self.peek()
        if vtype.kind == "bool":
            if tok.kind == "ident" and tok.text in ("true", "false"):
                self.next()
                return tok.text == "true"
            raise ParseError("bool register initializer must be true or false", tok.pos)
        if vtype.kind == "array":
            self.expect_punct("[")
            elems = [self.parse_int_init()]
            while self.accept_punct(","):
                elems.append(self.parse_int_init())
            self.expect_punct("]")
            if len(elems) != vtype.length:
                raise ParseError(
                    f"array initializer has {len(elems)} elements, expected {vtype.length}",
                    tok.pos,
                )
            return tuple(elems)
        return self.parse_int_init()

    def parse_int_init(self) -> int:
        negate = self.accept_punct("-")
        tok = self.peek()
        if tok.kind != "int":
            raise ParseError("register initializer must be an integer literal", tok.pos)
        self.next()
        value = -tok.value if negate else tok.value
        return value & ((1 << 64) - 1)

    # -- statements ---------------------------------------------------------

    def parse_stmt(self) -> Stmt:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "let":
            self.next()
            name = self.expect_name()
            declared: VType | None = None
            if self.accept_punct(":"):
                declared = self.parse_type()
            self.expect_punct("=")
            value = self.parse_expr()
            self.expect_punct(";")
            return Let(name.text, declared, value, pos=tok.pos)
        if self.at_punct("@"):
            self.next()
            name = self.expect_name()
            self.expect_punct("=")
            value = self.parse_expr()
            self.expect_punct(";")
            return NextState(name.text, value, pos=tok.pos)
        name = self.expect_name()
        if self.at_punct("["):
            self.next()
            index = self.parse_expr()
            self.expect_punct("]")
            self.expect_punct("=")
            value = self.parse_expr()
            self.expect_punct(";")
            return AssignIndex(name.text, index, value, pos=name.pos)
        self.expect_punct("=")
        value = self.parse_expr()
        self.expect_punct(";")
        return Assign(name.text, value, pos=name.pos)

    # -- expressions ----------------------------------------------------------

    def parse_expr(self) -> Expr:
        return self.parse_cond()

    def parse_cond(self) -> Expr:
        cond = self.parse_binary(0)
        if self.at_punct("?"):
            tok = self.next()
            then = self.parse_expr()
            self.expect_punct(":")
            els = self.parse_cond()
            return Cond(cond, then, els, pos=tok.pos)
        return cond

    _LEVELS = [
        ("||",),
        ("&&",),
        ("==", "!=", "<=", ">=", "<", ">"),
        ("|",),
        ("^",),
        ("&",),
        ("<<", ">>"),
        ("+", "-"),
        ("*",),
    ]

    def parse_binary(self, level: int) -> Expr:
        if level == len(self._LEVELS):
            return self.parse_unary()
        ops = self._LEVELS[level]
        lhs = self.parse_binary(level + 1)
        while True:
            tok = self.peek()
            if tok.kind != "punct" or tok.text not in ops:
                return lhs
            if tok.text == ">" and self.block_gt:
                return lhs
            self.next()
            rhs = self.parse_binary(level + 1)
            lhs = Binary(tok.text, lhs, rhs, pos=tok.pos)

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "punct" and tok.text in ("~", "!", "-"):
            self.next()
            operand = self.parse_unary()
            return Unary(tok.text, operand, pos=tok.pos)
        return self.parse_postfix()

    def parse_postfix(self) -> Expr:
        expr = self.parse_primary()
        while self.at_punct("["):
            tok = self.next()
            index = self.parse_bracketed_expr()
            self.expect_punct("]")
            expr = Index(expr, index, pos=tok.pos)
        return expr

    def parse_bracketed_expr(self) -> Expr:
        saved = self.block_gt
        self.block_gt = False
        expr = self.parse_expr()
        self.block_gt = saved
        return expr

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            return IntLit(tok.value, hex=tok.text.lower().startswith("0x"), pos=tok.pos)
        if tok.kind == "ident" and tok.text in ("true", "false"):
            self.next()
            return BoolLit(tok.text == "true", pos=tok.pos)
        if tok.kind == "ident":
            if tok.text in KEYWORDS:
                raise ParseError(f"{tok.text!r} is a keyword", tok.pos)
            self.next()
            return Var(tok.text, pos=tok.pos)
        if self.at_punct("("):
            self.next()
            inner = self.parse_bracketed_expr()
            self.expect_punct(")")
            return inner
        if self.at_punct("["):
            self.next()
            elems = [self.parse_bracketed_expr()]
            while self.accept_punct(","):
                elems.append(self.parse_bracketed_expr())
            self.expect_punct("]")
            return ArrayLit(tuple(elems), pos=tok.pos)
        raise ParseError(f"expected an expression, found {tok.text or tok.kind!r}", tok.pos)


def parse_module(source: str) -> ModuleAst:
    """Parse a single-module .visc source into an AST.

    Raises ParseError (with line:col) on malformed input; never exits.
    """
    return _Parser(tokenize(source)).parse_module()


def parse_file(path) -> ModuleAst:
    with open(path, "r", encoding="utf-8") as f:
        return parse_module(f.read())
