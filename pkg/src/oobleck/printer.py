"""Canonical text form for module ASTs.

``parse_module(pretty_print(ast))`` equals ``ast`` structurally (positions
are not compared).  Parentheses are emitted only where precedence requires
them, plus around any ``>`` comparison that would otherwise be exposed at
the top level of the ``<valid; ready>`` trailer, where a bare ``>`` closes
the trailer.
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
    Stmt,
    Unary,
    Var,
    VType,
)

# Precedence levels matching parser._LEVELS; larger binds tighter.
_COND = 0
_BINOP_LEVEL = {
    "||": 1,
    "&&": 2,
    "==": 3, "!=": 3, "<=": 3, ">=": 3, "<": 3, ">": 3,
    "|": 4,
    "^": 5,
    "&": 6,
    "<<": 7, ">>": 7,
    "+": 8, "-": 8,
    "*": 9,
}
_UNARY = 10
_POSTFIX = 11


def format_expr(expr: Expr, guard_gt: bool = False) -> str:
    """Render one expression; guard_gt parenthesizes exposed ">" comparisons."""
    return _expr(expr, 0, guard_gt)


def _paren(text: str) -> str:
    return f"({text})"


def _expr(e: Expr, prec: int, guard: bool) -> str:
    if isinstance(e, IntLit):
        return f"0x{e.value:x}" if e.hex else str(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Index):
        base = _expr(e.base, _POSTFIX, guard)
        return f"{base}[{_expr(e.index, 0, False)}]"
    if isinstance(e, ArrayLit):
        return "[" + ", ".join(_expr(x, 0, False) for x in e.elems) + "]"
    if isinstance(e, Unary):
        wrap = prec > _UNARY
        inner = _expr(e.operand, _UNARY, False if wrap else guard)
        text = f"{e.op}{inner}"
        return _paren(text) if wrap else text
    if isinstance(e, Binary):
        level = _BINOP_LEVEL[e.op]
        wrap = prec > level or (guard and e.op == ">")
        sub_guard = False if wrap else guard
        lhs = _expr(e.lhs, level, sub_guard)
        rhs = _expr(e.rhs, level + 1, sub_guard)
        text = f"{lhs} {e.op} {rhs}"
        return _paren(text) if wrap else text
    if isinstance(e, Cond):
        wrap = prec > _COND
        sub_guard = False if wrap else guard
        cond = _expr(e.cond, _COND + 1, sub_guard)
        then = _expr(e.then, 0, sub_guard)
        els = _expr(e.els, 0, sub_guard)
        text = f"{cond} ? {then} : {els}"
        return _paren(text) if wrap else text
    raise TypeError(f"unknown expression node: {e!r}")


def _type(t: VType) -> str:
    return str(t)


def _init(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return "[" + ", ".join(str(v) for v in value) + "]"
    return str(value)


def _stmt(s: Stmt) -> str:
    if isinstance(s, Let):
        if s.declared_type is not None:
            return f"let {s.name} : {_type(s.declared_type)} = {format_expr(s.value)};"
        return f"let {s.name} = {format_expr(s.value)};"
    if isinstance(s, Assign):
        return f"{s.name} = {format_expr(s.value)};"
    if isinstance(s, AssignIndex):
        return f"{s.name}[{format_expr(s.index)}] = {format_expr(s.value)};"
    if isinstance(s, NextState):
        return f"@{s.name} = {format_expr(s.value)};"
    raise TypeError(f"unknown statement node: {s!r}")


def pretty_print(ast: ModuleAst) -> str:
    """Canonical source text for a module AST."""
    decls = ", ".join(
        f"{d.name} : {_type(d.vtype)} = {_init(d.init)}" for d in ast.state_decls
    )
    ins = ", ".join(f"{p.name} : {_type(p.vtype)}" for p in ast.inputs)
    outs = ", ".join(f"{p.name} : {_type(p.vtype)}" for p in ast.outputs)
    lines = [f"module [{decls}] {ast.name} ({ins}) -> ({outs}) {{"]
    for s in ast.body:
        lines.append(f"    {_stmt(s)}")
    valid = format_expr(ast.valid_expr, guard_gt=True)
    ready = format_expr(ast.ready_expr, guard_gt=True)
    lines.append(f"}} <{valid}; {ready}>")
    return "\n".join(lines) + "\n"
