"""AST and shared diagnostics for the Viscosity accelerator design language.

A module is a single straight-line block with three interface sections:
state registers (``[name : type = init, ...]``), inputs, and outputs, plus a
mandatory ``<valid; ready>`` trailer whose expressions see the whole body
scope.  Source positions ride along on every node but are excluded from
structural equality, so two parses of equivalent text compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


NO_POS = Pos(0, 0)


class SourceError(Exception):
    """Error tied to a location in a .visc source file."""

    def __init__(self, message: str, pos: Pos):
        super().__init__(f"{pos}: {message}")
        self.message = message
        self.pos = pos


class ParseError(SourceError):
    pass


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    pos: Pos

    def __str__(self) -> str:
        return f"{self.pos}: {self.kind}: {self.message}"


# Diagnostic kinds reported by the typechecker.
UNDEFINED_VARIABLE = "UndefinedVariable"
TYPE_MISMATCH = "TypeMismatch"
ASSIGN_TO_INPUT = "AssignToInput"
ASSIGN_TO_STATE = "AssignToState"
NEXT_STATE_ON_NON_REGISTER = "NextStateOnNonRegister"
UNASSIGNED_OUTPUT = "UnassignedOutput"
OUTPUT_REASSIGNED = "OutputReassigned"
DUPLICATE_NAME = "DuplicateName"
CONST_INDEX_OUT_OF_RANGE = "ConstIndexOutOfRange"


class TypecheckError(Exception):
    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = tuple(diagnostics)


# ---------------------------------------------------------------------------
# Types

@dataclass(frozen=True)
class VType:
    """int (64-bit word), bool, or a fixed-length array of ints."""

    kind: str  # "int" | "bool" | "array"
    length: int | None = None

    def __str__(self) -> str:
        if self.kind == "array":
            return f"[{self.length}]"
        return self.kind


INT = VType("int")
BOOL = VType("bool")


def array_type(length: int) -> VType:
    if length < 1:
        raise ValueError("array length must be >= 1")
    return VType("array", length)


# ---------------------------------------------------------------------------
# Expressions

@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class IntLit(Expr):
    value: int
    hex: bool = False
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Var(Expr):
    name: str
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Index(Expr):
    base: Expr
    index: Expr
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # "~" | "!" | "-"
    operand: Expr
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    lhs: Expr
    rhs: Expr
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Cond(Expr):
    cond: Expr
    then: Expr
    els: Expr
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class ArrayLit(Expr):
    elems: tuple[Expr, ...]
    pos: Pos = field(default=NO_POS, compare=False)


# Binary operators over 64-bit words (unsigned, wrapping).
WORD_BINOPS = frozenset({"&", "|", "^", "+", "-", "*", "<<", ">>"})
# Unsigned comparisons: word x word -> bool.
CMP_BINOPS = frozenset({"<", "<=", ">", ">="})
# Equality on like types (int or bool).
EQ_BINOPS = frozenset({"==", "!="})
# Short-circuit-free boolean connectives.
BOOL_BINOPS = frozenset({"&&", "||"})

ALL_BINOPS = WORD_BINOPS | CMP_BINOPS | EQ_BINOPS | BOOL_BINOPS


# ---------------------------------------------------------------------------
# Statements

@dataclass(frozen=True)
class Stmt:
    pass


@dataclass(frozen=True)
class Let(Stmt):
    name: str
    declared_type: VType | None
    value: Expr
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Assign(Stmt):
    name: str
    value: Expr
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class AssignIndex(Stmt):
    name: str
    index: Expr
    value: Expr
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class NextState(Stmt):
    """``@reg = expr;`` -- sets the register's value for the next cycle."""

    name: str
    value: Expr
    pos: Pos = field(default=NO_POS, compare=False)


# ---------------------------------------------------------------------------
# Module

@dataclass(frozen=True)
class StateDecl:
    name: str
    vtype: VType
    init: int | bool | tuple[int, ...]
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class Param:
    name: str
    vtype: VType
    pos: Pos = field(default=NO_POS, compare=False)


@dataclass(frozen=True)
class ModuleAst:
    name: str
    state_decls: tuple[StateDecl, ...]
    inputs: tuple[Param, ...]
    outputs: tuple[Param, ...]
    body: tuple[Stmt, ...]
    valid_expr: Expr
    ready_expr: Expr
    pos: Pos = field(default=NO_POS, compare=False)
