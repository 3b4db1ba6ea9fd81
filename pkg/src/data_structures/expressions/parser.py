"""
Concrete syntax of expressions.

    nu x. [1](x, nu y. [0](y, x))       # dfa over alphabet a,b
    nu x. [a]([a,b,a](x, [], []))       # lts
    nu x. [2/3,1/3](x, x)               # dist
    [2,1](x, y, z)                      # mon, groups {x,y} and {z}

The bracket payload is interpreted by the configured functor; a nullary
modality may omit its parentheses. ``#`` starts a line comment.
"""
from __future__ import annotations
from typing import Any

from lark import Lark, Token, Transformer, Tree, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError
from lark.tree import Meta

from src.data_structures.expressions.expr import Expr, Modal, Nu, Var, format_modality
from src.data_structures.functors.signature import Functor, Modality
from src.errors import ExprSyntaxError

GRAMMAR = r"""
    start: expr

    ?expr: "nu" NAME "." expr          -> nu
         | NAME                        -> var
         | modality arguments?         -> modal

    modality: "[" (item ("," item)*)? "]"
    arguments: "(" (expr ("," expr)*)? ")"
    ?item: NAME | NUMBER

    NAME: /[A-Za-z_][A-Za-z0-9_']*/
    NUMBER: /[0-9]+(\/[0-9]+)?/
    COMMENT: /#[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_LARK = Lark(GRAMMAR, parser="lalr", propagate_positions=True)


class _ExprBuilder(Transformer[Token, Expr]):
    """Turn a parse tree into an Expr, resolving payloads via the functor."""

    def __init__(self, functor: Functor) -> None:
        super().__init__()
        self._functor = functor

    def start(self, children: list[Expr]) -> Expr:
        return children[0]

    def nu(self, children: list[Any]) -> Expr:
        name, body = children
        return Nu(str(name), body)

    def var(self, children: list[Token]) -> Expr:
        return Var(str(children[0]))

    @v_args(meta=True)
    def modality(self, meta: Meta, children: list[Token]) -> Modality:
        try:
            return self._functor.parse_modality([str(c) for c in children])
        except ExprSyntaxError as error:
            raise ExprSyntaxError(error.message, meta.line, meta.column) from None

    def arguments(self, children: list[Expr]) -> list[Expr]:
        return list(children)

    @v_args(meta=True)
    def modal(self, meta: Meta, children: list[Any]) -> Expr:
        op: Modality = children[0]
        args: list[Expr] = children[1] if len(children) > 1 else []
        if len(args) != op.arity:
            raise ExprSyntaxError(
                f"modality {format_modality(op)} expects {op.arity} "
                f"arguments, got {len(args)}",
                meta.line,
                meta.column,
            )
        return Modal(op, args)


def parse(text: str, functor: Functor) -> Expr:
    """
    Parse expression text for the given functor.

    Raises:
        ExprSyntaxError: See ``parse_located``.
    """
    return parse_located(text, functor)[0]


def parse_located(
    text: str, functor: Functor
) -> tuple[Expr, dict[str, tuple[int, int]]]:
    """
    Parse expression text and record where each subexpression starts.

    Args:
        text: The expression source.
        functor: Interprets the bracket payloads.

    Returns:
        The abstract syntax tree and a map from tree paths (``root``,
        ``root.0``, ...) to 1-based (line, column) positions.

    Raises:
        ExprSyntaxError: On lexical errors, unknown payloads and arity
            mismatches, positioned at the offending token.
    """
    try:
        tree = _LARK.parse(text)
    except UnexpectedEOF:
        lines = text.splitlines() or [""]
        raise ExprSyntaxError(
            "unexpected end of input", len(lines), len(lines[-1]) + 1
        ) from None
    except UnexpectedInput as error:
        raise ExprSyntaxError(
            _describe(error), error.line, error.column
        ) from None
    try:
        result: Expr = _ExprBuilder(functor).transform(tree)
    except VisitError as error:
        if isinstance(error.orig_exc, ExprSyntaxError):
            raise error.orig_exc from None
        raise
    return result, _positions(tree)


def _positions(tree: Tree[Token]) -> dict[str, tuple[int, int]]:
    found: dict[str, tuple[int, int]] = {}
    stack: list[tuple[Any, str]] = [(tree.children[0], "root")]
    while stack:
        node, path = stack.pop()
        if not node.meta.empty:
            found[path] = (node.meta.line, node.meta.column)
        if node.data == "nu":
            stack.append((node.children[1], f"{path}.0"))
        elif node.data == "modal" and len(node.children) > 1:
            for index, child in enumerate(node.children[1].children):
                stack.append((child, f"{path}.{index}"))
    return found


def _describe(error: UnexpectedInput) -> str:
    token = getattr(error, "token", None)
    if token is not None and token.type == "$END":
        return "unexpected end of input"
    if token is not None:
        return f"unexpected token {str(token)!r}"
    char = getattr(error, "char", None)
    if char is not None:
        return f"unexpected character {char!r}"
    return "syntax error"
