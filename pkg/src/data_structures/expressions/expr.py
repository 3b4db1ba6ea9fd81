"""
Abstract syntax of the ν-expression language.

    φ ::= z | nu z. φ | L(φ_1, ..., φ_n)

Nodes are immutable and hashable; every node caches its free variables and
its hash, so expressions can be used as states and dictionary keys.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Optional, Union

from src.data_structures.functors.signature import Modality
from src.errors import ArityError, WellFormednessError


class Var:
    """
    Occurrence of a fixpoint variable.

    Attributes:
        name: The variable name.
    """
    __slots__ = ("name", "free_vars", "_hash")
    name: str
    free_vars: frozenset[str]
    _hash: int

    def __init__(self, name: str) -> None:
        self.name = name
        self.free_vars = frozenset((name,))
        self._hash = hash(("var", name))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Var) and self.name == other.name

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Var({self.name!r})"

    def __str__(self) -> str:
        return to_text(self)


class Nu:
    """
    Greatest fixpoint binder ``nu binder. body``.

    Attributes:
        binder: The bound variable.
        body: The scope of the binder.
    """
    __slots__ = ("binder", "body", "free_vars", "_hash")
    binder: str
    body: Expr
    free_vars: frozenset[str]
    _hash: int

    def __init__(self, binder: str, body: Expr) -> None:
        self.binder = binder
        self.body = body
        self.free_vars = body.free_vars - {binder}
        self._hash = hash(("nu", binder, body._hash))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, Nu)
            and self._hash == other._hash
            and self.binder == other.binder
            and self.body == other.body
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Nu({self.binder!r}, {self.body!r})"

    def __str__(self) -> str:
        return to_text(self)


class Modal:
    """
    Modality applied to argument expressions.

    Attributes:
        op: The modality.
        args: One argument per arity position.
    """
    __slots__ = ("op", "args", "free_vars", "_hash")
    op: Modality
    args: tuple[Expr, ...]
    free_vars: frozenset[str]
    _hash: int

    def __init__(self, op: Modality, args: Iterable[Expr] = ()) -> None:
        """
        Initialize a modal node.

        Raises:
            ArityError: If the number of arguments differs from the arity.
        """
        self.op = op
        self.args = tuple(args)
        if len(self.args) != op.arity:
            raise ArityError(
                f"Modality {format_modality(op)} expects {op.arity} "
                f"arguments, got {len(self.args)}."
            )
        self.free_vars = frozenset().union(*(a.free_vars for a in self.args))
        self._hash = hash(("modal", op, tuple(a._hash for a in self.args)))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, Modal)
            and self._hash == other._hash
            and self.op == other.op
            and self.args == other.args
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Modal({format_modality(self.op)}, {list(self.args)!r})"

    def __str__(self) -> str:
        return to_text(self)


Expr = Union[Var, Nu, Modal]


# --- Printing ---

def format_modality(op: Modality) -> str:
    """Render a modality in bracket syntax; Fractions print as ``p/q``."""
    return "[" + ",".join(str(item) for item in op.payload) + "]"


def to_text(e: Expr) -> str:
    """Pretty-print an expression in the concrete syntax."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Nu):
        return f"nu {e.binder}. {to_text(e.body)}"
    head = format_modality(e.op)
    if not e.args:
        return head
    return head + "(" + ", ".join(to_text(a) for a in e.args) + ")"


# --- Traversal ---

def subexpressions(e: Expr) -> Iterator[Expr]:
    """Yield ``e`` and all its subexpressions in preorder."""
    stack = [e]
    while stack:
        current = stack.pop()
        yield current
        if isinstance(current, Nu):
            stack.append(current.body)
        elif isinstance(current, Modal):
            stack.extend(reversed(current.args))


def modalities(e: Expr) -> Iterator[Modality]:
    """Yield the modality of every modal node."""
    for node in subexpressions(e):
        if isinstance(node, Modal):
            yield node.op


def names(e: Expr) -> set[str]:
    """Return every variable name occurring in ``e``, bound or free."""
    result = set()
    for node in subexpressions(e):
        if isinstance(node, Var):
            result.add(node.name)
        elif isinstance(node, Nu):
            result.add(node.binder)
    return result


def size(e: Expr) -> int:
    """Return the number of nodes."""
    return sum(1 for _ in subexpressions(e))


# --- Alpha Equivalence ---

def de_bruijn(e: Expr, scope: tuple[str, ...] = ()) -> Any:
    """
    Return the nameless form of ``e`` as nested tuples.

    Bound occurrences become ``("bound", i)`` with i counting binders from
    the innermost one; free occurrences keep their name.
    """
    if isinstance(e, Var):
        for depth, binder in enumerate(reversed(scope)):
            if binder == e.name:
                return ("bound", depth)
        return ("free", e.name)
    if isinstance(e, Nu):
        return ("nu", de_bruijn(e.body, scope + (e.binder,)))
    return ("modal", e.op, tuple(de_bruijn(a, scope) for a in e.args))


def alpha_eq(e1: Expr, e2: Expr) -> bool:
    """Check equality up to renaming of bound variables."""
    return bool(de_bruijn(e1) == de_bruijn(e2))


def canonical(e: Expr, prefix: str = "v") -> Expr:
    """
    Return the α-canonical representative of ``e``.

    Every binder is renamed after its nesting depth (``v1`` outermost), so
    α-equivalent expressions have equal canonical forms.
    """
    while any(_is_level_name(name, prefix) for name in e.free_vars):
        prefix += "v"
    return _rename_levels(e, prefix, {}, 1)


def _is_level_name(name: str, prefix: str) -> bool:
    return name.startswith(prefix) and name[len(prefix):].isdigit()


def _rename_levels(e: Expr, prefix: str, env: dict[str, str], depth: int) -> Expr:
    if isinstance(e, Var):
        return Var(env.get(e.name, e.name))
    if isinstance(e, Nu):
        level = f"{prefix}{depth}"
        body = _rename_levels(e.body, prefix, {**env, e.binder: level}, depth + 1)
        return Nu(level, body)
    return Modal(e.op, (_rename_levels(a, prefix, env, depth) for a in e.args))


# --- Substitution ---

def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Return ``base`` or the first ``base_n`` not in ``avoid``."""
    taken = set(avoid)
    if base not in taken:
        return base
    n = 1
    while f"{base}_{n}" in taken:
        n += 1
    return f"{base}_{n}"


def substitute(e: Expr, var: str, replacement: Expr) -> Expr:
    """
    Capture-avoiding substitution ``e[replacement/var]``.

    A binder that would capture a free variable of ``replacement`` is renamed
    before descending.
    """
    if var not in e.free_vars:
        return e
    if isinstance(e, Var):
        return replacement
    if isinstance(e, Modal):
        return Modal(e.op, (substitute(a, var, replacement) for a in e.args))
    binder, body = e.binder, e.body
    if binder in replacement.free_vars:
        renamed = fresh_name(
            binder, replacement.free_vars | body.free_vars | names(body) | {var}
        )
        body = substitute(body, binder, Var(renamed))
        binder = renamed
    return Nu(binder, substitute(body, var, replacement))


def unfold(e: Nu) -> Expr:
    """Return the one-step unfolding ``body[nu z. body / z]``."""
    return substitute(e.body, e.binder, e)


# --- Well-Formedness ---

@dataclass(frozen=True)
class WellFormedExpr:
    """
    Expression together with its closedness and guardedness flags.

    Attributes:
        expr: The checked expression.
        closed: No free variables.
        guarded: Every bound occurrence sits below a modality below its binder.
        violation: Description of the first offending occurrence, if any.
        path: Tree path of that occurrence, such as ``root.0.1``.
    """
    expr: Expr
    closed: bool
    guarded: bool
    violation: Optional[str] = None
    path: Optional[str] = None

    @property
    def is_wellformed(self) -> bool:
        """Membership in the set of closed and guarded expressions."""
        return self.closed and self.guarded

    def require(self) -> Expr:
        """
        Return the expression if it is closed and guarded.

        Raises:
            WellFormednessError: Naming the first violating occurrence.
        """
        if not self.is_wellformed:
            raise WellFormednessError(self.violation or "ill-formed expression")
        return self.expr


def check_wellformed(e: Expr) -> WellFormedExpr:
    """Compute the closed and guarded flags of ``e``."""
    closed, guarded = True, True
    violations: list[tuple[str, str]] = []
    # (node, path, binder -> passed a modality since binding)
    stack: list[tuple[Expr, str, dict[str, bool]]] = [(e, "root", {})]
    while stack:
        node, path, env = stack.pop()
        if isinstance(node, Var):
            if node.name not in env:
                closed = False
                violations.append((f"free variable {node.name} at {path}", path))
            elif not env[node.name]:
                guarded = False
                violations.append((f"unguarded variable {node.name} at {path}", path))
        elif isinstance(node, Nu):
            stack.append((node.body, f"{path}.0", {**env, node.binder: False}))
        else:
            inner = {name: True for name in env}
            for index in reversed(range(len(node.args))):
                stack.append((node.args[index], f"{path}.{index}", inner))
    if not violations:
        return WellFormedExpr(e, closed, guarded)
    violation, where = violations[0]
    return WellFormedExpr(e, closed, guarded, violation, where)


def require_wellformed(e: Expr) -> Expr:
    """
    Return ``e`` if it is closed and guarded.

    Raises:
        WellFormednessError: Otherwise.
    """
    return check_wellformed(e).require()
