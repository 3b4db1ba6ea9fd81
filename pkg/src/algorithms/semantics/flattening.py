from __future__ import annotations
from dataclasses import dataclass
from typing import Iterable, Optional
import logging

from src.data_structures.carriers.carrier import State, StateSet
from src.data_structures.coalgebras.coalgebra import Coalgebra
from src.data_structures.expressions.expr import (
    Expr,
    Modal,
    Nu,
    Var,
    fresh_name,
    names,
    require_wellformed,
    to_text,
)
from src.data_structures.functors.signature import Modality
from src.errors import ArityError, UnboundVariableError, WellFormednessError

logger = logging.getLogger(__name__)

AUXILIARY_PREFIX = "_w"


@dataclass(frozen=True)
class Equation:
    """
    One flat equation ``variable = op(args)``.

    Attributes:
        variable: The variable defined by the equation.
        op: The single modality on the right-hand side.
        args: System variables, one per argument position.
    """
    variable: str
    op: Modality
    args: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.args) != self.op.arity:
            raise ArityError(
                f"Equation for {self.variable} expects {self.op.arity} "
                f"arguments, got {len(self.args)}."
            )

    def as_expr(self) -> Expr:
        """Return the right-hand side as an expression over variables."""
        return Modal(self.op, (Var(a) for a in self.args))

    def __str__(self) -> str:
        return f"{self.variable} = {to_text(self.as_expr())}"


@dataclass(frozen=True)
class FlatSystem:
    """
    System of flat equations; the first variable is the distinguished one.

    Attributes:
        equations: One equation per variable, in declaration order.
    """
    equations: tuple[Equation, ...]

    def __post_init__(self) -> None:
        if not self.equations:
            raise WellFormednessError("A flat system needs at least one equation.")
        defined: set[str] = set()
        for equation in self.equations:
            if equation.variable in defined:
                raise WellFormednessError(
                    f"Variable {equation.variable} is defined twice."
                )
            defined.add(equation.variable)
        for equation in self.equations:
            for arg in equation.args:
                if arg not in defined:
                    raise UnboundVariableError(
                        f"Equation for {equation.variable} uses undefined "
                        f"variable {arg}."
                    )

    def __len__(self) -> int:
        return len(self.equations)

    def __str__(self) -> str:
        return "\n".join(str(equation) for equation in self.equations)

    @property
    def variables(self) -> tuple[str, ...]:
        """The variables in declaration order."""
        return tuple(equation.variable for equation in self.equations)

    @property
    def distinguished(self) -> str:
        """The first variable."""
        return self.equations[0].variable

    def equation(self, variable: str) -> Equation:
        """
        Return the equation defining ``variable``.

        Raises:
            UnboundVariableError: If the system does not define it.
        """
        for equation in self.equations:
            if equation.variable == variable:
                return equation
        raise UnboundVariableError(f"Unbound variable {variable}.")

    @classmethod
    def of(cls, equations: Iterable[Equation]) -> FlatSystem:
        """Build a system from any iterable of equations."""
        return cls(tuple(equations))


# --- Flattening ---

def rename_apart(e: Expr) -> Expr:
    """
    Rename binders so that no two ν-binders share a name.

    The first binder to use a name keeps it; later ones get ``name_n``.
    """
    taken = names(e)
    seen: set[str] = set()

    def walk(node: Expr, env: dict[str, str]) -> Expr:
        if isinstance(node, Var):
            return Var(env.get(node.name, node.name))
        if isinstance(node, Modal):
            return Modal(node.op, (walk(a, env) for a in node.args))
        binder = node.binder
        if binder in seen:
            binder = fresh_name(binder, taken)
        seen.add(binder)
        taken.add(binder)
        return Nu(binder, walk(node.body, {**env, node.binder: binder}))

    return walk(e, {})


class _Flattener:
    """
    Binds every modality not directly under a ν to a fresh variable and
    collapses nested ν-binders, yielding one flat equation per modality.
    """

    def __init__(self, e: Expr) -> None:
        self._taken = names(e)
        self._alias: dict[str, str] = {}
        self._slots: list[Optional[Equation]] = []
        self._counter = 0

    def _resolve(self, name: str) -> str:
        while name in self._alias:
            name = self._alias[name]
        return name

    def _gensym(self) -> str:
        while True:
            self._counter += 1
            candidate = f"{AUXILIARY_PREFIX}{self._counter}"
            if candidate not in self._taken:
                self._taken.add(candidate)
                return candidate

    def _equation(self, variable: str, node: Modal) -> str:
        # Reserve the slot first so variables appear in preorder.
        slot = len(self._slots)
        self._slots.append(None)
        args = tuple(self.bind(a) for a in node.args)
        self._slots[slot] = Equation(variable, node.op, args)
        return variable

    def bind(self, node: Expr) -> str:
        if isinstance(node, Var):
            return self._resolve(node.name)
        if isinstance(node, Modal):
            return self._equation(self._gensym(), node)
        body = node.body
        if isinstance(body, Nu):
            # nu z. nu y. φ(z, y) = nu y. φ(y, y)
            self._alias[node.binder] = body.binder
            return self.bind(body)
        if isinstance(body, Var):
            # nu y. x = x for an outer x
            self._alias[node.binder] = body.name
            return self._resolve(body.name)
        return self._equation(node.binder, body)

    def system(self) -> FlatSystem:
        equations = [slot for slot in self._slots if slot is not None]
        resolved = [
            Equation(eq.variable, eq.op, tuple(self._resolve(a) for a in eq.args))
            for eq in equations
        ]
        return FlatSystem.of(resolved)


def flatten(e: Expr) -> FlatSystem:
    """
    Convert a closed, guarded expression into a system of flat equations.

    Binders are first renamed apart. Every modality that is not directly
    under a ν is bound to a fresh variable ``_w1``, ``_w2``, ...; a ν
    directly under a ν is merged with it. Variables are declared in
    preorder, so the root's variable comes first and the greatest fixpoint's
    first component equals the semantics of ``e``.

    Raises:
        WellFormednessError: If ``e`` is not closed and guarded.
    """
    renamed = rename_apart(require_wellformed(e))
    flattener = _Flattener(renamed)
    flattener.bind(renamed)
    system = flattener.system()
    logger.debug("flattened into %d equations", len(system))
    return system


# --- Semantics ---

def check_system(s: FlatSystem, c: Coalgebra) -> None:
    """
    Check that every modality of the system belongs to the coalgebra's functor.

    Raises:
        FunctorMismatchError: On the first foreign modality.
    """
    for equation in s.equations:
        c.functor.check_modality(equation.op)


def eval_system(s: FlatSystem, c: Coalgebra) -> tuple[StateSet, ...]:
    """
    Compute the greatest fixpoint of a flat system over a coalgebra.

    All components start at the full carrier and are updated simultaneously
    until a round changes nothing.

    Args:
        s: The flat system.
        c: The coalgebra.

    Returns:
        One set per variable, in declaration order.

    Raises:
        FunctorMismatchError: If the system uses foreign modalities.
    """
    check_system(s, c)
    functor = c.functor
    full = frozenset(c.states)
    current: dict[str, frozenset[State]] = {v: full for v in s.variables}
    rounds = 0
    while True:
        rounds += 1
        following = {
            eq.variable: frozenset(
                x for x in c.states
                if functor.contains(eq.op, c.xi(x), [current[a] for a in eq.args])
            )
            for eq in s.equations
        }
        if following == current:
            break
        current = following
    logger.debug("flat system of %d equations stable after %d rounds", len(s), rounds)
    return tuple(StateSet(c.carrier, current[v]) for v in s.variables)
