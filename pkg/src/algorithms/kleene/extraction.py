from __future__ import annotations
from typing import Sequence
import logging
import re

from src.algorithms.semantics.flattening import Equation, FlatSystem
from src.data_structures.carriers.carrier import State
from src.data_structures.coalgebras.coalgebra import Coalgebra
from src.data_structures.expressions.expr import (
    Expr,
    Nu,
    require_wellformed,
    substitute,
)

logger = logging.getLogger(__name__)

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_RESERVED = frozenset({"nu"})


def variable_names(states: Sequence[State]) -> dict[State, str]:
    """
    Assign a distinct expression variable to each state.

    States that are identifiers keep their name; the others get ``x1``,
    ``x2``, ... skipping names already in use.
    """
    chosen: dict[State, str] = {}
    for state in states:
        if (
            isinstance(state, str)
            and _IDENTIFIER.fullmatch(state)
            and state not in _RESERVED
        ):
            chosen[state] = state
    used = set(chosen.values())
    counter = 0
    for state in states:
        if state in chosen:
            continue
        while True:
            counter += 1
            candidate = f"x{counter}"
            if candidate not in used:
                break
        used.add(candidate)
        chosen[state] = candidate
    return chosen


def characteristic_system(c: Coalgebra, x: State) -> FlatSystem:
    """
    Return the flat system describing the subcoalgebra generated by ``x``.

    One equation per reachable state, ``x`` first, each right-hand side the
    decomposition of the state's behaviour.

    Raises:
        UnknownStateError: If ``x`` is not a state of ``c``.
    """
    reachable = c.reachable(x)
    naming = variable_names(reachable)
    equations = []
    for state in reachable:
        op, successors = c.functor.decompose(c.xi(state), c.carrier)
        equations.append(
            Equation(naming[state], op, tuple(naming[s] for s in successors))
        )
    return FlatSystem.of(equations)


def solve(system: FlatSystem) -> Expr:
    """
    Turn a flat system into one closed expression for its first variable.

    Variables are eliminated last to first: the current right-hand side of
    z becomes ``nu z. rhs`` (or stays as is when z does not occur in it) and
    is substituted into every remaining equation.
    """
    pending: dict[str, Expr] = {eq.variable: eq.as_expr() for eq in system.equations}
    solved: Expr = pending[system.distinguished]
    for variable in reversed(system.variables):
        rhs = pending.pop(variable)
        solved = Nu(variable, rhs) if variable in rhs.free_vars else rhs
        for other in pending:
            pending[other] = substitute(pending[other], variable, solved)
        logger.debug("eliminated %s, %d equations left", variable, len(pending))
    return solved


def extract(c: Coalgebra, x: State) -> Expr:
    """
    Compute a characteristic expression of a state.

    The result is closed and guarded, and ``x`` satisfies it; every state
    satisfying it is behaviourally equivalent to ``x``. Its size may grow
    exponentially in the number of reachable states.

    Raises:
        UnknownStateError: If ``x`` is not a state of ``c``.
    """
    return require_wellformed(solve(characteristic_system(c, x)))
