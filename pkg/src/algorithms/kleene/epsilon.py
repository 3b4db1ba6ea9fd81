"""
The canonical coalgebra on expressions.

A state is an α-canonical closed, guarded expression. Its behaviour is read
off the outermost modality after unfolding top-level fixpoints, with the
modality's arguments as successor states.
"""
from __future__ import annotations
from collections import deque
from typing import Optional, Sequence
import logging

from src.data_structures.carriers.carrier import Carrier
from src.data_structures.coalgebras.coalgebra import Coalgebra
from src.data_structures.expressions.closure import fischer_ladner
from src.data_structures.expressions.expr import (
    Expr,
    Modal,
    Nu,
    canonical,
    modalities,
    require_wellformed,
    to_text,
    unfold,
)
from src.data_structures.functors.signature import Functor, FunctorValue
from src.errors import WellFormednessError

logger = logging.getLogger(__name__)


def head_modal(e: Expr) -> Modal:
    """
    Unfold top-level fixpoints until a modality is on top.

    Raises:
        WellFormednessError: If ``e`` is not closed and guarded.
    """
    current = canonical(require_wellformed(e))
    while isinstance(current, Nu):
        current = canonical(unfold(current))
    if not isinstance(current, Modal):
        raise WellFormednessError(f"no modality at the head of {to_text(current)}")
    return current


def epsilon_step(
    e: Expr, functor: Functor, closure: Optional[Sequence[Expr]] = None
) -> FunctorValue:
    """
    Return the one-step behaviour of ``e`` in the canonical coalgebra.

    Args:
        e: A closed, guarded expression.
        functor: The functor of its modalities.
        closure: The carrier to interpret successors in; defaults to the
            Fischer-Ladner closure of ``e``.

    Returns:
        The unique t with {t} = λ({φ_1}, ..., {φ_n}) where ``L(φ_1, ..., φ_n)``
        is the unfolded head of ``e``.

    Raises:
        WellFormednessError: If ``e`` is not closed and guarded.
        FunctorMismatchError: If the head modality is foreign.
        UnknownStateError: If a successor is missing from ``closure``.
    """
    carrier = Carrier(fischer_ladner(e) if closure is None else closure)
    head = head_modal(e)
    return functor.singleton_apply(
        head.op, [canonical(a) for a in head.args], carrier
    )


def generate_subcoalgebra(e: Expr, functor: Functor) -> tuple[Coalgebra, Expr]:
    """
    Build the subcoalgebra of the canonical coalgebra generated by ``e``.

    States are discovered breadth-first from ``canonical(e)``; the result is
    finite because every state lies in the Fischer-Ladner closure of ``e``.

    Returns:
        The coalgebra and the state standing for ``e``.

    Raises:
        WellFormednessError: If ``e`` is not closed and guarded.
        FunctorMismatchError: If ``e`` uses foreign modalities.
    """
    for op in set(modalities(e)):
        functor.check_modality(op)
    closure = fischer_ladner(e)
    carrier = Carrier(closure)
    root = closure[0]
    order = [root]
    seen = {root}
    structure: dict[Expr, FunctorValue] = {}
    queue: deque[Expr] = deque([root])
    while queue:
        state = queue.popleft()
        head = head_modal(state)
        value = functor.singleton_apply(
            head.op, [canonical(a) for a in head.args], carrier
        )
        structure[state] = value
        for successor in carrier.sorted(functor.support(value)):
            if successor not in seen:
                seen.add(successor)
                order.append(successor)
                queue.append(successor)
    logger.debug(
        "generated %d of %d closure members", len(order), len(closure)
    )
    return Coalgebra(functor, order, structure), root
