from __future__ import annotations
import logging

from src.data_structures.expressions.expr import (
    Expr,
    Modal,
    Nu,
    canonical,
    require_wellformed,
    unfold,
)

logger = logging.getLogger(__name__)


def fischer_ladner(e: Expr) -> tuple[Expr, ...]:
    """
    Compute the Fischer-Ladner closure of a closed, guarded expression.

    The closure is the least set containing ``e`` that is closed under
    taking the arguments of a modality and unfolding a top-level fixpoint.
    Members are stored α-canonically, which keeps the set finite.

    Args:
        e: A closed and guarded expression.

    Returns:
        The members in discovery order, ``canonical(e)`` first.

    Raises:
        WellFormednessError: If ``e`` is not closed and guarded.
    """
    root = canonical(require_wellformed(e))
    seen = {root}
    order = [root]
    position = 0
    while position < len(order):
        current = order[position]
        position += 1
        if isinstance(current, Nu):
            successors: tuple[Expr, ...] = (canonical(unfold(current)),)
        elif isinstance(current, Modal):
            successors = tuple(canonical(a) for a in current.args)
        else:
            successors = ()
        for successor in successors:
            if successor not in seen:
                seen.add(successor)
                order.append(successor)
    logger.debug("Fischer-Ladner closure of size %d", len(order))
    return tuple(order)
