from __future__ import annotations
from typing import Mapping, Optional
import logging

from src.data_structures.carriers.carrier import State, StateSet
from src.data_structures.coalgebras.coalgebra import Coalgebra
from src.data_structures.expressions.expr import Expr, Modal, Nu, Var, modalities
from src.errors import UnboundVariableError

logger = logging.getLogger(__name__)

Valuation = Mapping[str, StateSet]


class _Evaluator:
    """
    Greatest-fixpoint evaluator over one coalgebra.

    Results are memoized per (subexpression, values of its free variables),
    so repeated copies of a subexpression, as produced by variable
    elimination, are evaluated once per environment.
    """
    _coalgebra: Coalgebra
    _memo: dict[tuple[Expr, tuple[tuple[str, frozenset[State]], ...]], frozenset[State]]

    def __init__(self, coalgebra: Coalgebra) -> None:
        self._coalgebra = coalgebra
        self._memo = {}

    def run(self, e: Expr, env: dict[str, frozenset[State]]) -> frozenset[State]:
        if isinstance(e, Var):
            try:
                return env[e.name]
            except KeyError:
                raise UnboundVariableError(f"Unbound variable {e.name}.") from None
        key = (e, tuple(sorted((v, env[v]) for v in e.free_vars if v in env)))
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        result = self._nu(e, env) if isinstance(e, Nu) else self._modal(e, env)
        self._memo[key] = result
        return result

    def _nu(self, e: Nu, env: dict[str, frozenset[State]]) -> frozenset[State]:
        # Kleene iteration from the top element; the map is monotone, so the
        # sequence decreases and stabilizes after at most |X| rounds.
        current = frozenset(self._coalgebra.states)
        rounds = 0
        while True:
            rounds += 1
            following = self.run(e.body, {**env, e.binder: current})
            if following == current:
                logger.debug("nu %s stable after %d rounds", e.binder, rounds)
                return current
            current = following

    def _modal(self, e: Modal, env: dict[str, frozenset[State]]) -> frozenset[State]:
        sets = [self.run(a, env) for a in e.args]
        functor = self._coalgebra.functor
        return frozenset(
            x for x in self._coalgebra.states
            if functor.contains(e.op, self._coalgebra.xi(x), sets)
        )


def check_expression(e: Expr, coalgebra: Coalgebra) -> None:
    """
    Check that every modality of ``e`` belongs to the coalgebra's functor.

    Raises:
        FunctorMismatchError: On the first foreign modality.
    """
    for op in set(modalities(e)):
        coalgebra.functor.check_modality(op)


def evaluate(
    e: Expr, coalgebra: Coalgebra, valuation: Optional[Valuation] = None
) -> StateSet:
    """
    Compute the semantics of ``e`` in a finite coalgebra.

    Variables denote their valuation, a modality denotes the states whose
    behaviour lies in its lifting of the argument semantics, and
    ``nu z. φ`` denotes the greatest fixpoint of φ in z.

    Args:
        e: The expression; its free variables must be bound by ``valuation``.
        coalgebra: The coalgebra to evaluate in.
        valuation: Sets assigned to free variables.

    Returns:
        The set of states satisfying ``e``.

    Raises:
        UnboundVariableError: If a free variable has no value.
        FunctorMismatchError: If ``e`` uses modalities of another functor.
        CarrierMismatchError: If a valuation set lives over another carrier.
    """
    check_expression(e, coalgebra)
    env: dict[str, frozenset[State]] = {}
    for name, states in (valuation or {}).items():
        coalgebra.check_same_carrier(states)
        env[name] = states.members
    missing = sorted(e.free_vars - env.keys())
    if missing:
        raise UnboundVariableError(f"Unbound variable {missing[0]}.")
    members = _Evaluator(coalgebra).run(e, env)
    return StateSet(coalgebra.carrier, members)
