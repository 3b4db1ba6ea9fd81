"""
Brute-force Λ-bisimulation checks for small coalgebras.

A relation S between coalgebras (X, ξ) and (Y, ζ) is a Λ-simulation when
for every pair (x, y) in S, every modality L and all sets X_1, ..., X_n,

    ξ(x) ∈ λ(X_1, ..., X_n)  implies  ζ(y) ∈ λ(S[X_1], ..., S[X_n]).

A Λ-bisimulation is a Λ-simulation whose converse is one too. The checks
enumerate subset tuples, so they are guarded by a size limit and only
quantify over the modalities that decompose the values of both
coalgebras. They exist to cross-check partition refinement.
"""
from __future__ import annotations
from itertools import chain, combinations, product
from typing import Iterable
import logging

from src.data_structures.carriers.carrier import State
from src.data_structures.coalgebras.coalgebra import Coalgebra
from src.data_structures.functors.signature import FunctorValue, Modality
from src.errors import OracleSizeError

logger = logging.getLogger(__name__)

DEFAULT_MAX_STATES = 9

Relation = frozenset[tuple[State, State]]
Premises = list[tuple[frozenset[State], ...]]


def converse(relation: Iterable[tuple[State, State]]) -> Relation:
    """Return the relation with every pair flipped."""
    return frozenset((y, x) for x, y in relation)


def image(
    relation: Iterable[tuple[State, State]], states: Iterable[State]
) -> frozenset[State]:
    """Return S[A], the states related to some member of ``states``."""
    members = frozenset(states)
    return frozenset(y for x, y in relation if x in members)


def subsets(states: Iterable[State]) -> list[frozenset[State]]:
    """Return every subset of ``states``, smallest first."""
    items = list(states)
    return [
        frozenset(chosen)
        for chosen in chain.from_iterable(
            combinations(items, k) for k in range(len(items) + 1)
        )
    ]


def modality_instances(*coalgebras: Coalgebra) -> list[Modality]:
    """Collect the modalities decomposing the values of the coalgebras."""
    found: dict[Modality, None] = {}
    for c in coalgebras:
        for x in c:
            op, _ = c.functor.decompose(c.xi(x), c.carrier)
            found.setdefault(op, None)
    return list(found)


class _PremiseCache:
    """
    Minimal argument tuples whose lifting contains a value.

    Membership depends only on the intersection of each argument with the
    value's support, and liftings are monotone, so the minimal tuples of
    subsets of the support represent every premise.
    """

    def __init__(self, coalgebra: Coalgebra) -> None:
        self._coalgebra = coalgebra
        self._cache: dict[tuple[Modality, FunctorValue], Premises] = {}

    def minimal(self, op: Modality, t: FunctorValue) -> Premises:
        key = (op, t)
        if key not in self._cache:
            self._cache[key] = self._compute(op, t)
        return self._cache[key]

    def _compute(self, op: Modality, t: FunctorValue) -> Premises:
        functor = self._coalgebra.functor
        candidates = subsets(self._coalgebra.carrier.sorted(functor.support(t)))
        holding = [
            args for args in product(candidates, repeat=op.arity)
            if functor.contains(op, t, args)
        ]
        holding.sort(key=lambda args: sum(len(a) for a in args))
        minimal: Premises = []
        for args in holding:
            if not any(
                all(small <= big for small, big in zip(kept, args)) for kept in minimal
            ):
                minimal.append(args)
        return minimal


def _pair_simulated(
    c1: Coalgebra,
    c2: Coalgebra,
    x: State,
    y: State,
    relation: Relation,
    ops: list[Modality],
    premises: _PremiseCache,
) -> bool:
    value = c2.xi(y)
    for op in ops:
        for args in premises.minimal(op, c1.xi(x)):
            images = [image(relation, a) for a in args]
            if not c2.functor.contains(op, value, images):
                return False
    return True


def _check_size(total: int, max_states: int) -> None:
    if total > max_states:
        raise OracleSizeError(
            f"Oracle limited to {max_states} states, got {total}."
        )


def is_lambda_simulation(
    c1: Coalgebra,
    c2: Coalgebra,
    relation: Iterable[tuple[State, State]],
    max_states: int = DEFAULT_MAX_STATES,
) -> bool:
    """
    Check one direction of the Λ-bisimulation condition.

    Raises:
        OracleSizeError: If the coalgebras together exceed ``max_states``.
        FunctorMismatchError: If the functors differ.
        UnknownStateError: If a pair mentions an unknown state.
    """
    _check_size(len(c1) + len(c2), max_states)
    c1.functor.check_compatible(c2.functor)
    pairs = frozenset(relation)
    for x, y in pairs:
        c1.carrier.index(x)
        c2.carrier.index(y)
    ops = modality_instances(c1, c2)
    premises = _PremiseCache(c1)
    return all(
        _pair_simulated(c1, c2, x, y, pairs, ops, premises) for x, y in pairs
    )


def check_lambda_bisimulation(
    c1: Coalgebra,
    c2: Coalgebra,
    relation: Iterable[tuple[State, State]],
    max_states: int = DEFAULT_MAX_STATES,
) -> bool:
    """
    Check whether a relation is a Λ-bisimulation between two coalgebras.

    Args:
        c1: The left coalgebra.
        c2: The right coalgebra.
        relation: Pairs (x, y) with x in ``c1`` and y in ``c2``.
        max_states: Size guard on ``len(c1) + len(c2)``.

    Returns:
        True iff both the relation and its converse are Λ-simulations for
        every modality decomposing a value of ``c1`` or ``c2``.

    Raises:
        OracleSizeError: If the guard is exceeded.
    """
    pairs = frozenset(relation)
    return is_lambda_simulation(c1, c2, pairs, max_states) and is_lambda_simulation(
        c2, c1, converse(pairs), max_states
    )


def largest_lambda_bisimulation(
    c: Coalgebra, max_states: int = DEFAULT_MAX_STATES
) -> Relation:
    """
    Compute the greatest Λ-bisimulation on a coalgebra.

    Starts from all pairs and removes pairs violating either direction of
    the condition until none does.

    Raises:
        OracleSizeError: If ``2 * len(c)`` exceeds ``max_states``.
    """
    _check_size(2 * len(c), max_states)
    ops = modality_instances(c)
    premises = _PremiseCache(c)
    relation: Relation = frozenset(product(c.states, repeat=2))
    rounds = 0
    while True:
        rounds += 1
        backward = converse(relation)
        kept = frozenset(
            (x, y) for x, y in relation
            if _pair_simulated(c, c, x, y, relation, ops, premises)
            and _pair_simulated(c, c, y, x, backward, ops, premises)
        )
        if kept == relation:
            logger.debug("bisimulation stable after %d rounds", rounds)
            return relation
        relation = kept
