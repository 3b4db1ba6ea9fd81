from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, ClassVar, Iterable, Mapping, Sequence
import logging

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from src.data_structures.carriers.carrier import Carrier, State
from src.data_structures.functors.signature import Functor, FunctorValue, Modality
from src.errors import ExprSyntaxError, MalformedValueError

logger = logging.getLogger(__name__)

TAG = "dist"

_SOURCE = ("source",)
_SINK = ("sink",)


@dataclass(frozen=True)
class DistValue(FunctorValue):
    """
    Finitely supported probability distribution with exact weights.

    Attributes:
        weights: (state, weight) pairs with distinct states, every weight
            positive, weights summing to exactly 1.
    """
    tag: ClassVar[str] = TAG
    weights: frozenset[tuple[State, Fraction]]

    def as_dict(self) -> dict[State, Fraction]:
        """Return the weights as a state-indexed dictionary."""
        return dict(self.weights)

    def mass(self, states: Iterable[State]) -> Fraction:
        """Return the probability of a set of states."""
        members = set(states)
        return sum(
            (w for state, w in self.weights if state in members), Fraction(0)
        )


def parse_rational(text: str) -> Fraction:
    """
    Parse ``p/q`` or an integer into an exact rational.

    Raises:
        ValueError: If the text is not a rational literal.
    """
    numerator, slash, denominator = text.strip().partition("/")
    if not numerator.isdigit() or (slash and not denominator.isdigit()):
        raise ValueError(f"Malformed rational {text!r}.")
    if slash and int(denominator) == 0:
        raise ValueError(f"Zero denominator in {text!r}.")
    return Fraction(int(numerator), int(denominator) if slash else 1)


def format_rational(value: Fraction) -> str:
    """Render a rational as ``p/q``, or ``p`` when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def normalize(weights: Iterable[tuple[State, Fraction]]) -> DistValue:
    """
    Merge repeated states, drop zero weights and check the total.

    Raises:
        MalformedValueError: On negative weights or a total other than 1.
    """
    merged: dict[State, Fraction] = {}
    for state, weight in weights:
        weight = Fraction(weight)
        if weight < 0:
            raise MalformedValueError(
                f"Expected non-negative weight, got {weight} for {state!r}."
            )
        merged[state] = merged.get(state, Fraction(0)) + weight
    total = sum(merged.values(), Fraction(0))
    if total != 1:
        raise MalformedValueError(f"Expected weights summing to 1, got {total}.")
    return DistValue(frozenset((s, w) for s, w in merged.items() if w != 0))


def dist_lifting(
    probabilities: Sequence[Fraction],
    t: DistValue,
    args: Sequence[frozenset[State]],
) -> bool:
    """
    Moss lifting of the weight tuple ``probabilities``.

    ``t`` is a member iff there is a coupling of the index distribution
    (index i with weight p_i) and ``t`` that only pairs i with states of
    ``args[i]``. This is decided as a maximum-flow problem with exact
    rational capacities: source -> i (p_i), i -> x for x in args[i] and in
    the support (p_i), x -> sink (weight of x). The coupling exists iff the
    flow saturates, i.e. has value 1.

    Raises:
        MalformedValueError: If the weights do not sum to 1.
    """
    if sum(probabilities, Fraction(0)) != 1:
        raise MalformedValueError(
            f"Expected weights summing to 1, got {list(map(str, probabilities))}."
        )
    weights = t.as_dict()
    covered = frozenset().union(*args) if args else frozenset()
    # Mass outside the union cannot be routed, and every index needs a target.
    if t.mass(covered) != 1:
        return False
    for members in args:
        if not members & weights.keys():
            return False

    network = nx.DiGraph()
    for i, (p, members) in enumerate(zip(probabilities, args)):
        network.add_edge(_SOURCE, ("index", i), capacity=p)
        for state in members:
            if state in weights:
                network.add_edge(("index", i), ("state", state), capacity=p)
    for state, weight in weights.items():
        network.add_edge(("state", state), _SINK, capacity=weight)
    flow = nx.maximum_flow_value(network, _SOURCE, _SINK, flow_func=edmonds_karp)
    logger.debug("Coupling flow %s for weights %s", flow, probabilities)
    return bool(flow == 1)


@dataclass(frozen=True)
class DistFunctor(Functor):
    """Finite distribution functor with rational weights."""
    tag: ClassVar[str] = TAG

    @property
    def config(self) -> dict[str, Any]:
        return {}

    # --- Modalities ---

    def make_modality(self, payload: Sequence[Any]) -> Modality:
        weights = tuple(Fraction(p) for p in payload)
        rendered = [format_rational(p) for p in weights]
        if any(p <= 0 for p in weights):
            raise ValueError(f"Expected positive weights, got {rendered}.")
        if sum(weights, Fraction(0)) != 1:
            raise ValueError(f"Expected weights summing to 1, got {rendered}.")
        return Modality(TAG, weights, len(weights))

    def parse_modality(self, items: Sequence[str]) -> Modality:
        try:
            return self.make_modality([parse_rational(item) for item in items])
        except ValueError as error:
            raise ExprSyntaxError(str(error)) from None

    def format_modality(self, op: Modality) -> str:
        return "[" + ",".join(format_rational(p) for p in op.payload) + "]"

    # --- Values ---

    def value(self, weights: Mapping[State, Fraction]) -> DistValue:
        """Build a normalized value from a state-indexed weight map."""
        return normalize(weights.items())

    def sorted_weights(
        self, t: DistValue, carrier: Carrier
    ) -> list[tuple[State, Fraction]]:
        """Return the support with its weights in carrier order."""
        return sorted(t.weights, key=lambda item: carrier.index(item[0]))

    def support(self, t: FunctorValue) -> frozenset[State]:
        assert isinstance(t, DistValue)
        return frozenset(state for state, _ in t.weights)

    def contains(
        self, op: Modality, t: FunctorValue, sets: Sequence[frozenset[State]]
    ) -> bool:
        assert isinstance(t, DistValue)
        return dist_lifting(op.payload, t, sets)

    def apply(self, op: Modality, args: Sequence[State]) -> FunctorValue:
        return normalize(zip(args, op.payload))

    def _decompose(
        self, t: FunctorValue, carrier: Carrier
    ) -> tuple[Modality, list[State]]:
        assert isinstance(t, DistValue)
        items = self.sorted_weights(t, carrier)
        op = Modality(TAG, tuple(w for _, w in items), len(items))
        return op, [state for state, _ in items]

    def _map_value(
        self, t: FunctorValue, f: Mapping[State, State]
    ) -> FunctorValue:
        assert isinstance(t, DistValue)
        return normalize((f[state], w) for state, w in t.weights)
