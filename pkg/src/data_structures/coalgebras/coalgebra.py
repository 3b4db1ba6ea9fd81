from __future__ import annotations
from typing import Iterable, Iterator, Mapping

from src.data_structures.carriers.carrier import Carrier, State, StateSet
from src.data_structures.functors.signature import Functor, FunctorValue
from src.data_structures.graphs.support_graph import SupportGraph
from src.errors import CarrierMismatchError, UnknownStateError


class Coalgebra:
    """
    Finite coalgebra (X, ξ) for a functor instance.

    Attributes:
        functor: The functor instance every value belongs to.
        carrier: The state set X in canonical order.
        _structure: The structure map ξ.
    """
    functor: Functor
    carrier: Carrier
    _structure: dict[State, FunctorValue]

    def __init__(
        self,
        functor: Functor,
        carrier: Carrier | Iterable[State],
        structure: Mapping[State, FunctorValue],
    ) -> None:
        """
        Initialize a coalgebra and check its invariants.

        Args:
            functor: The functor instance.
            carrier: The carrier, or its states in canonical order.
            structure: One value per state.

        Raises:
            UnknownStateError: If ξ is not total, or a value refers to a
                state outside the carrier.
            FunctorMismatchError: If a value belongs to another functor.
        """
        self.functor = functor
        self.carrier = carrier if isinstance(carrier, Carrier) else Carrier(carrier)
        self._structure = {}
        for state in self.carrier:
            if state not in structure:
                raise UnknownStateError(f"No behaviour given for state {state!r}.")
            value = structure[state]
            functor.check_value(value)
            self.carrier.require(functor.support(value))
            self._structure[state] = value
        extra = [s for s in structure if s not in self.carrier]
        if extra:
            raise UnknownStateError(f"Behaviour given for unknown state {extra[0]!r}.")

    def __len__(self) -> int:
        """Return the number of states."""
        return len(self.carrier)

    def __iter__(self) -> Iterator[State]:
        """Iterate over the states in canonical order."""
        return iter(self.carrier)

    def __contains__(self, state: object) -> bool:
        return state in self.carrier

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coalgebra):
            return NotImplemented
        return (
            self.functor == other.functor
            and self.carrier == other.carrier
            and self._structure == other._structure
        )

    def __repr__(self) -> str:
        """Return a string representation for debugging."""
        return f"Coalgebra({self.functor!r}, {list(self.carrier)!r})"

    @property
    def states(self) -> tuple[State, ...]:
        """The states in canonical order."""
        return self.carrier.states

    # --- Access Methods ---

    def xi(self, state: State) -> FunctorValue:
        """
        Return the one-step behaviour of a state.

        Raises:
            UnknownStateError: If the state is not in the carrier.
        """
        try:
            return self._structure[state]
        except KeyError:
            raise UnknownStateError(f"Unknown state {state!r}.") from None

    def full(self) -> StateSet:
        """Return the set of all states."""
        return self.carrier.full()

    def support_graph(self) -> SupportGraph:
        """Build the support graph, successors in carrier order."""
        graph = SupportGraph()
        for state in self.carrier:
            graph.add_edges(
                state, self.carrier.sorted(self.functor.support(self.xi(state)))
            )
        return graph

    # --- Constructions ---

    def reachable(self, state: State) -> list[State]:
        """
        Return the states reachable from ``state``: ``state`` first, then the
        others in carrier order.
        """
        self.carrier.index(state)
        found = set(self.support_graph().bfs(state))
        return [state] + [s for s in self.carrier if s in found and s != state]

    def restrict(self, states: Iterable[State]) -> Coalgebra:
        """
        Return the subcoalgebra on ``states``, kept in the given order.

        Raises:
            UnknownStateError: If the states are not closed under successors.
        """
        chosen = list(states)
        return Coalgebra(
            self.functor, chosen, {s: self.xi(s) for s in chosen}
        )

    def generated(self, state: State) -> Coalgebra:
        """Return the subcoalgebra generated by ``state``, ``state`` first."""
        return self.restrict(self.reachable(state))

    def coproduct(self, other: Coalgebra) -> Coalgebra:
        """
        Return the disjoint union, with states tagged ``(0, x)`` and ``(1, y)``.

        Raises:
            FunctorMismatchError: If the functors differ.
        """
        self.functor.check_compatible(other.functor)
        structure: dict[State, FunctorValue] = {}
        states: list[State] = []
        for side, part in enumerate((self, other)):
            tag_map = {s: injection(side, s) for s in part.carrier}
            for s in part.carrier:
                states.append(tag_map[s])
                structure[tag_map[s]] = part.functor.map_value(part.xi(s), tag_map)
        return Coalgebra(self.functor, states, structure)

    def check_same_carrier(self, states: StateSet) -> None:
        """
        Check that a StateSet lives over this coalgebra's carrier.

        Raises:
            CarrierMismatchError: Otherwise.
        """
        if states.carrier != self.carrier:
            raise CarrierMismatchError("State set over a different carrier.")


def injection(side: int, state: State) -> State:
    """Return the coproduct tag of ``state`` on the given side."""
    return (side, state)
