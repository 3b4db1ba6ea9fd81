from __future__ import annotations
from typing import Hashable, Iterable, Iterator, TypeAlias

from src.errors import CarrierMismatchError, UnknownStateError

State: TypeAlias = Hashable


class Carrier:
    """
    Finite, ordered set of states.

    The declaration order is the canonical order used for every tie-break
    (decomposition, printing, serialization).

    Attributes:
        _states: The states in declaration order.
        _index: Position of every state in ``_states``.
    """
    _states: tuple[State, ...]
    _index: dict[State, int]

    def __init__(self, states: Iterable[State]) -> None:
        """
        Initialize a carrier from distinct states.

        Args:
            states: The states in canonical order.

        Raises:
            ValueError: If a state occurs twice.
        """
        self._states = tuple(states)
        self._index = {}
        for position, state in enumerate(self._states):
            if state in self._index:
                raise ValueError(f"Duplicate state {state!r} in carrier.")
            self._index[state] = position

    def __len__(self) -> int:
        """Return the number of states."""
        return len(self._states)

    def __iter__(self) -> Iterator[State]:
        """Iterate over the states in canonical order."""
        return iter(self._states)

    def __contains__(self, state: object) -> bool:
        """Check whether a state belongs to the carrier."""
        try:
            return state in self._index
        except TypeError:
            return False

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Carrier):
            return NotImplemented
        return self._states == other._states

    def __hash__(self) -> int:
        return hash(self._states)

    def __repr__(self) -> str:
        """Return a string representation for debugging."""
        return f"Carrier({list(self._states)!r})"

    @property
    def states(self) -> tuple[State, ...]:
        """The states in canonical order."""
        return self._states

    @property
    def is_empty(self) -> bool:
        """Check if the carrier has no states."""
        return len(self._states) == 0

    # --- Access Methods ---

    def index(self, state: State) -> int:
        """
        Return the canonical position of a state.

        Raises:
            UnknownStateError: If the state is not in the carrier.
        """
        try:
            return self._index[state]
        except KeyError:
            raise UnknownStateError(f"Unknown state {state!r}.") from None

    def require(self, states: Iterable[State]) -> None:
        """
        Check that every given state lies in the carrier.

        Raises:
            UnknownStateError: For the first state outside the carrier.
        """
        for state in states:
            if state not in self:
                raise UnknownStateError(f"Unknown state {state!r}.")

    def sorted(self, states: Iterable[State]) -> list[State]:
        """Return the given states sorted by canonical position."""
        return sorted(states, key=self.index)

    def subset(self, states: Iterable[State]) -> StateSet:
        """Build a StateSet over this carrier."""
        return StateSet(self, states)

    def full(self) -> StateSet:
        """Return the StateSet containing every state."""
        return StateSet(self, self._states)

    def empty(self) -> StateSet:
        """Return the empty StateSet."""
        return StateSet(self, ())


class StateSet:
    """
    Subset of a carrier.

    Attributes:
        carrier: The carrier the members are taken from.
        members: The members as a frozen set.
    """
    carrier: Carrier
    members: frozenset[State]

    def __init__(self, carrier: Carrier, members: Iterable[State]) -> None:
        """
        Initialize a subset of ``carrier``.

        Raises:
            UnknownStateError: If a member is not in the carrier.
        """
        self.carrier = carrier
        self.members = frozenset(members)
        carrier.require(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[State]:
        """Iterate over the members in canonical order."""
        return iter(self.carrier.sorted(self.members))

    def __contains__(self, state: object) -> bool:
        return state in self.members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateSet):
            return NotImplemented
        return self.carrier == other.carrier and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"StateSet({list(self)!r})"

    def __le__(self, other: StateSet) -> bool:
        """Subset test over the same carrier."""
        self._same_carrier(other)
        return self.members <= other.members

    def __or__(self, other: StateSet) -> StateSet:
        self._same_carrier(other)
        return StateSet(self.carrier, self.members | other.members)

    def __and__(self, other: StateSet) -> StateSet:
        self._same_carrier(other)
        return StateSet(self.carrier, self.members & other.members)

    @property
    def is_empty(self) -> bool:
        """Check if the set has no members."""
        return not self.members

    def _same_carrier(self, other: StateSet) -> None:
        if self.carrier != other.carrier:
            raise CarrierMismatchError("State sets live over different carriers.")
