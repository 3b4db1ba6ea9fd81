"""
Contract shared by every functor instance.

A functor instance bundles a family of modalities (one per payload), the
singleton application turning states into functor values, the membership
test of the associated predicate liftings, the functorial action on maps
and the decomposition witnessing strong expressivity.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, ClassVar, Mapping, Sequence

from src.data_structures.carriers.carrier import Carrier, State, StateSet
from src.errors import (
    ArityError,
    CarrierMismatchError,
    FunctorMismatchError,
    UnknownStateError,
)


@dataclass(frozen=True)
class Modality:
    """
    Operation symbol of a functor instance.

    Attributes:
        tag: Kind of the functor the modality belongs to.
        payload: Instance specific data (bit, labels, weights, group sizes).
        arity: Number of arguments.
    """
    tag: str
    payload: tuple[Any, ...]
    arity: int


class FunctorValue:
    """
    Element of TX in normal form.

    Subclasses are frozen dataclasses whose fields are order-free, so that
    value equality is normal-form equality.
    """
    tag: ClassVar[str]


class Functor(ABC):
    """
    Abstract functor instance.

    Public methods validate their arguments and delegate to the unchecked
    hooks implemented by each instance. ``contains`` is the unchecked
    membership test used on hot paths (fixpoint iteration, refinement).
    """
    tag: ClassVar[str]

    # --- Instance Hooks ---

    @abstractmethod
    def make_modality(self, payload: Sequence[Any]) -> Modality:
        """Validate a payload and build its modality."""

    @abstractmethod
    def parse_modality(self, items: Sequence[str]) -> Modality:
        """Build a modality from the bracket items of its concrete syntax."""

    @abstractmethod
    def format_modality(self, op: Modality) -> str:
        """Render a modality in concrete syntax, brackets included."""

    @abstractmethod
    def support(self, t: FunctorValue) -> frozenset[State]:
        """Return the states referenced by a value."""

    @abstractmethod
    def contains(
        self, op: Modality, t: FunctorValue, sets: Sequence[frozenset[State]]
    ) -> bool:
        """Unchecked membership of ``t`` in the lifting of ``op`` at ``sets``."""

    @abstractmethod
    def apply(self, op: Modality, args: Sequence[State]) -> FunctorValue:
        """Unchecked singleton application."""

    @abstractmethod
    def _decompose(
        self, t: FunctorValue, carrier: Carrier
    ) -> tuple[Modality, list[State]]:
        """Unchecked decomposition."""

    @abstractmethod
    def _map_value(
        self, t: FunctorValue, f: Mapping[State, State]
    ) -> FunctorValue:
        """Unchecked functorial action."""

    @property
    @abstractmethod
    def config(self) -> dict[str, Any]:
        """Configuration beyond the kind (alphabet, labels)."""

    # --- Contract ---

    def singleton_apply(
        self, op: Modality, args: Sequence[State], carrier: Carrier
    ) -> FunctorValue:
        """
        Return the unique value t with {t} = λ({x_1}, ..., {x_n}).

        Args:
            op: The modality.
            args: One state per argument position.
            carrier: The carrier the states belong to.

        Raises:
            FunctorMismatchError: If ``op`` belongs to another functor.
            ArityError: If ``len(args)`` differs from the arity.
            UnknownStateError: If an argument is not in the carrier.
        """
        self.check_modality(op)
        if len(args) != op.arity:
            raise ArityError(
                f"Expected {op.arity} arguments, got {len(args)}."
            )
        carrier.require(args)
        return self.apply(op, args)

    def lifting_contains(
        self, op: Modality, t: FunctorValue, args: Sequence[StateSet]
    ) -> bool:
        """
        Check whether ``t`` lies in the lifting of ``op`` applied to ``args``.

        Raises:
            FunctorMismatchError: If ``op`` or ``t`` belongs to another functor.
            ArityError: If ``len(args)`` differs from the arity.
            CarrierMismatchError: If the sets or ``t`` live over different
                carriers.
        """
        self.check_modality(op)
        self.check_value(t)
        if len(args) != op.arity:
            raise ArityError(
                f"Expected {op.arity} argument sets, got {len(args)}."
            )
        if args:
            carrier = args[0].carrier
            if any(a.carrier != carrier for a in args[1:]):
                raise CarrierMismatchError(
                    "Argument sets live over different carriers."
                )
            if not all(s in carrier for s in self.support(t)):
                raise CarrierMismatchError(
                    "Value refers to states outside the argument carrier."
                )
        return self.contains(op, t, [a.members for a in args])

    def decompose(
        self, t: FunctorValue, carrier: Carrier
    ) -> tuple[Modality, list[State]]:
        """
        Split a value into a modality and states.

        The result satisfies ``singleton_apply(op, xs, carrier) == t``; ties
        are broken by the canonical order of ``carrier``.

        Raises:
            UnknownStateError: If ``t`` refers to states outside the carrier.
        """
        self.check_value(t)
        carrier.require(self.support(t))
        return self._decompose(t, carrier)

    def map_value(
        self, t: FunctorValue, f: Mapping[State, State]
    ) -> FunctorValue:
        """
        Apply the functor to a map: return Tf(t) in normal form.

        Raises:
            UnknownStateError: If ``f`` is undefined on part of the support.
        """
        self.check_value(t)
        for state in self.support(t):
            if state not in f:
                raise UnknownStateError(
                    f"Map is undefined on state {state!r}."
                )
        return self._map_value(t, f)

    # --- Validation ---

    def check_modality(self, op: Modality) -> None:
        """
        Check that a modality belongs to this functor.

        Raises:
            FunctorMismatchError: On a foreign or malformed modality.
        """
        if op.tag != self.tag:
            raise FunctorMismatchError(
                f"Expected a {self.tag} modality, got a {op.tag} modality."
            )
        try:
            rebuilt = self.make_modality(op.payload)
        except ValueError as error:
            raise FunctorMismatchError(str(error)) from None
        if rebuilt != op:
            raise FunctorMismatchError(
                f"Modality {op} does not fit {self!r}."
            )

    def check_value(self, t: FunctorValue) -> None:
        """
        Check that a value belongs to this functor.

        Raises:
            FunctorMismatchError: On a value of another functor.
        """
        if getattr(t, "tag", None) != self.tag:
            raise FunctorMismatchError(
                f"Expected a {self.tag} value, got {t!r}."
            )

    def check_compatible(self, other: Functor) -> None:
        """
        Check that two functor instances coincide.

        Raises:
            FunctorMismatchError: If kind or configuration differ.
        """
        if self != other:
            raise FunctorMismatchError(
                f"Functor mismatch: {self!r} versus {other!r}."
            )
