from __future__ import annotations
from dataclasses import dataclass
from typing import Any, ClassVar, Mapping, Sequence

from src.data_structures.carriers.carrier import Carrier, State
from src.data_structures.functors.signature import Functor, FunctorValue, Modality
from src.errors import (
    ConfigurationError,
    ExprSyntaxError,
    FunctorMismatchError,
    MalformedValueError,
)

TAG = "dfa"


@dataclass(frozen=True)
class DfaValue(FunctorValue):
    """
    One step of a deterministic automaton, an element of 2 x X^A.

    Attributes:
        output: Acceptance bit, 0 or 1.
        next: Successor per letter, aligned with the functor's alphabet.
    """
    tag: ClassVar[str] = TAG
    output: int
    next: tuple[State, ...]


def normalize(output: int, next_states: Sequence[State]) -> DfaValue:
    """
    Build a DfaValue, checking the output bit.

    Raises:
        MalformedValueError: If the output is not 0 or 1.
    """
    if output not in (0, 1) or isinstance(output, bool):
        raise MalformedValueError(f"Expected output bit 0 or 1, got {output!r}.")
    return DfaValue(output, tuple(next_states))


def dfa_lifting(
    bit: int, t: DfaValue, args: Sequence[frozenset[State]]
) -> bool:
    """
    Moss lifting of the operation with output ``bit``.

    ``t`` is a member iff its output is ``bit`` and the successor under the
    i-th letter lies in the i-th argument set.
    """
    if t.output != bit:
        return False
    return all(state in members for state, members in zip(t.next, args))


@dataclass(frozen=True)
class DfaFunctor(Functor):
    """
    Deterministic automata over a fixed, ordered alphabet.

    Attributes:
        alphabet: The letters in canonical order.
    """
    tag: ClassVar[str] = TAG
    alphabet: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ConfigurationError(
                f"Alphabet letters must be distinct, got {list(self.alphabet)}."
            )

    @property
    def config(self) -> dict[str, Any]:
        return {"alphabet": list(self.alphabet)}

    # --- Modalities ---

    def make_modality(self, payload: Sequence[Any]) -> Modality:
        if len(payload) != 1 or payload[0] not in (0, 1):
            raise ValueError(f"Expected a single output bit, got {list(payload)}.")
        return Modality(TAG, (int(payload[0]),), len(self.alphabet))

    def parse_modality(self, items: Sequence[str]) -> Modality:
        if len(items) != 1 or items[0] not in ("0", "1"):
            raise ExprSyntaxError(
                f"Expected [0] or [1] for a dfa modality, got [{','.join(items)}]"
            )
        return self.make_modality((int(items[0]),))

    def format_modality(self, op: Modality) -> str:
        return f"[{op.payload[0]}]"

    # --- Values ---

    def value(self, output: int, next_states: Mapping[str, State]) -> DfaValue:
        """
        Build a value from a letter-indexed successor map.

        Raises:
            MalformedValueError: If the map is not total on the alphabet.
        """
        missing = [a for a in self.alphabet if a not in next_states]
        extra = [a for a in next_states if a not in self.alphabet]
        if missing or extra:
            raise MalformedValueError(
                f"Successor map must be total on {list(self.alphabet)}, "
                f"missing {missing}, unexpected {extra}."
            )
        return normalize(output, [next_states[a] for a in self.alphabet])

    def support(self, t: FunctorValue) -> frozenset[State]:
        assert isinstance(t, DfaValue)
        return frozenset(t.next)

    def contains(
        self, op: Modality, t: FunctorValue, sets: Sequence[frozenset[State]]
    ) -> bool:
        assert isinstance(t, DfaValue)
        return dfa_lifting(op.payload[0], t, sets)

    def apply(self, op: Modality, args: Sequence[State]) -> FunctorValue:
        return DfaValue(op.payload[0], tuple(args))

    def _decompose(
        self, t: FunctorValue, carrier: Carrier
    ) -> tuple[Modality, list[State]]:
        assert isinstance(t, DfaValue)
        return self.make_modality((t.output,)), list(t.next)

    def _map_value(
        self, t: FunctorValue, f: Mapping[State, State]
    ) -> FunctorValue:
        assert isinstance(t, DfaValue)
        return DfaValue(t.output, tuple(f[state] for state in t.next))

    def check_value(self, t: FunctorValue) -> None:
        super().check_value(t)
        assert isinstance(t, DfaValue)
        if len(t.next) != len(self.alphabet):
            raise FunctorMismatchError(
                f"Expected {len(self.alphabet)} successors, got {len(t.next)}."
            )
