from __future__ import annotations
from dataclasses import dataclass
from typing import Any, ClassVar, Iterable, Mapping, Optional, Sequence
import re

from src.data_structures.carriers.carrier import Carrier, State
from src.data_structures.functors.signature import Functor, FunctorValue, Modality
from src.errors import ConfigurationError, ExprSyntaxError, MalformedValueError

TAG = "lts"

# Labels must read back as one NAME or NUMBER item of the expression grammar.
LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_']*|[0-9]+(/[0-9]+)?")
KEYWORDS = frozenset({"nu"})


@dataclass(frozen=True)
class LtsValue(FunctorValue):
    """
    Finite set of labelled successors, an element of P_ω(A x X).

    Attributes:
        successors: The (label, state) pairs; a frozen set, so duplicates
            are impossible and equality ignores order.
    """
    tag: ClassVar[str] = TAG
    successors: frozenset[tuple[str, State]]


def normalize(pairs: Iterable[tuple[str, State]]) -> LtsValue:
    """Collapse a multiset of (label, state) pairs into an LtsValue."""
    return LtsValue(frozenset((label, state) for label, state in pairs))


def is_label(label: Any) -> bool:
    """Whether ``label`` is an identifier or number other than a keyword."""
    return (
        isinstance(label, str)
        and LABEL.fullmatch(label) is not None
        and label not in KEYWORDS
    )


def lts_lifting(
    labels: Sequence[str], t: LtsValue, args: Sequence[frozenset[State]]
) -> bool:
    """
    Moss lifting of the label tuple ``labels``.

    ``t`` is a member iff every successor is covered by some position
    (its label matches and its state lies in that position's set) and every
    position is hit by some successor.
    """
    for label, state in t.successors:
        if not any(
            label == a and state in members for a, members in zip(labels, args)
        ):
            return False
    for a, members in zip(labels, args):
        if not any(label == a and state in members for label, state in t.successors):
            return False
    return True


@dataclass(frozen=True)
class LtsFunctor(Functor):
    """
    Finitely branching labelled transition systems.

    Attributes:
        labels: Declared labels in canonical order, or None to accept any
            identifier (ordered lexicographically).
    """
    tag: ClassVar[str] = TAG
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        for label in self.labels or ():
            if not is_label(label):
                raise ConfigurationError(f"Invalid label {label!r}.")
        if self.labels is not None and len(set(self.labels)) != len(self.labels):
            raise ConfigurationError(
                f"Labels must be distinct, got {list(self.labels)}."
            )

    @property
    def config(self) -> dict[str, Any]:
        return {} if self.labels is None else {"labels": list(self.labels)}

    def label_key(self, label: str) -> tuple[int, str]:
        """Sort key of a label: declaration order if declared, else the text."""
        if self.labels is not None and label in self.labels:
            return self.labels.index(label), label
        return len(self.labels or ()), label

    def _check_label(self, label: Any) -> None:
        if not is_label(label):
            raise ValueError(f"Expected a label, got {label!r}.")
        if self.labels is not None and label not in self.labels:
            raise ValueError(
                f"Unknown label {label!r}, expected one of {list(self.labels)}."
            )

    # --- Modalities ---

    def make_modality(self, payload: Sequence[Any]) -> Modality:
        for label in payload:
            self._check_label(label)
        return Modality(TAG, tuple(payload), len(payload))

    def parse_modality(self, items: Sequence[str]) -> Modality:
        try:
            return self.make_modality(items)
        except ValueError as error:
            raise ExprSyntaxError(str(error)) from None

    def format_modality(self, op: Modality) -> str:
        return "[" + ",".join(op.payload) + "]"

    # --- Values ---

    def value(self, pairs: Iterable[tuple[str, State]]) -> LtsValue:
        """
        Build a normalized value, checking the labels.

        Raises:
            MalformedValueError: On an unknown label.
        """
        result = normalize(pairs)
        for label, _ in result.successors:
            try:
                self._check_label(label)
            except ValueError as error:
                raise MalformedValueError(str(error)) from None
        return result

    def sorted_successors(
        self, t: LtsValue, carrier: Carrier
    ) -> list[tuple[str, State]]:
        """Return the successors sorted by (label, state) canonical order."""
        return sorted(
            t.successors,
            key=lambda pair: (self.label_key(pair[0]), carrier.index(pair[1])),
        )

    def support(self, t: FunctorValue) -> frozenset[State]:
        assert isinstance(t, LtsValue)
        return frozenset(state for _, state in t.successors)

    def contains(
        self, op: Modality, t: FunctorValue, sets: Sequence[frozenset[State]]
    ) -> bool:
        assert isinstance(t, LtsValue)
        return lts_lifting(op.payload, t, sets)

    def apply(self, op: Modality, args: Sequence[State]) -> FunctorValue:
        return normalize(zip(op.payload, args))

    def _decompose(
        self, t: FunctorValue, carrier: Carrier
    ) -> tuple[Modality, list[State]]:
        assert isinstance(t, LtsValue)
        pairs = self.sorted_successors(t, carrier)
        op = Modality(TAG, tuple(label for label, _ in pairs), len(pairs))
        return op, [state for _, state in pairs]

    def _map_value(
        self, t: FunctorValue, f: Mapping[State, State]
    ) -> FunctorValue:
        assert isinstance(t, LtsValue)
        return normalize((label, f[state]) for label, state in t.successors)
