from __future__ import annotations
from dataclasses import dataclass
from typing import Any, ClassVar, Iterable, Mapping, Sequence

from src.data_structures.carriers.carrier import Carrier, State
from src.data_structures.functors.signature import Functor, FunctorValue, Modality
from src.errors import ExprSyntaxError

TAG = "mon"


@dataclass(frozen=True)
class MonNbhdValue(FunctorValue):
    """
    Upward closed family of sets, represented by its minimal elements.

    Attributes:
        minimal_sets: Antichain of finite state sets; no member contains
            another.
    """
    tag: ClassVar[str] = TAG
    minimal_sets: frozenset[frozenset[State]]


def minimize(sets: Iterable[Iterable[State]]) -> frozenset[frozenset[State]]:
    """Keep only the inclusion-minimal sets of a family."""
    family = {frozenset(s) for s in sets}
    return frozenset(s for s in family if not any(o < s for o in family))


def normalize(sets: Iterable[Iterable[State]]) -> MonNbhdValue:
    """Build a MonNbhdValue from any generating family."""
    return MonNbhdValue(minimize(sets))


def split_groups(
    sizes: Sequence[int], args: Sequence[Any]
) -> list[list[Any]]:
    """Cut a flat argument list into consecutive groups of the given sizes."""
    groups, start = [], 0
    for size in sizes:
        groups.append(list(args[start:start + size]))
        start += size
    return groups


def mon_lifting(
    sizes: Sequence[int], t: MonNbhdValue, args: Sequence[frozenset[State]]
) -> bool:
    """
    Moss lifting of the group sizes ``sizes``.

    With arguments grouped as A_ij, ``t`` is a member iff
    (a) for each group i some minimal set of ``t`` lies in the union of the
    A_ij, and (b) every minimal set B of ``t`` meets all A_ij of some group i.
    Condition (b) is upward closed in B, so checking the minimal sets covers
    the whole neighbourhood.
    """
    groups = split_groups(sizes, args)
    for group in groups:
        union = frozenset().union(*group)
        if not any(minimal <= union for minimal in t.minimal_sets):
            return False
    for minimal in t.minimal_sets:
        if not any(all(minimal & a for a in group) for group in groups):
            return False
    return True


@dataclass(frozen=True)
class MonFunctor(Functor):
    """Monotone neighbourhood functor, restricted to finitely generated values."""
    tag: ClassVar[str] = TAG

    @property
    def config(self) -> dict[str, Any]:
        return {}

    # --- Modalities ---

    def make_modality(self, payload: Sequence[Any]) -> Modality:
        sizes = tuple(payload)
        if not all(isinstance(k, int) and k >= 0 for k in sizes):
            raise ValueError(f"Expected non-negative group sizes, got {list(sizes)}.")
        return Modality(TAG, sizes, sum(sizes))

    def parse_modality(self, items: Sequence[str]) -> Modality:
        if not all(item.isdigit() for item in items):
            raise ExprSyntaxError(
                f"Expected group sizes for a mon modality, got [{','.join(items)}]"
            )
        return self.make_modality([int(item) for item in items])

    def format_modality(self, op: Modality) -> str:
        return "[" + ",".join(str(k) for k in op.payload) + "]"

    # --- Values ---

    def value(self, sets: Iterable[Iterable[State]]) -> MonNbhdValue:
        """Build a normalized value from a generating family."""
        return normalize(sets)

    def sorted_sets(
        self, t: MonNbhdValue, carrier: Carrier
    ) -> list[list[State]]:
        """Return the minimal sets, each in carrier order, in canonical order."""
        ordered = [carrier.sorted(s) for s in t.minimal_sets]
        return sorted(ordered, key=lambda s: [carrier.index(x) for x in s])

    def support(self, t: FunctorValue) -> frozenset[State]:
        assert isinstance(t, MonNbhdValue)
        return frozenset().union(*t.minimal_sets)

    def contains(
        self, op: Modality, t: FunctorValue, sets: Sequence[frozenset[State]]
    ) -> bool:
        assert isinstance(t, MonNbhdValue)
        return mon_lifting(op.payload, t, sets)

    def apply(self, op: Modality, args: Sequence[State]) -> FunctorValue:
        return normalize(split_groups(op.payload, args))

    def _decompose(
        self, t: FunctorValue, carrier: Carrier
    ) -> tuple[Modality, list[State]]:
        assert isinstance(t, MonNbhdValue)
        ordered = self.sorted_sets(t, carrier)
        op = self.make_modality([len(s) for s in ordered])
        return op, [state for s in ordered for state in s]

    def _map_value(
        self, t: FunctorValue, f: Mapping[State, State]
    ) -> FunctorValue:
        # B is in Tf(t) iff f^-1[B] contains a minimal set M iff f[M] <= B.
        assert isinstance(t, MonNbhdValue)
        return normalize({f[state] for state in s} for s in t.minimal_sets)
