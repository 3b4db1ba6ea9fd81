from __future__ import annotations
from typing import Hashable, Iterator, Mapping
import logging

from src.algorithms.kleene.synthesis import synthesize
from src.data_structures.carriers.carrier import Carrier, State
from src.data_structures.coalgebras.coalgebra import Coalgebra, injection
from src.data_structures.expressions.expr import Expr
from src.data_structures.functors.signature import Functor, FunctorValue
from src.errors import UnknownStateError

logger = logging.getLogger(__name__)


class Partition:
    """
    Partition of a carrier into blocks.

    Block ids are renumbered by first occurrence in carrier order, so two
    partitions with the same blocks compare equal.

    Attributes:
        carrier: The partitioned carrier.
        _block: Block id per state.
    """
    carrier: Carrier
    _block: dict[State, int]

    def __init__(self, carrier: Carrier, block_of: Mapping[State, Hashable]) -> None:
        """
        Initialize a partition from any block labelling.

        Raises:
            UnknownStateError: If a state has no block.
        """
        self.carrier = carrier
        self._block = {}
        ids: dict[Hashable, int] = {}
        for state in carrier:
            if state not in block_of:
                raise UnknownStateError(f"State {state!r} has no block.")
            label = block_of[state]
            if label not in ids:
                ids[label] = len(ids)
            self._block[state] = ids[label]

    def __len__(self) -> int:
        """Return the number of blocks."""
        return len(set(self._block.values()))

    def __iter__(self) -> Iterator[list[State]]:
        return iter(self.blocks())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.carrier == other.carrier and self._block == other._block

    def __repr__(self) -> str:
        return f"Partition({self.blocks()!r})"

    def block(self, state: State) -> int:
        """
        Return the block id of a state.

        Raises:
            UnknownStateError: If the state is not in the carrier.
        """
        try:
            return self._block[state]
        except KeyError:
            raise UnknownStateError(f"Unknown state {state!r}.") from None

    def block_map(self) -> dict[State, int]:
        """Return the quotient map as a dictionary."""
        return dict(self._block)

    def blocks(self) -> list[list[State]]:
        """Return the blocks, each in carrier order, ordered by first member."""
        result: list[list[State]] = [[] for _ in range(len(self))]
        for state in self.carrier:
            result[self._block[state]].append(state)
        return result

    def equivalent(self, x: State, y: State) -> bool:
        """Check whether two states share a block."""
        return self.block(x) == self.block(y)

    def as_relation(self) -> frozenset[tuple[State, State]]:
        """Return the equivalence relation as a set of pairs."""
        return frozenset(
            (x, y) for block in self.blocks() for x in block for y in block
        )


def refine_once(c: Coalgebra, partition: Partition) -> Partition:
    """
    Split every block by the image of each state's behaviour under the
    quotient map.
    """
    block_map = partition.block_map()
    signatures: dict[State, tuple[int, FunctorValue]] = {
        x: (block_map[x], c.functor.map_value(c.xi(x), block_map)) for x in c
    }
    return Partition(c.carrier, signatures)


def behavioural_equivalence(c: Coalgebra) -> Partition:
    """
    Compute behavioural equivalence on a finite coalgebra.

    Starts from the single-block partition and refines until the number of
    blocks stops growing.

    Returns:
        The coarsest stable partition; states are behaviourally equivalent
        iff they share a block.
    """
    partition = Partition(c.carrier, {x: 0 for x in c})
    rounds = 0
    while True:
        rounds += 1
        refined = refine_once(c, partition)
        if len(refined) == len(partition):
            logger.debug(
                "partition stable after %d rounds with %d blocks", rounds, len(refined)
            )
            return refined
        partition = refined


def quotient(c: Coalgebra, partition: Partition) -> Coalgebra:
    """
    Return the coalgebra on the blocks of a stable partition.

    Each block is named by its first member in carrier order.

    Raises:
        ValueError: If members of a block have different behaviours modulo
            the partition.
    """
    representative = {x: block[0] for block in partition.blocks() for x in block}
    structure: dict[State, FunctorValue] = {}
    for block in partition.blocks():
        images = {c.functor.map_value(c.xi(x), representative) for x in block}
        if len(images) != 1:
            raise ValueError(f"Block {block!r} is not closed under the structure.")
        structure[block[0]] = images.pop()
    return Coalgebra(c.functor, [block[0] for block in partition.blocks()], structure)


def minimize(c: Coalgebra) -> tuple[Coalgebra, dict[State, State]]:
    """
    Return the quotient by behavioural equivalence and the quotient map.
    """
    partition = behavioural_equivalence(c)
    representative = {x: block[0] for block in partition.blocks() for x in block}
    return quotient(c, partition), representative


def minimal_model(e: Expr, functor: Functor) -> tuple[Coalgebra, State]:
    """
    Return a minimal pointed model of a closed, guarded expression.
    """
    model, state = synthesize(e, functor)
    reduced, representative = minimize(model)
    return reduced, representative[state]


def equivalent_states(c1: Coalgebra, x: State, c2: Coalgebra, y: State) -> bool:
    """
    Decide behavioural equivalence of states in two coalgebras on their
    coproduct.

    Raises:
        FunctorMismatchError: If the functors differ.
        UnknownStateError: If a state is missing.
    """
    c1.carrier.index(x)
    c2.carrier.index(y)
    partition = behavioural_equivalence(c1.coproduct(c2))
    return partition.equivalent(injection(0, x), injection(1, y))
