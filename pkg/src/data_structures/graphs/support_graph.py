from __future__ import annotations
from collections import deque
from typing import Iterable

from src.data_structures.carriers.carrier import State


class Node:
    """
    A state in the support graph.

    Attributes:
        state: The coalgebra state.
        successors: States referenced by the state's one-step behaviour.
    """
    state: State
    successors: list[Node]

    def __init__(self, state: State):
        """Initialize a graph node."""
        self.state = state
        self.successors = []

    def __repr__(self) -> str:
        """Return a string representation of the node."""
        return f"Node({self.state!r})"


class SupportGraph:
    """
    Directed graph with an edge x -> y whenever y is in the support of ξ(x).

    Successor lists keep insertion order, so traversals are deterministic
    once the graph is built in carrier order.

    Attributes:
        _adj_list: Dictionary mapping states to their Node objects.
    """
    _adj_list: dict[State, Node]

    def __init__(self) -> None:
        """Initialize an empty graph."""
        self._adj_list = {}

    def __len__(self) -> int:
        """Return the total number of nodes in the graph."""
        return len(self._adj_list)

    def __contains__(self, state: State) -> bool:
        """Check if a node for the given state exists in the graph."""
        return state in self._adj_list

    # --- Modification Methods ---

    def add_node(self, state: State) -> None:
        """
        Add a new node to the graph if it does not already exist.

        Args:
            state: The state to be added as a node.
        """
        if state not in self._adj_list:
            self._adj_list[state] = Node(state)

    def add_edges(self, source: State, targets: Iterable[State]) -> None:
        """
        Add edges from ``source`` to each target, skipping duplicates.
        Nodes are created if they don't exist.

        Args:
            source: The state whose behaviour references the targets.
            targets: The referenced states, in the order to traverse them.
        """
        self.add_node(source)
        node = self._adj_list[source]
        for target in targets:
            self.add_node(target)
            target_node = self._adj_list[target]
            if target_node not in node.successors:
                node.successors.append(target_node)

    # --- Traversal Methods ---

    def bfs(self, start: State) -> list[State]:
        """
        Perform a Breadth-First Search from the given state.

        Args:
            start: The state to start the traversal from.

        Returns:
            The reachable states in BFS order, ``start`` first.
        """
        if start not in self._adj_list:
            return []

        visited_order = []
        visited = {start}
        queue: deque[Node] = deque([self._adj_list[start]])

        while queue:
            current = queue.popleft()
            visited_order.append(current.state)
            for successor in current.successors:
                if successor.state not in visited:
                    visited.add(successor.state)
                    queue.append(successor)

        return visited_order
