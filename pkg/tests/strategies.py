"""Hypothesis strategies for coalgebras, values, expressions and flat systems."""
from hypothesis import strategies as st

from src.algorithms.semantics.flattening import Equation, FlatSystem
from src.data_structures.coalgebras.coalgebra import Coalgebra
from src.data_structures.expressions.expr import Modal, Nu, Var
from src.data_structures.functors.dfa import DfaFunctor
from src.data_structures.functors.dist import DistFunctor
from src.data_structures.functors.lts import LtsFunctor
from tests.helpers import DIST_WEIGHTS, FUNCTORS, modalities_for

BINDER_NAMES = ["x", "y", "z"]


def functors():
    """One of the four test functor instances."""
    return st.sampled_from(FUNCTORS)


@st.composite
def values(draw, functor, states, max_support=2):
    """A value of ``functor`` over the given states."""
    states = list(states)
    if isinstance(functor, DfaFunctor):
        nxt = draw(st.lists(st.sampled_from(states), min_size=2, max_size=2))
        return functor.value(draw(st.sampled_from([0, 1])), dict(zip("ab", nxt)))
    if isinstance(functor, LtsFunctor):
        pairs = draw(
            st.lists(
                st.tuples(st.sampled_from(["a", "b"]), st.sampled_from(states)),
                max_size=max_support,
            )
        )
        return functor.value(pairs)
    if isinstance(functor, DistFunctor):
        size = min(max_support, len(states))
        weights = draw(st.sampled_from([w for w in DIST_WEIGHTS if len(w) <= size]))
        support = draw(st.permutations(states))[: len(weights)]
        return functor.value(dict(zip(support, weights)))
    family = draw(
        st.lists(
            st.lists(st.sampled_from(states), max_size=max_support),
            max_size=max_support,
        )
    )
    return functor.value(family)


@st.composite
def coalgebras(draw, functor=None, min_states=1, max_states=4, max_support=2):
    """A coalgebra on states ``s0, s1, ...``."""
    if functor is None:
        functor = draw(functors())
    n = draw(st.integers(min_states, max_states))
    states = [f"s{i}" for i in range(n)]
    structure = {s: draw(values(functor, states, max_support)) for s in states}
    return Coalgebra(functor, states, structure)


@st.composite
def pointed_coalgebras(draw, functor=None, max_states=4, max_support=2):
    """A coalgebra together with one of its states."""
    c = draw(coalgebras(functor, max_states=max_states, max_support=max_support))
    return c, draw(st.sampled_from(list(c.states)))


@st.composite
def expressions(draw, functor, max_binders=2, max_depth=3, max_arity=2):
    """
    A closed, guarded expression.

    Variables are drawn from a small pool, so binders may shadow each other.
    """
    ops = modalities_for(functor, max_arity)
    binders = [0]

    def build(depth, scope, guarded):
        options = []
        if guarded:
            options.append("var")
        if depth < max_depth:
            options.append("modal")
            if binders[0] < max_binders:
                options.append("nu")
        elif scope:
            options.append("leaf")
        if not options:
            options.append("nu")
        choice = draw(st.sampled_from(options))
        if choice == "var":
            return Var(draw(st.sampled_from(guarded)))
        if choice == "nu":
            binders[0] += 1
            name = draw(st.sampled_from(BINDER_NAMES))
            inner_scope = [n for n in scope if n != name] + [name]
            inner_guarded = [n for n in guarded if n != name]
            return Nu(name, build(depth + 1, inner_scope, inner_guarded))
        op = draw(st.sampled_from(ops))
        if choice == "leaf":
            args = [Var(draw(st.sampled_from(scope))) for _ in range(op.arity)]
        else:
            args = [build(depth + 1, scope, list(scope)) for _ in range(op.arity)]
        return Modal(op, args)

    return build(0, [], [])


@st.composite
def flat_systems(draw, functor, max_variables=2, max_arity=2):
    """A flat system on variables ``z1, z2, ...``."""
    ops = modalities_for(functor, max_arity)
    k = draw(st.integers(1, max_variables))
    variables = [f"z{i + 1}" for i in range(k)]
    equations = []
    for variable in variables:
        op = draw(st.sampled_from(ops))
        args = draw(
            st.lists(
                st.sampled_from(variables), min_size=op.arity, max_size=op.arity
            )
        )
        equations.append(Equation(variable, op, tuple(args)))
    return FlatSystem.of(equations)
