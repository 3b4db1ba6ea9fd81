"""Exhaustive small-scale enumerations and shared sample coalgebras."""
from fractions import Fraction
from itertools import chain, combinations, permutations, product
from pathlib import Path

from src.cli.formats import read_coalgebra
from src.data_structures.coalgebras.coalgebra import Coalgebra
from src.data_structures.expressions.parser import parse
from src.data_structures.functors.dfa import DfaFunctor
from src.data_structures.functors.dist import DistFunctor
from src.data_structures.functors.lts import LtsFunctor
from src.data_structures.functors.mon import MonFunctor

DATA = Path(__file__).parent / "data"

DFA = DfaFunctor(("a", "b"))
LTS = LtsFunctor(("a", "b"))
DIST = DistFunctor()
MON = MonFunctor()
FUNCTORS = [DFA, LTS, DIST, MON]
FUNCTOR_IDS = ["dfa", "lts", "dist", "mon"]

DIST_WEIGHTS = [
    (Fraction(1),),
    (Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 3), Fraction(2, 3)),
    (Fraction(2, 3), Fraction(1, 3)),
    (Fraction(1, 6), Fraction(5, 6)),
    (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)),
    (Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)),
]

MON_SIZES = [(), (0,), (1,), (2,), (1, 1), (0, 1), (2, 1), (1, 1, 1), (3,)]


def read_data(name):
    """Return the text of a file under tests/data."""
    return (DATA / name).read_text(encoding="utf-8")


def load_coalgebra(name):
    """Load a golden coalgebra file, returning (coalgebra, initial)."""
    return read_coalgebra(read_data(name))


def parse_data(name, functor):
    """Parse a golden expression file."""
    return parse(read_data(name), functor)


def subsets(states, max_size=None):
    """Every subset of ``states`` (up to ``max_size`` members) as frozensets."""
    items = list(states)
    top = len(items) if max_size is None else min(max_size, len(items))
    return [
        frozenset(c)
        for c in chain.from_iterable(combinations(items, k) for k in range(top + 1))
    ]


def modalities_for(functor, max_arity=3):
    """A representative list of modalities of small arity."""
    if isinstance(functor, DfaFunctor):
        return [functor.make_modality((0,)), functor.make_modality((1,))]
    if isinstance(functor, LtsFunctor):
        labels = functor.labels or ("a", "b")
        return [
            functor.make_modality(word)
            for n in range(max_arity + 1)
            for word in product(labels, repeat=n)
        ]
    if isinstance(functor, DistFunctor):
        return [
            functor.make_modality(w) for w in DIST_WEIGHTS if len(w) <= max_arity
        ]
    return [functor.make_modality(s) for s in MON_SIZES if sum(s) <= max_arity]


def values_for(functor, states, max_support=2):
    """Enumerate values over ``states`` with small support."""
    states = list(states)
    if isinstance(functor, DfaFunctor):
        return [
            functor.value(bit, dict(zip(functor.alphabet, nxt)))
            for bit in (0, 1)
            for nxt in product(states, repeat=len(functor.alphabet))
        ]
    if isinstance(functor, LtsFunctor):
        labels = functor.labels or ("a", "b")
        pairs = list(product(labels, states))
        return [functor.value(s) for s in subsets(pairs, max_support)]
    if isinstance(functor, DistFunctor):
        found = {}
        for weights in DIST_WEIGHTS:
            if len(weights) > max_support:
                continue
            for support in permutations(states, len(weights)):
                found[functor.value(dict(zip(support, weights)))] = None
        return list(found)
    found = {}
    for family in subsets(subsets(states, max_support), max_support):
        found[functor.value(family)] = None
    return list(found)


def all_maps(source, target):
    """Every function from ``source`` to ``target`` as a dictionary."""
    source = list(source)
    return [dict(zip(source, image)) for image in product(target, repeat=len(source))]


# --- Sample Coalgebras ---

def even_b():
    """The two-state automaton accepting words with an even number of b."""
    return Coalgebra(
        DFA,
        ["x1", "x2"],
        {
            "x1": DFA.value(1, {"a": "x1", "b": "x2"}),
            "x2": DFA.value(0, {"a": "x2", "b": "x1"}),
        },
    )


def deadlocks():
    """An LTS with two deadlocked states and one looping state."""
    return Coalgebra(
        LTS,
        ["p", "q", "r"],
        {
            "p": LTS.value([]),
            "q": LTS.value([]),
            "r": LTS.value([("a", "r")]),
        },
    )


def markov():
    """The three-state Markov chain of the golden file."""
    half, third, sixth = Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)
    return Coalgebra(
        DIST,
        ["x", "y", "z"],
        {
            "x": DIST.value({"x": 2 * third, "y": third}),
            "y": DIST.value({"x": sixth, "y": third, "z": half}),
            "z": DIST.value({"x": Fraction(1, 4), "z": Fraction(3, 4)}),
        },
    )


def neighbourhoods():
    """A monotone neighbourhood frame with a redundant copy of state u."""
    return Coalgebra(
        MON,
        ["u", "v", "u2"],
        {
            "u": MON.value([["v"], ["u", "v"]]),
            "v": MON.value([[]]),
            "u2": MON.value([["v"]]),
        },
    )


SAMPLES = [even_b, deadlocks, markov, neighbourhoods]
SAMPLE_IDS = ["even_b", "deadlocks", "markov", "neighbourhoods"]
