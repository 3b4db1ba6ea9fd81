from itertools import product

import pytest
from src.data_structures.carriers.carrier import Carrier
from src.data_structures.functors.dfa import DfaFunctor, DfaValue, dfa_lifting
from src.errors import (
    ArityError,
    ConfigurationError,
    ExprSyntaxError,
    FunctorMismatchError,
    MalformedValueError,
    UnknownStateError,
)
from tests.helpers import subsets

# --- Constants ---
ALPHABET = ("a", "b")
STATES = ["x1", "x2"]

LIFTING_CASES = [
    # (bit, output, next, args, expected)
    (1, 1, ("x1", "x2"), [{"x1"}, {"x2"}], True),
    (1, 1, ("x1", "x2"), [{"x1", "x2"}, {"x2"}], True),
    (1, 1, ("x1", "x2"), [{"x2"}, {"x2"}], False),
    (0, 1, ("x1", "x2"), [{"x1"}, {"x2"}], False),
    (0, 0, ("x2", "x2"), [{"x2"}, {"x1", "x2"}], True),
]


# --- Fixtures ---
@pytest.fixture
def dfa():
    """Return the automaton functor over ALPHABET."""
    return DfaFunctor(ALPHABET)


@pytest.fixture
def carrier():
    """Return a carrier on STATES."""
    return Carrier(STATES)


# --- Tests: Configuration ---
def test_alphabet_must_be_distinct():
    """Repeated letters are a configuration error."""
    with pytest.raises(ConfigurationError):
        DfaFunctor(("a", "a"))


def test_config(dfa):
    """The configuration records the alphabet."""
    assert dfa.config == {"alphabet": ["a", "b"]}
    assert dfa == DfaFunctor(("a", "b"))
    assert dfa != DfaFunctor(("b", "a"))


# --- Tests: Modalities ---
def test_modality_arity_is_alphabet_size(dfa):
    """The modality [b] takes one argument per letter."""
    op = dfa.make_modality((1,))
    assert op.arity == 2
    assert dfa.format_modality(op) == "[1]"


@pytest.mark.parametrize("items", [["2"], ["0", "1"], ["a"], []])
def test_parse_modality_rejects(dfa, items):
    """Only [0] and [1] are automaton modalities."""
    with pytest.raises(ExprSyntaxError):
        dfa.parse_modality(items)


# --- Tests: Values ---
def test_value_from_letter_map(dfa):
    """Values are aligned with the alphabet order."""
    t = dfa.value(1, {"b": "x2", "a": "x1"})
    assert t == DfaValue(1, ("x1", "x2"))
    assert dfa.support(t) == frozenset(STATES)


def test_value_must_be_total(dfa):
    """A successor map missing a letter is malformed."""
    with pytest.raises(MalformedValueError):
        dfa.value(1, {"a": "x1"})


def test_value_bit_checked(dfa):
    """The output must be a bit."""
    with pytest.raises(MalformedValueError):
        dfa.value(2, {"a": "x1", "b": "x1"})


def test_check_value_length(dfa):
    """Values for a different alphabet size are rejected."""
    with pytest.raises(FunctorMismatchError):
        dfa.check_value(DfaValue(1, ("x1",)))


# --- Tests: Lifting ---
@pytest.mark.parametrize("bit, output, nxt, args, expected", LIFTING_CASES)
def test_dfa_lifting(bit, output, nxt, args, expected):
    """Membership checks the output and each successor position."""
    t = DfaValue(output, nxt)
    assert dfa_lifting(bit, t, [frozenset(a) for a in args]) is expected


def test_lifting_is_the_image_of_the_arguments():
    """
    On two states, membership for bit o and sets A_a, A_b is membership in
    the set of values (o, (p, q)) with p in A_a and q in A_b.
    """
    every_value = [
        DfaValue(output, nxt)
        for output in (0, 1)
        for nxt in product(STATES, repeat=len(ALPHABET))
    ]
    for bit, args in product((0, 1), product(subsets(STATES), repeat=2)):
        image = {DfaValue(bit, nxt) for nxt in product(*args)}
        for t in every_value:
            assert dfa_lifting(bit, t, list(args)) is (t in image)


def test_lifting_contains_checks_arity(dfa, carrier):
    """The checked membership test rejects a wrong number of sets."""
    op = dfa.make_modality((1,))
    t = dfa.value(1, {"a": "x1", "b": "x2"})
    with pytest.raises(ArityError):
        dfa.lifting_contains(op, t, [carrier.full()])
    assert dfa.lifting_contains(op, t, [carrier.full(), carrier.full()]) is True


# --- Tests: Singleton Application ---
def test_singleton_apply_and_decompose(dfa, carrier):
    """Decomposition inverts singleton application."""
    op = dfa.make_modality((0,))
    t = dfa.singleton_apply(op, ["x2", "x1"], carrier)
    assert t == DfaValue(0, ("x2", "x1"))
    assert dfa.decompose(t, carrier) == (op, ["x2", "x1"])


def test_singleton_apply_checks_states(dfa, carrier):
    """Arguments outside the carrier are rejected."""
    op = dfa.make_modality((0,))
    with pytest.raises(UnknownStateError):
        dfa.singleton_apply(op, ["x1", "x9"], carrier)


def test_map_value(dfa):
    """The functor acts on successors and keeps the output."""
    t = dfa.value(1, {"a": "x1", "b": "x2"})
    image = dfa.map_value(t, {"x1": 0, "x2": 0})
    assert image == DfaValue(1, (0, 0))
    with pytest.raises(UnknownStateError):
        dfa.map_value(t, {"x1": 0})
