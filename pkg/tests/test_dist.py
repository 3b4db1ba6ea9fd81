from fractions import Fraction
from itertools import product

import pytest
from src.data_structures.carriers.carrier import Carrier
from src.data_structures.functors.dist import (
    DistFunctor,
    DistValue,
    dist_lifting,
    format_rational,
    parse_rational,
)
from src.errors import ExprSyntaxError, FunctorMismatchError, MalformedValueError
from tests.helpers import subsets

# --- Constants ---
STATES = ["x", "y", "z"]
HALF, THIRD, SIXTH = Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)

RATIONALS = [("2/3", Fraction(2, 3)), ("1", Fraction(1)), (" 4/6 ", Fraction(2, 3))]
BAD_RATIONALS = ["", "a", "1/", "1/0", "-1/2", "0.5"]

PAIR_WEIGHTS = sorted(
    {
        (Fraction(a, b), 1 - Fraction(a, b))
        for b in range(2, 7)
        for a in range(1, b)
    }
)
DISTRIBUTIONS = list(
    {
        DistFunctor().value(
            dict(zip(STATES, (Fraction(i, d), Fraction(j, d), Fraction(d - i - j, d))))
        )
        for d in range(1, 7)
        for i in range(d + 1)
        for j in range(d + 1 - i)
    }
)


# --- Fixtures ---
@pytest.fixture
def dist():
    """Return the distribution functor."""
    return DistFunctor()


@pytest.fixture
def carrier():
    """Return a carrier on STATES."""
    return Carrier(STATES)


# --- Tests: Rationals ---
@pytest.mark.parametrize("text, expected", RATIONALS)
def test_parse_rational(text, expected):
    """Rationals parse exactly."""
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", BAD_RATIONALS)
def test_parse_rational_rejects(text):
    """Anything but p/q or an integer is rejected."""
    with pytest.raises(ValueError):
        parse_rational(text)


def test_format_rational():
    """Integers print without a denominator."""
    assert format_rational(Fraction(2, 6)) == "1/3"
    assert format_rational(Fraction(1)) == "1"


# --- Tests: Modalities ---
def test_parse_modality(dist):
    """Weights become the payload, one argument per weight."""
    op = dist.parse_modality(["2/3", "1/3"])
    assert op.payload == (Fraction(2, 3), Fraction(1, 3))
    assert op.arity == 2
    assert dist.format_modality(op) == "[2/3,1/3]"


@pytest.mark.parametrize("items", [["1/2"], ["1/2", "0", "1/2"], ["x"], []])
def test_parse_modality_rejects(dist, items):
    """Weights must be positive and sum to one."""
    with pytest.raises(ExprSyntaxError):
        dist.parse_modality(items)


def test_check_modality_rejects_foreign_payload(dist):
    """A modality whose weights do not sum to one is not a dist modality."""
    op = dist.make_modality((HALF, HALF))
    bad = type(op)(op.tag, (HALF, THIRD), 2)
    with pytest.raises(FunctorMismatchError):
        dist.check_modality(bad)


# --- Tests: Values ---
def test_value_drops_zero_weights(dist):
    """Zero weights leave the support."""
    t = dist.value({"x": Fraction(1), "y": Fraction(0)})
    assert dist.support(t) == frozenset({"x"})


@pytest.mark.parametrize(
    "weights", [{"x": HALF}, {"x": Fraction(3, 2), "y": -HALF}]
)
def test_value_rejects_malformed(dist, weights):
    """Weights must be non-negative and sum to one."""
    with pytest.raises(MalformedValueError):
        dist.value(weights)


def test_mass(dist):
    """The mass of a set sums the weights of its members."""
    t = dist.value({"x": SIXTH, "y": THIRD, "z": HALF})
    assert t.mass({"x", "z"}) == Fraction(2, 3)


# --- Tests: Lifting ---
def test_lifting_needs_coupling(dist):
    """Membership asks for a coupling respecting the argument sets."""
    t = dist.value({"x": HALF, "y": HALF})
    op = (THIRD, 2 * THIRD)
    assert dist_lifting(op, t, [frozenset({"x"}), frozenset({"x", "y"})]) is True
    assert dist_lifting(op, t, [frozenset({"y"}), frozenset({"x"})]) is False


def test_lifting_rejects_bad_weights():
    """Weights that do not sum to one are malformed."""
    t = DistValue(frozenset({("x", Fraction(1))}))
    with pytest.raises(MalformedValueError):
        dist_lifting((HALF,), t, [frozenset({"x"})])


def test_exhaustive_instances_are_counted():
    """Denominators up to six give eleven pairs and fifty-five distributions."""
    assert len(PAIR_WEIGHTS) == 11
    assert len(DISTRIBUTIONS) == 55


def test_lifting_exhaustive_closed_form():
    """
    For two weights (p, 1-p) the flow-based membership equals the closed
    form: mu(A1 | A2) = 1, mu(A1) >= p and mu(A2) >= 1 - p.
    """
    all_sets = subsets(STATES)
    for weights, t in product(PAIR_WEIGHTS, DISTRIBUTIONS):
        p, q = weights
        for a1, a2 in product(all_sets, repeat=2):
            expected = (
                t.mass(a1 | a2) == 1 and t.mass(a1) >= p and t.mass(a2) >= q
            )
            assert dist_lifting(weights, t, [a1, a2]) is expected


# --- Tests: Singleton Application ---
def test_singleton_apply_merges_repeats(dist, carrier):
    """Repeated states add their weights."""
    op = dist.make_modality((SIXTH, THIRD, HALF))
    t = dist.singleton_apply(op, ["x", "y", "x"], carrier)
    assert t.as_dict() == {"x": Fraction(2, 3), "y": THIRD}


def test_decompose_orders_by_carrier(dist, carrier):
    """Decomposition lists the support in carrier order."""
    t = dist.value({"z": HALF, "x": HALF})
    op, states = dist.decompose(t, carrier)
    assert states == ["x", "z"]
    assert op.payload == (HALF, HALF)


def test_map_value_pushes_forward(dist):
    """The image distribution adds the weights of identified states."""
    t = dist.value({"x": SIXTH, "y": THIRD, "z": HALF})
    image = dist.map_value(t, {"x": 0, "y": 1, "z": 0})
    assert image.as_dict() == {0: Fraction(2, 3), 1: THIRD}
