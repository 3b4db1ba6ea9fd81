import pytest
from src.data_structures.functors.dfa import DfaFunctor
from src.data_structures.functors.dist import DistFunctor
from src.data_structures.functors.lts import LtsFunctor
from src.data_structures.functors.mon import MonFunctor
from src.data_structures.functors.registry import (
    FunctorConfig,
    build_functor,
    describe,
)
from src.errors import ConfigurationError

# --- Constants ---
VALID_CONFIGS = [
    (FunctorConfig("dfa", alphabet=("a", "b")), DfaFunctor(("a", "b"))),
    (FunctorConfig("lts"), LtsFunctor()),
    (FunctorConfig("lts", labels=("a",)), LtsFunctor(("a",))),
    (FunctorConfig("dist"), DistFunctor()),
    (FunctorConfig("mon"), MonFunctor()),
]

INVALID_CONFIGS = [
    FunctorConfig("nfa"),
    FunctorConfig("dfa"),
    FunctorConfig("dist", alphabet=("a",)),
    FunctorConfig("mon", labels=("a",)),
]


# --- Tests ---
@pytest.mark.parametrize("config, expected", VALID_CONFIGS)
def test_build_functor(config, expected):
    """Each valid configuration builds the matching instance."""
    assert build_functor(config) == expected


@pytest.mark.parametrize("config, functor", VALID_CONFIGS)
def test_describe_inverts_build(config, functor):
    """describe returns the configuration of an instance."""
    assert describe(functor) == config


@pytest.mark.parametrize("config", INVALID_CONFIGS)
def test_build_functor_rejects(config):
    """Unknown kinds and misplaced options are configuration errors."""
    with pytest.raises(ConfigurationError):
        build_functor(config)


def test_from_options_normalizes_lists():
    """Lists become tuples so configurations compare and hash."""
    config = FunctorConfig.from_options("dfa", ["a", "b"])
    assert config == FunctorConfig("dfa", alphabet=("a", "b"))
    assert hash(config) == hash(FunctorConfig("dfa", alphabet=("a", "b")))
