from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, Sequence

from src.data_structures.functors.dfa import DfaFunctor
from src.data_structures.functors.dist import DistFunctor
from src.data_structures.functors.lts import LtsFunctor
from src.data_structures.functors.mon import MonFunctor
from src.data_structures.functors.signature import Functor
from src.errors import ConfigurationError

KINDS = ("dfa", "lts", "dist", "mon")


@dataclass(frozen=True)
class FunctorConfig:
    """
    Declarative description of a functor instance.

    Attributes:
        kind: One of ``dfa``, ``lts``, ``dist``, ``mon``.
        alphabet: Ordered letters; required for ``dfa`` and rejected otherwise.
        labels: Ordered labels; optional for ``lts`` and rejected otherwise.
    """
    kind: str
    alphabet: Optional[tuple[str, ...]] = None
    labels: Optional[tuple[str, ...]] = None

    @classmethod
    def from_options(
        cls,
        kind: str,
        alphabet: Optional[Sequence[str]] = None,
        labels: Optional[Sequence[str]] = None,
    ) -> FunctorConfig:
        """Build a config from loosely typed options (lists, None)."""
        return cls(
            kind,
            tuple(alphabet) if alphabet is not None else None,
            tuple(labels) if labels is not None else None,
        )


def build_functor(config: FunctorConfig) -> Functor:
    """
    Instantiate the functor described by ``config``.

    Raises:
        ConfigurationError: On an unknown kind or misplaced options.
    """
    if config.kind not in KINDS:
        raise ConfigurationError(
            f"Unknown functor {config.kind!r}, expected one of {list(KINDS)}."
        )
    if config.alphabet is not None and config.kind != "dfa":
        raise ConfigurationError(
            f"An alphabet is only valid for dfa, not {config.kind}."
        )
    if config.labels is not None and config.kind != "lts":
        raise ConfigurationError(
            f"Labels are only valid for lts, not {config.kind}."
        )

    if config.kind == "dfa":
        if config.alphabet is None:
            raise ConfigurationError("The dfa functor requires an alphabet.")
        return DfaFunctor(config.alphabet)
    if config.kind == "lts":
        return LtsFunctor(config.labels)
    if config.kind == "dist":
        return DistFunctor()
    return MonFunctor()


def describe(functor: Functor) -> FunctorConfig:
    """Return the config that rebuilds ``functor``."""
    if isinstance(functor, DfaFunctor):
        return FunctorConfig("dfa", alphabet=functor.alphabet)
    if isinstance(functor, LtsFunctor):
        return FunctorConfig("lts", labels=functor.labels)
    return FunctorConfig(functor.tag)
