"""
On-disk formats: JSON coalgebra files and expression files.

A coalgebra file looks like

    {
      "functor": "dfa",
      "alphabet": ["a", "b"],
      "states": ["x1", "x2"],
      "initial": "x1",
      "transitions": {
        "x1": {"out": 1, "next": {"a": "x1", "b": "x2"}},
        ...
      }
    }

with lts transitions as ``[[label, state], ...]``, dist transitions as
``[["p/q", state], ...]`` and mon transitions as ``[[state, ...], ...]``.
Expression files may start with a ``# functor: KIND; alphabet=a,b`` line.
"""
from __future__ import annotations
from typing import Any, Optional
import json
import re

from src.data_structures.carriers.carrier import Carrier, State
from src.data_structures.coalgebras.coalgebra import Coalgebra
from src.data_structures.expressions.expr import Expr, to_text
from src.data_structures.functors.dfa import DfaFunctor, DfaValue
from src.data_structures.functors.dist import (
    DistFunctor,
    DistValue,
    format_rational,
    parse_rational,
)
from src.data_structures.functors.lts import LtsFunctor, LtsValue
from src.data_structures.functors.mon import MonFunctor, MonNbhdValue
from src.data_structures.functors.registry import (
    FunctorConfig,
    build_functor,
    describe,
)
from src.data_structures.functors.signature import Functor, FunctorValue
from src.errors import CoalgebraError, ConfigurationError

_HEADER = re.compile(r"#\s*functor:\s*(?P<body>.*)")


# --- Coalgebra Files ---

def read_coalgebra(text: str) -> tuple[Coalgebra, Optional[State]]:
    """
    Parse a coalgebra file.

    Returns:
        The coalgebra, normalized, and its ``initial`` state if given.

    Raises:
        ConfigurationError: On invalid JSON, missing fields, unknown states
            or malformed transitions.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise ConfigurationError(
            f"Invalid JSON at line {error.lineno}, column {error.colno}: {error.msg}."
        ) from None
    if not isinstance(document, dict):
        raise ConfigurationError("A coalgebra file must hold a JSON object.")
    for key in ("functor", "states", "transitions"):
        if key not in document:
            raise ConfigurationError(f"Missing field {key!r}.")
    functor = build_functor(
        FunctorConfig.from_options(
            document["functor"], document.get("alphabet"), document.get("labels")
        )
    )
    states = document["states"]
    transitions = document["transitions"]
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise ConfigurationError("Field 'states' must be a list of strings.")
    if not isinstance(transitions, dict):
        raise ConfigurationError("Field 'transitions' must be an object.")
    try:
        structure = {
            state: _decode_value(functor, transitions[state])
            for state in states
            if state in transitions
        }
        coalgebra = Coalgebra(functor, states, structure)
        extra = sorted(set(transitions) - set(states))
        if extra:
            raise ConfigurationError(
                f"Transitions given for unknown state {extra[0]!r}."
            )
        initial = document.get("initial")
        if initial is not None:
            coalgebra.carrier.index(initial)
    except ConfigurationError:
        raise
    except (CoalgebraError, ValueError, TypeError, KeyError) as error:
        raise ConfigurationError(f"Malformed coalgebra: {error}") from None
    return coalgebra, initial


def write_coalgebra(c: Coalgebra, initial: Optional[State] = None) -> str:
    """
    Render a coalgebra file; states are written with ``str``.

    Raises:
        ConfigurationError: If two states render to the same text.
    """
    rename = {state: str(state) for state in c}
    if len(set(rename.values())) != len(rename):
        raise ConfigurationError("States do not have distinct names.")
    carrier = Carrier(rename[s] for s in c)
    config = describe(c.functor)
    document: dict[str, Any] = {"functor": config.kind}
    if config.alphabet is not None:
        document["alphabet"] = list(config.alphabet)
    if config.labels is not None:
        document["labels"] = list(config.labels)
    document["states"] = list(carrier.states)
    if initial is not None:
        document["initial"] = rename[initial]
    document["transitions"] = {
        rename[s]: _encode_value(
            c.functor, c.functor.map_value(c.xi(s), rename), carrier
        )
        for s in c
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def _decode_value(functor: Functor, raw: Any) -> FunctorValue:
    if isinstance(functor, DfaFunctor):
        if not isinstance(raw, dict) or "out" not in raw or "next" not in raw:
            raise ConfigurationError("A dfa transition needs 'out' and 'next'.")
        return functor.value(raw["out"], raw["next"])
    if isinstance(functor, LtsFunctor):
        return functor.value((label, state) for label, state in raw)
    if isinstance(functor, DistFunctor):
        weights: dict[State, Any] = {}
        for weight, state in raw:
            weights[state] = weights.get(state, 0) + parse_rational(str(weight))
        return functor.value(weights)
    if isinstance(functor, MonFunctor):
        return functor.value(raw)
    raise ConfigurationError(f"Unsupported functor {functor.tag!r}.")


def _encode_value(functor: Functor, t: FunctorValue, carrier: Carrier) -> Any:
    if isinstance(functor, DfaFunctor) and isinstance(t, DfaValue):
        return {"out": t.output, "next": dict(zip(functor.alphabet, t.next))}
    if isinstance(functor, LtsFunctor) and isinstance(t, LtsValue):
        pairs = functor.sorted_successors(t, carrier)
        return [[label, state] for label, state in pairs]
    if isinstance(functor, DistFunctor) and isinstance(t, DistValue):
        return [
            [format_rational(weight), state]
            for state, weight in functor.sorted_weights(t, carrier)
        ]
    if isinstance(functor, MonFunctor) and isinstance(t, MonNbhdValue):
        return functor.sorted_sets(t, carrier)
    raise ConfigurationError(f"Unsupported functor {functor.tag!r}.")


# --- Expression Files ---

def format_header(config: FunctorConfig) -> str:
    """Render the ``# functor: ...`` line of an expression file."""
    parts = [config.kind]
    if config.alphabet is not None:
        parts.append("alphabet=" + ",".join(config.alphabet))
    if config.labels is not None:
        parts.append("labels=" + ",".join(config.labels))
    return "# functor: " + "; ".join(parts)


def read_header(text: str) -> Optional[FunctorConfig]:
    """
    Return the functor config recorded in an expression file, if any.

    Raises:
        ConfigurationError: If the header names an unknown option.
    """
    lines = text.splitlines()
    if not lines:
        return None
    match = _HEADER.fullmatch(lines[0].strip())
    if match is None:
        return None
    kind, *options = [part.strip() for part in match.group("body").split(";")]
    values: dict[str, list[str]] = {}
    for option in options:
        key, _, raw = option.partition("=")
        if key.strip() not in ("alphabet", "labels"):
            raise ConfigurationError(f"Unknown header option {key.strip()!r}.")
        values[key.strip()] = [item.strip() for item in raw.split(",") if item.strip()]
    return FunctorConfig.from_options(
        kind, values.get("alphabet"), values.get("labels")
    )


def write_expression(e: Expr, functor: Functor) -> str:
    """Render an expression file with its functor header."""
    return f"{format_header(describe(functor))}\n{to_text(e)}\n"
