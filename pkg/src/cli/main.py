from __future__ import annotations
from pathlib import Path
from typing import Callable, Optional, Sequence
import argparse
import logging
import sys

from src.algorithms.equivalence.expr_equivalence import (
    expr_equiv,
    expr_equiv_by_refinement,
)
from src.algorithms.equivalence.partition_refinement import minimize
from src.algorithms.kleene.extraction import extract
from src.algorithms.kleene.synthesis import synthesize
from src.algorithms.semantics.evaluation import evaluate
from src.algorithms.semantics.flattening import eval_system, flatten
from src.cli.formats import (
    read_coalgebra,
    read_header,
    write_coalgebra,
    write_expression,
)
from src.data_structures.coalgebras.coalgebra import Coalgebra
from src.data_structures.expressions.closure import fischer_ladner
from src.data_structures.expressions.expr import (
    Expr,
    canonical,
    check_wellformed,
    to_text,
)
from src.data_structures.expressions.parser import parse_located
from src.data_structures.functors.registry import (
    KINDS,
    FunctorConfig,
    build_functor,
    describe,
)
from src.data_structures.functors.signature import Functor
from src.errors import (
    CoalgebraError,
    ConfigurationError,
    ExprSyntaxError,
    FunctorMismatchError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INEQUIVALENT = 1
EXIT_ERROR = 2


class LocatedError(Exception):
    """An error already rendered as ``FILE:line:column: message``."""


class OracleDisagreement(Exception):
    """Two decision procedures gave different answers."""


# --- Helpers ---

def _split(option: Optional[str]) -> Optional[list[str]]:
    if option is None:
        return None
    return [item.strip() for item in option.split(",") if item.strip()]


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")
        logger.info("wrote %s", output)


def _functor_for(args: argparse.Namespace, *texts: str) -> Functor:
    """Build the functor from the command line, else from file headers."""
    if getattr(args, "functor", None) is not None:
        config = FunctorConfig.from_options(
            args.functor, _split(args.alphabet), _split(args.labels)
        )
        return build_functor(config)
    headers = {h for h in (read_header(text) for text in texts) if h is not None}
    if not headers:
        raise ConfigurationError(
            "No functor given; pass --functor or add a '# functor:' header."
        )
    if len(headers) > 1:
        raise FunctorMismatchError("Expression files declare different functors.")
    return build_functor(headers.pop())


def _parse_file(
    path: str, text: str, functor: Functor, wellformed: bool = False
) -> Expr:
    """Parse a file; with ``wellformed`` also require a closed, guarded result."""
    try:
        e, positions = parse_located(text, functor)
    except ExprSyntaxError as error:
        raise LocatedError(
            f"{path}:{error.line}:{error.column}: {error.message}"
        ) from None
    if wellformed:
        checked = check_wellformed(e)
        if not checked.is_wellformed:
            line, column = positions.get(checked.path or "root", (1, 1))
            raise LocatedError(f"{path}:{line}:{column}: {checked.violation}")
    return e


def _load_coalgebra(path: str) -> tuple[Coalgebra, Optional[str]]:
    coalgebra, initial = read_coalgebra(_read(path))
    logger.info("read %d states from %s", len(coalgebra), path)
    return coalgebra, None if initial is None else str(initial)


def _check_header(text: str, functor: Functor) -> None:
    header = read_header(text)
    if header is not None and build_functor(header) != functor:
        raise FunctorMismatchError(
            f"Expression is for {header.kind}, coalgebra is for "
            f"{describe(functor).kind}."
        )


# --- Commands ---

def cmd_parse(args: argparse.Namespace) -> int:
    text = _read(args.expr)
    functor = _functor_for(args, text)
    e = _parse_file(args.expr, text, functor, wellformed=True)
    lines = [to_text(canonical(e))]
    if args.flat:
        lines.append(str(flatten(e)))
    if args.closure:
        lines.extend(to_text(member) for member in fischer_ladner(e))
    _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    coalgebra, _ = _load_coalgebra(args.coalgebra)
    text = _read(args.expr)
    _check_header(text, coalgebra.functor)
    e = _parse_file(args.expr, text, coalgebra.functor)
    satisfying = evaluate(e, coalgebra)
    lines = [str(state) for state in satisfying]
    if args.flat or args.oracle:
        system = flatten(e)
        components = eval_system(system, coalgebra)
        if args.oracle and components[0] != satisfying:
            raise OracleDisagreement(
                "Direct and flat-system semantics disagree."
            )
        if args.flat:
            for variable, component in zip(system.variables, components):
                lines.append(
                    " ".join([f"{variable}:"] + [str(s) for s in component])
                )
    _emit("".join(line + "\n" for line in lines), None)
    return EXIT_OK


def cmd_synthesize(args: argparse.Namespace) -> int:
    text = _read(args.expr)
    functor = _functor_for(args, text)
    e = _parse_file(args.expr, text, functor, wellformed=True)
    model, state = synthesize(e, functor)
    _emit(write_coalgebra(model, initial=state), args.output)
    return EXIT_OK


def cmd_extract(args: argparse.Namespace) -> int:
    coalgebra, _ = _load_coalgebra(args.coalgebra)
    e = extract(coalgebra, args.state)
    _emit(write_expression(e, coalgebra.functor), args.output)
    return EXIT_OK


def cmd_equiv(args: argparse.Namespace) -> int:
    left, right = _read(args.left), _read(args.right)
    functor = _functor_for(args, left, right)
    e1 = _parse_file(args.left, left, functor, wellformed=True)
    e2 = _parse_file(args.right, right, functor, wellformed=True)
    verdict = expr_equiv(e1, e2, functor)
    if args.oracle and expr_equiv_by_refinement(e1, e2, functor) != verdict:
        raise OracleDisagreement(
            "Model checking and partition refinement disagree."
        )
    _emit("equivalent\n" if verdict else "inequivalent\n", None)
    return EXIT_OK if verdict else EXIT_INEQUIVALENT


def cmd_minimize(args: argparse.Namespace) -> int:
    coalgebra, initial = _load_coalgebra(args.coalgebra)
    reduced, representative = minimize(coalgebra)
    logger.info("minimized %d states to %d", len(coalgebra), len(reduced))
    start = None if initial is None else representative[initial]
    _emit(write_coalgebra(reduced, initial=start), args.output)
    return EXIT_OK


# --- Argument Parsing ---

def _add_functor_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--functor", choices=KINDS, help="functor kind")
    parser.add_argument("--alphabet", help="comma-separated dfa letters")
    parser.add_argument("--labels", help="comma-separated lts labels")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one sub-command per operation."""
    parser = argparse.ArgumentParser(
        prog="coalgebra-expressions",
        description="Evaluate, synthesize, extract and compare fixpoint "
        "expressions over finite coalgebras.",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log debug output to stderr"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("parse", help="check and normalize an expression")
    p.add_argument("expr")
    _add_functor_options(p)
    p.add_argument("--flat", action="store_true", help="print the flat system")
    p.add_argument("--closure", action="store_true", help="print the closure")
    p.set_defaults(handler=cmd_parse)

    p = commands.add_parser("eval", help="list the states satisfying an expression")
    p.add_argument("expr")
    p.add_argument("coalgebra")
    p.add_argument("--flat", action="store_true", help="print all gfp components")
    p.add_argument("--oracle", action="store_true", help="cross-check semantics")
    p.set_defaults(handler=cmd_eval)

    p = commands.add_parser("synthesize", help="build a model of an expression")
    p.add_argument("expr")
    _add_functor_options(p)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_synthesize)

    p = commands.add_parser("extract", help="describe a state by an expression")
    p.add_argument("coalgebra")
    p.add_argument("state")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_extract)

    p = commands.add_parser("equiv", help="decide expression equivalence")
    p.add_argument("left")
    p.add_argument("right")
    _add_functor_options(p)
    p.add_argument("--oracle", action="store_true", help="cross-check the verdict")
    p.set_defaults(handler=cmd_equiv)

    p = commands.add_parser("minimize", help="quotient by behavioural equivalence")
    p.add_argument("coalgebra")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_minimize)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line and return its exit status.

    Returns:
        0 on success, 1 for an ``inequivalent`` verdict, 2 on any error.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except LocatedError as error:
        print(error, file=sys.stderr)
    except (CoalgebraError, OracleDisagreement, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
    return EXIT_ERROR
