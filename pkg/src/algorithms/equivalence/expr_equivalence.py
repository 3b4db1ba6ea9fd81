from __future__ import annotations

from src.algorithms.equivalence.partition_refinement import (
    equivalent_states,
    minimal_model,
)
from src.algorithms.kleene.synthesis import synthesize
from src.algorithms.semantics.evaluation import evaluate
from src.data_structures.expressions.expr import Expr
from src.data_structures.functors.signature import Functor


def expr_equiv(e1: Expr, e2: Expr, functor: Functor) -> bool:
    """
    Decide whether two closed, guarded expressions are equivalent.

    Each expression denotes one behavioural equivalence class, so they are
    equivalent iff the distinguished state of a model of one satisfies the
    other. Both directions are checked, each on the minimal model.

    Raises:
        WellFormednessError: If an expression is not closed and guarded.
        FunctorMismatchError: If an expression uses foreign modalities.
    """
    model1, x1 = minimal_model(e1, functor)
    model2, x2 = minimal_model(e2, functor)
    return x1 in evaluate(e2, model1) and x2 in evaluate(e1, model2)


def expr_equiv_by_refinement(e1: Expr, e2: Expr, functor: Functor) -> bool:
    """
    Decide expression equivalence by partition refinement on the coproduct
    of the two synthesized models.
    """
    model1, x1 = synthesize(e1, functor)
    model2, x2 = synthesize(e2, functor)
    return equivalent_states(model1, x1, model2, x2)
