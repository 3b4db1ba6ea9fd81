from __future__ import annotations

from src.algorithms.semantics.flattening import FlatSystem, flatten
from src.data_structures.carriers.carrier import Carrier
from src.data_structures.coalgebras.coalgebra import Coalgebra
from src.data_structures.expressions.expr import Expr, modalities
from src.data_structures.functors.signature import Functor, FunctorValue


def system_model(system: FlatSystem, functor: Functor) -> Coalgebra:
    """
    Build the coalgebra whose states are the variables of a flat system.

    Each variable z_i with equation ``z_i = L_i(z_j1, ..., z_jn)`` gets the
    unique behaviour t with {t} = λ({z_j1}, ..., {z_jn}).

    Raises:
        FunctorMismatchError: If the system uses foreign modalities.
    """
    carrier = Carrier(system.variables)
    structure: dict[str, FunctorValue] = {
        eq.variable: functor.singleton_apply(eq.op, eq.args, carrier)
        for eq in system.equations
    }
    return Coalgebra(functor, carrier, structure)


def synthesize(e: Expr, functor: Functor) -> tuple[Coalgebra, str]:
    """
    Realize a closed, guarded expression as a finite pointed coalgebra.

    Args:
        e: The expression.
        functor: The functor its modalities belong to.

    Returns:
        The model on the variables of ``flatten(e)`` and its distinguished
        state, which satisfies ``e``.

    Raises:
        WellFormednessError: If ``e`` is not closed and guarded.
        FunctorMismatchError: If ``e`` uses foreign modalities.
    """
    for op in set(modalities(e)):
        functor.check_modality(op)
    system = flatten(e)
    return system_model(system, functor), system.distinguished
