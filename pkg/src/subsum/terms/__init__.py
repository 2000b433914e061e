from ..instance import BicardinalitySpec, CardinalitySpec, GeneralSpec, PairwiseSpec
from .base import Phase, Term
from .bicardinality import BicardinalityTerm
from .cardinality import CardinalityTerm
from .general import GeneralTerm
from .pairwise import PairwiseTerm

_RUNTIME = {
    PairwiseSpec: PairwiseTerm,
    CardinalitySpec: CardinalityTerm,
    BicardinalitySpec: BicardinalityTerm,
    GeneralSpec: GeneralTerm,
}


def make_term(spec) -> Term:
    """Fresh runtime state (zero flow) for a term spec."""
    return _RUNTIME[type(spec)](spec)


__all__ = [
    "Phase", "Term", "PairwiseTerm", "CardinalityTerm", "BicardinalityTerm",
    "GeneralTerm", "make_term",
]
