"""Exact computation with the identities of 2x2 upper triangular matrices
regarded with bimodule coefficient actions: quotient dimensions,
irreducible multiplicities, canonical bases and the operator-span
triviality criterion, all over exact rationals."""

from .algebra import (
    E11,
    E12,
    E22,
    IDENT,
    SANDWICH,
    UNITS,
    ZERO,
    AxiomReport,
    BimoduleAction,
    LinearOperator,
    Scalar,
    UTElement,
    action_from_dict,
    action_to_dict,
    builtin_action,
    check_axioms,
    is_trivial_linear,
    load_action,
    lr_span_dim,
    operator_of,
    save_action,
)
from .canonical import (
    CanonicalElement,
    NotRepresentableError,
    basis_polynomials,
    codim_formula,
    coordinates,
    enumerate_basis,
)
from .engine import (
    CodimResult,
    DependenceResult,
    EvaluationVector,
    ModularMismatchError,
    RankAccumulator,
    ResourceCapError,
    codimension,
    dependence,
    eval_vector,
    evaluate,
    is_identity,
    perm_trace,
)
from .genpoly import (
    GenPolynomial,
    YoungTableauFilling,
    alternate,
    commutator,
    hwv_build,
    hwv_family_list,
    multilinearize,
    permute_vars,
    poly_mul,
    substitute,
    young_symmetrize,
)
from .symchar import (
    CharacterTable,
    CocharacterDecomposition,
    character_table,
    class_representative,
    class_size,
    cocharacter,
    hook_degree,
    multiplicity_formula,
    partitions,
)
from .textform import ParseError, parse_poly, poly_to_text

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "BimoduleAction",
    "CanonicalElement",
    "CharacterTable",
    "CocharacterDecomposition",
    "CodimResult",
    "DependenceResult",
    "E11",
    "E12",
    "E22",
    "EvaluationVector",
    "GenPolynomial",
    "IDENT",
    "LinearOperator",
    "ModularMismatchError",
    "NotRepresentableError",
    "ParseError",
    "RankAccumulator",
    "ResourceCapError",
    "SANDWICH",
    "Scalar",
    "UNITS",
    "UTElement",
    "YoungTableauFilling",
    "ZERO",
    "action_from_dict",
    "action_to_dict",
    "alternate",
    "basis_polynomials",
    "builtin_action",
    "character_table",
    "check_axioms",
    "class_representative",
    "class_size",
    "cocharacter",
    "codim_formula",
    "codimension",
    "commutator",
    "coordinates",
    "dependence",
    "enumerate_basis",
    "eval_vector",
    "evaluate",
    "hook_degree",
    "hwv_build",
    "hwv_family_list",
    "is_identity",
    "is_trivial_linear",
    "load_action",
    "lr_span_dim",
    "multilinearize",
    "multiplicity_formula",
    "operator_of",
    "parse_poly",
    "partitions",
    "perm_trace",
    "permute_vars",
    "poly_mul",
    "poly_to_text",
    "save_action",
    "substitute",
    "young_symmetrize",
]
