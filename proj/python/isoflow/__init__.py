"""Isoparametric foliations of solvable models.

Thin wrapper over the C++ core: matrix-model oracle, closed-form shape and
normal Jacobi operators, adaptedness verdicts and the section flow.
"""

from ._isoflow import (
    Config,
    ConfigError,
    DomainError,
    Error,
    InputError,
    Model,
    NumericalError,
    ParseError,
    adaptedness,
    block_structure,
    classify,
    closed_form,
    coefficients,
    commutator,
    config_from_json,
    find_minimal_leaf,
    integrate,
    load_model,
    make_config,
    normal_jacobi,
    oracle_deviation,
    shape_operator,
    verify,
)

__all__ = [
    "Config",
    "ConfigError",
    "DomainError",
    "Error",
    "InputError",
    "Model",
    "NumericalError",
    "ParseError",
    "adaptedness",
    "block_structure",
    "classify",
    "closed_form",
    "coefficients",
    "commutator",
    "config_from_json",
    "find_minimal_leaf",
    "integrate",
    "load_model",
    "make_config",
    "normal_jacobi",
    "oracle_deviation",
    "shape_operator",
    "verify",
]
