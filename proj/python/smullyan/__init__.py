"""Smullyan models, their metatheoretic properties, and the arithmetic
diagonal constructions, backed by the C++ library."""

from ._core import (
    Model,
    SmullyanError,
    d_normalize,
    decide_unary,
    decode,
    diag,
    encode,
    eval,
    fixed_point,
    g1_demo,
    gallery_names,
    is_v_formula,
    load,
    load_model_json,
    model_n,
    model_t,
    predicate_formula,
    run_cli,
    sentence_formula,
    tarski_refuter,
    universe,
    verdict_matrix,
    verify_closed_forms,
    weak_fixed_point,
)

__all__ = [
    "Model",
    "SmullyanError",
    "d_normalize",
    "decide_unary",
    "decode",
    "diag",
    "encode",
    "eval",
    "fixed_point",
    "g1_demo",
    "gallery_names",
    "is_v_formula",
    "load",
    "load_model_json",
    "model_n",
    "model_t",
    "predicate_formula",
    "run_cli",
    "sentence_formula",
    "tarski_refuter",
    "universe",
    "verdict_matrix",
    "verify_closed_forms",
    "weak_fixed_point",
]
