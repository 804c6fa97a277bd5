"""Bounded chain complexes of free modules over Z and F_p."""

import json

from ._chainweight import (
    Complex,
    InvariantViolation,
    MathNegative,
    ParseError,
    UsageError,
    decompose,
    euler_char,
    euler_char_homology,
    homology,
    in_heart,
    in_w_geq,
    in_w_leq,
    is_acyclic,
    k0,
    minimize,
    orthogonal,
    split_acyclic,
    suites,
    verify_json,
    weights,
)


def verify(suite, **params):
    """Run a property suite and return its report as a dict."""
    return json.loads(verify_json(suite, **params))


__all__ = [
    "Complex",
    "InvariantViolation",
    "MathNegative",
    "ParseError",
    "UsageError",
    "decompose",
    "euler_char",
    "euler_char_homology",
    "homology",
    "in_heart",
    "in_w_geq",
    "in_w_leq",
    "is_acyclic",
    "k0",
    "minimize",
    "orthogonal",
    "split_acyclic",
    "suites",
    "verify",
    "weights",
]
