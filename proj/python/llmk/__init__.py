"""Exact semantics for a linear/Markov-kernel probabilistic calculus.

Programs are passed as `.llmk` source text. Probabilities come back as
``fractions.Fraction``.
"""

from fractions import Fraction

from . import _llmk
from ._llmk import (
    OracleError,
    ParseError,
    ResourceError,
    TypeCheckError,
    check,
    law_names,
    pretty,
    run_laws,
    web,
)

__all__ = [
    "OracleError",
    "ParseError",
    "ResourceError",
    "TypeCheckError",
    "check",
    "denote",
    "equiv",
    "law_names",
    "mc",
    "pretty",
    "run_laws",
    "trace",
    "web",
]


def denote(text, name, model="prob"):
    """Denotation of a definition as {point: Fraction}.

    Definitions with several rows (MK kernels with parameters) map
    (row, point) pairs instead.
    """
    entries = _llmk.denote(text, name, model)
    rows = {row for row, _, _ in entries}
    if len(rows) <= 1:
        return {col: Fraction(v) for _, col, v in entries}
    return {(row, col): Fraction(v) for row, col, v in entries}


def equiv(text, left, right, model="prob"):
    """Exact denotational equality of two definitions."""
    return _llmk.equiv(text, left, right, model)


def trace(text, name):
    """Operational distribution of a ground definition as {point: Fraction}."""
    return {p: Fraction(w) for p, w in _llmk.trace(text, name)}


def mc(text, name, seed=1, n=10000):
    """Draw counts {point: count} from the seeded sampler."""
    return dict(_llmk.mc(text, name, seed, n))
