"""Two-qubit commuting Hamiltonians: classification, gadget inversion, synthesis and simulation."""

import json as _json

from ._commham import (  # noqa: F401
    SCHEMA_VERSION,
    Error,
    is_commuting,
    l_matrix,
    local_diagonalize,
    output_distribution,
    pauli_expand,
    sample,
)
from . import _commham


def classify(h, tol=1e-8):
    return _json.loads(_commham.classify_json(h, tol))


def invert(h, t, t2=None):
    return _json.loads(_commham.invert_json(h, t, t2))


def lie_span(h, seed=0):
    return _json.loads(_commham.lie_span_json(h, seed))


def synthesize(h, target, eps=1e-2, budget=100000, seed=0):
    return _json.loads(_commham.synthesize_json(h, target, eps, budget, seed))
