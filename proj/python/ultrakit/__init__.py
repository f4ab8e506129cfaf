"""Verification toolkit for convolutor spaces of translation-modulation invariant ultradistribution spaces."""

import json as _json

from . import _core
from ._core import (
    DegreeOverflow,
    GaussSum,
    RiemannScheme,
    WeightSequence,
    associated_function,
    check_conditions,
    convergence_study,
    convolve,
    default_schedule,
    derivative,
    fourier,
    gevrey,
    gs_sup_norm,
    inner_l2,
    modulate,
    reconstruction_error,
    riemann_convolve,
    space_norm,
    standard_fixtures,
    translate,
    translation_weight,
    window_from_gaussian,
)

__version__ = "0.1.0"


def run_criterion(criterion_id: int, seed: int = 7) -> dict:
    """Run one in-process acceptance criterion (1..10) and return its outcome."""
    return _json.loads(_core._run_criterion_json(criterion_id, seed))

