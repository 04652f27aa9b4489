"""Adiabatic entangling power of Hamiltonian families."""

import json

import numpy as np

from ._aep import (
    AepError,
    DegeneracyError,
    InputError,
    NotAnEigenstate,
    NotHermitian,
    NotUnitary,
    __version__,
    concurrence,
    connectible,
    connecting_family,
    entropy,
    example1_unitary,
    example2_max_concurrence,
    example2_unitary,
    gate,
    min_gap,
    run_cli,
    schmidt_spectrum,
    unitary_entangling_power,
)
from . import _aep


def _spec_text(spec):
    if isinstance(spec, str):
        spec = {"kind": spec}
    return json.dumps(spec, default=_encode)


def _encode(value):
    # Complex numbers become [re, im] pairs; arrays become nested lists.
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.ndarray):
        return np.asarray(value, dtype=complex).tolist()
    raise TypeError(f"cannot encode {type(value).__name__}")


def adiabatic_entangling_power(spec, grid=41, refine=False, level=None, jobs=1):
    """Power of a family given as a spec dict or a builtin kind such as
    "builtin:example1". Returns a dict with value, formula and witness."""
    return _aep._power(_spec_text(spec), grid, refine, level, jobs)


def family_hamiltonian(spec, point):
    """H(point) of the family described by spec."""
    return _aep._family_hamiltonian(_spec_text(spec), list(point))


__all__ = [name for name in dir() if not name.startswith("_")]
