"""Spectral calculus on the periodic torus.

Fields are numpy arrays shaped ``(comps, M, ..., M)``, or ``(M, ..., M)`` for
scalars, sampled at ``x_j = 2*pi*j/M``. Every function takes the spatial
dimension explicitly because the leading axis may or may not be a component
axis.
"""

import json as _json

from ._core import (
    InvalidArgument,
    NumericalError,
    __version__,
    bessel,
    derivative,
    heat,
    lorentz,
    norm,
    project,
    random_field,
    read_field,
    rearrangement,
    relative_divergence,
    solve_nse,
    split,
    stokes_resolvent,
    stokes_semigroup,
    suite_names,
    taylor_green,
    trace_norm,
    write_field,
)
from . import _core


def run_suite(name, dim=2, resolutions=(32, 64), fields=8, seed=20240001):
    """Run one bracket suite and return its report as a dict."""
    raw = _core.run_suite(name, dim, list(resolutions), fields, seed)
    return _json.loads(raw)


def run_all_suites(dim=2, resolutions=(32, 64), fields=8, seed=20240001):
    """Run every bracket suite; returns {name: report}."""
    return {name: run_suite(name, dim, resolutions, fields, seed) for name in suite_names()}


__all__ = [
    "InvalidArgument",
    "NumericalError",
    "__version__",
    "bessel",
    "derivative",
    "heat",
    "lorentz",
    "norm",
    "project",
    "random_field",
    "read_field",
    "rearrangement",
    "relative_divergence",
    "run_all_suites",
    "run_suite",
    "solve_nse",
    "split",
    "stokes_resolvent",
    "stokes_semigroup",
    "suite_names",
    "taylor_green",
    "trace_norm",
    "write_field",
]
