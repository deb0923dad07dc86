"""Hot loops over lattice tables.

Two interchangeable backends implement the same functions:

* ``_numba``: explicit loops compiled with ``numba.njit``;
* ``_numpy``: vectorised numpy, no compiler needed.

The numba backend is used when numba imports and ``LATPOLY_DISABLE_NUMBA`` is not
set to a truthy value. All kernels work on int64/bool arrays; rational inputs are
scaled to a common denominator by the callers so every comparison stays exact.
"""

from __future__ import annotations

import os

from . import _numpy as numpy_impl

_FLAG = "LATPOLY_DISABLE_NUMBA"


def _numba_disabled() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    if _numba_disabled():
        raise ImportError
    from . import _numba as numba_impl
except ImportError:  # numba missing or disabled
    numba_impl = None

BACKEND = "numba" if numba_impl is not None else "numpy"
_impl = numba_impl if numba_impl is not None else numpy_impl

closure = _impl.closure
meet_join = _impl.meet_join
modular_witness = _impl.modular_witness
rank_violation = _impl.rank_violation
length2_violation = _impl.length2_violation
mu_greedy_all = _impl.mu_greedy_all
quasi_modular_witness = _impl.quasi_modular_witness
rho_table = _impl.rho_table

__all__ = [
    "BACKEND",
    "closure",
    "meet_join",
    "modular_witness",
    "rank_violation",
    "length2_violation",
    "mu_greedy_all",
    "quasi_modular_witness",
    "rho_table",
    "numpy_impl",
    "numba_impl",
]
