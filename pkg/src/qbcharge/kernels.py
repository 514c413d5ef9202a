"""Backend selection for the numerical kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``QBCHARGE_PURE_PYTHON=1`` is set, the NumPy versions
in ``_pykernels`` are used. ``BACKEND`` names the active one.
"""

import os

from . import _pykernels
from ._pykernels import CRITICAL_WINDOW, OBSERVABLE_COLUMNS

_impl = _pykernels
BACKEND = "python"
if os.environ.get("QBCHARGE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

mu_array = _impl.mu_array
row_observables = _impl.row_observables
rk4_damped = _impl.rk4_damped
jacobi_eigh = _impl.jacobi_eigh


def available_backends():
    """Mapping of backend name to kernel module, for tests and benchmarks."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found


__all__ = [
    "BACKEND",
    "CRITICAL_WINDOW",
    "OBSERVABLE_COLUMNS",
    "available_backends",
    "jacobi_eigh",
    "mu_array",
    "rk4_damped",
    "row_observables",
]
