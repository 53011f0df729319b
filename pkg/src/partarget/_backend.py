"""Selects the Monte Carlo kernel implementation at import time.

The compiled extension is preferred; the NumPy implementation is a
drop-in fallback with the same sampling scheme.  ``BACKEND`` names the
one in use so callers (and the benchmark) can report it.
"""

from __future__ import annotations

try:
    from . import _mcsim as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built; NumPy fallback is equivalent
    from . import _mcsim_py as _impl

    BACKEND = "numpy"

linear_sums = _impl.linear_sums
probit_sums = _impl.probit_sums

__all__ = ["BACKEND", "linear_sums", "probit_sums"]
