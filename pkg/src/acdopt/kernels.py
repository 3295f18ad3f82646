"""Backend selection for the integration kernels.

Prefers the compiled extension; falls back to the pure-Python twin when the
extension was not built.  Set ``ACDOPT_FORCE_PYTHON_KERNELS=1`` to force the
fallback (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("ACDOPT_FORCE_PYTHON_KERNELS") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND_NAME
simulate_path = _impl.simulate_path
final_state_and_cost = _impl.final_state_and_cost
