"""Select the compiled kernels when available, else the numpy fallback.

Set BOSONIC_RB_PURE_PYTHON=1 to force the fallback (used by the benchmark
and to exercise both code paths in tests).
"""

from __future__ import annotations

import os

if os.environ.get("BOSONIC_RB_PURE_PYTHON"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

permanent_ryser = _impl.permanent_ryser
immanant_sum = _impl.immanant_sum
