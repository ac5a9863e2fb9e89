"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise, or when
``TRIBRACKETS_PURE_PYTHON=1`` is set, the pure-Python twins are used.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("TRIBRACKETS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

horizontal_violations = _impl.horizontal_violations
vertical_violations = _impl.vertical_violations
delta_witness = _impl.delta_witness
count_plan = _impl.count_plan
