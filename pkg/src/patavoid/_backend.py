"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``PATAVOID_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("PATAVOID_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels

        BACKEND = "cython"
    except ImportError:
        kernels = _pykernels
        BACKEND = "python"

SuffixMatcher = kernels.SuffixMatcher
search_dfs = kernels.search_dfs
g4_sweep_table = kernels.g4_sweep_table
