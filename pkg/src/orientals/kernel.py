"""Backend selection for the movement search.

The compiled extension is used when it imports and the generator count
fits in 64 bits; ``ORIENTALS_PURE_PYTHON=1`` forces the fallback.
"""

import os

from orientals import _kernel_py
from orientals._kernel_py import SearchBudgetExceeded

__all__ = ["BACKEND", "SearchBudgetExceeded", "search_moves", "search_moves_py"]

_compiled = None
if not os.environ.get("ORIENTALS_PURE_PYTHON"):
    try:
        from orientals import _ckernel as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
search_moves_py = _kernel_py.search_moves


def search_moves(mu, odd, even, node_limit=0):
    if _compiled is not None and len(even) <= 64:
        try:
            return _compiled.search_moves(mu, odd, even, node_limit)
        except OverflowError:  # face masks wider than 64 bits
            pass
    return _kernel_py.search_moves(mu, odd, even, node_limit)
