"""Kernel backend selection.

The compiled extension (`_core`, built from Cython) is used when it
imported cleanly; otherwise the NumPy reference lane (`_ref`) takes
over.  Setting the environment variable PERMCLT_PURE to a nonempty
value forces the reference lane.  Both lanes implement the same
functions with identical numerical contracts, so selection never
changes results, only speed.
"""

from __future__ import annotations

import os

from . import _ref

_forced_pure = bool(os.environ.get("PERMCLT_PURE"))
_impl = _ref
BACKEND = "pure"

if not _forced_pure:
    try:
        from . import _core as _compiled

        _impl = _compiled
        BACKEND = "compiled"
    except ImportError:
        pass

batch_descents = _impl.batch_descents
batch_pattern_stat = _impl.batch_pattern_stat
descent_pair_deltas = _impl.descent_pair_deltas
pattern_ids = _ref.pattern_ids  # helper, numpy-only

__all__ = [
    "BACKEND",
    "batch_descents",
    "batch_pattern_stat",
    "descent_pair_deltas",
    "pattern_ids",
]
