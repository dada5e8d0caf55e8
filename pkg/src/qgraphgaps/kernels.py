"""Kernel backend selection.

The compiled extension is used when it imports; setting the environment
variable ``QGRAPHGAPS_PURE=1`` forces the numpy fallback.
"""

from __future__ import annotations

import os

from . import _fallback

BACKEND = "numpy"
_impl = _fallback

if os.environ.get("QGRAPHGAPS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback

secular_batch = _impl.secular_batch
gap_margin = _impl.gap_margin
gamma_terms = _impl.gamma_terms

__all__ = ["BACKEND", "secular_batch", "gap_margin", "gamma_terms", "backend", "use"]


def backend() -> str:
    return BACKEND


def use(name: str) -> None:
    """Switch backend at runtime ('cython' or 'numpy'); used by tests and benchmarks."""
    global BACKEND, _impl, secular_batch, gap_margin, gamma_terms
    if name == "numpy":
        _impl = _fallback
    elif name == "cython":
        from . import _core as _impl  # noqa: F811
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    secular_batch = _impl.secular_batch
    gap_margin = _impl.gap_margin
    gamma_terms = _impl.gamma_terms
