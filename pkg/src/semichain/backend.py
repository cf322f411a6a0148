"""Core backend selection.

The compiled core is preferred when importable; ``SEMICHAIN_BACKEND`` forces
a choice ("pure" or "compiled").
"""

from __future__ import annotations

import os

from . import _core_pure

_FORCED = os.environ.get("SEMICHAIN_BACKEND", "").strip().lower()

try:
    from . import _core_cy

    _HAVE_COMPILED = True
except ImportError:
    _core_cy = None
    _HAVE_COMPILED = False

if _FORCED == "pure":
    BACKEND = "pure"
elif _FORCED == "compiled":
    if not _HAVE_COMPILED:
        raise ImportError(
            "SEMICHAIN_BACKEND=compiled but semichain._core_cy is not built; "
            "run: python setup.py build_ext --inplace"
        )
    BACKEND = "compiled"
else:
    BACKEND = "compiled" if _HAVE_COMPILED else "pure"

if BACKEND == "compiled":
    SemiOrderCore = _core_cy.SemiOrderCore
else:
    SemiOrderCore = _core_pure.SemiOrderCore


def core_class(backend: str | None = None):
    """Return the core class for an explicit backend name (for benchmarks
    and differential tests); default is the selected one."""
    if backend is None:
        return SemiOrderCore
    if backend == "pure":
        return _core_pure.SemiOrderCore
    if backend == "compiled":
        if not _HAVE_COMPILED:
            raise ImportError("compiled core not available")
        return _core_cy.SemiOrderCore
    raise ValueError(f"unknown backend {backend!r}")
