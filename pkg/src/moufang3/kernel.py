"""Backend selection: compiled extension when available, pure Python otherwise.

Set MOUFANG3_PURE=1 to force the pure backend (useful for benchmarking and
for debugging suspected kernel divergences).
"""

import os

if os.environ.get("MOUFANG3_PURE"):
    from . import _native as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _native as _impl

LoopKernel = _impl.LoopKernel
PolyEvaluator = _impl.PolyEvaluator
BACKEND = _impl.BACKEND
SWEEP_NAMES = _impl.SWEEP_NAMES
