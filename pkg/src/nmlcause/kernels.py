"""Backend selection for the numerical kernels.

The compiled extension is preferred. Setting ``NMLCAUSE_PURE_PYTHON=1``
before import forces the numpy fallback.
"""
import logging
import os

from . import _fallback

log = logging.getLogger(__name__)


def _load():
    if os.environ.get("NMLCAUSE_PURE_PYTHON", "") not in ("", "0"):
        return _fallback, "python"
    try:
        from . import _kernels
    except ImportError as exc:  # extension not built
        log.debug("compiled kernels unavailable: %s", exc)
        return _fallback, "python"
    return _kernels, "cython"


_impl, BACKEND = _load()

log2_normalizer = _impl.log2_normalizer
log2_normalizers = _impl.log2_normalizers
ml_bits = _impl.ml_bits
histogram = _impl.histogram
slice_codelengths = _impl.slice_codelengths

__all__ = [
    "BACKEND",
    "log2_normalizer",
    "log2_normalizers",
    "ml_bits",
    "histogram",
    "slice_codelengths",
]
