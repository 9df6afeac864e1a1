"""Selects the compiled integer kernel when available, else pure Python."""
from . import _snf_py

try:
    from . import _snf_kernel as _kernel
except ImportError:
    _kernel = None

HAVE_KERNEL = _kernel is not None
BACKEND = "cython" if HAVE_KERNEL else "python"


def int_invariant_factors(rows, cols, flat):
    if _kernel is not None:
        try:
            return _kernel.int_invariant_factors(rows, cols, flat)
        except OverflowError:
            pass
    return _snf_py.int_invariant_factors(rows, cols, flat)
