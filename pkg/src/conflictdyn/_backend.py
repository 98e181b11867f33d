"""Pick the compiled kernels when the extension was built, else pure Python."""
from . import _pykernels

try:
    from . import _ckernels as kernels
except ImportError:  # extension not built
    kernels = _pykernels

BACKEND = kernels.NAME
