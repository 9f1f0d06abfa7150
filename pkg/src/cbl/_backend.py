"""Pick the polynomial kernel implementation at import time.

``CBL_BACKEND=python`` forces the pure-Python kernels; ``CBL_BACKEND=ext``
requires the compiled extension.  The default uses the extension when it
was built and falls back silently otherwise.
"""

import os

_choice = os.environ.get("CBL_BACKEND", "auto").lower()

if _choice == "python":
    from . import _kernels_py as kernels
elif _choice == "ext":
    from . import _kernels as kernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        from . import _kernels_py as kernels

BACKEND = "ext" if kernels.__name__.endswith("._kernels") else "python"

add_terms = kernels.add_terms
sub_terms = kernels.sub_terms
scale_terms = kernels.scale_terms
mul_terms = kernels.mul_terms
partial_terms = kernels.partial_terms
axpy_terms = kernels.axpy_terms
BITS = kernels.BITS
MASK = kernels.MASK
