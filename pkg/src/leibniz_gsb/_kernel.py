"""Kernel selection: compiled extension when available, pure Python otherwise.

Set the environment variable LEIBNIZ_GSB_PURE=1 to force the pure Python
kernels even when the compiled module is installed.
"""

import os

if os.environ.get("LEIBNIZ_GSB_PURE") == "1":
    from . import _kernel_py as _impl

    backend = "python"
else:
    try:
        from . import _kernel_c as _impl

        backend = "compiled"
    except ImportError:
        from . import _kernel_py as _impl

        backend = "python"

expand_tail = _impl.expand_tail
rref_mod_p = _impl.rref_mod_p
