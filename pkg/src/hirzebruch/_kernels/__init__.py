"""Hot kernels: compiled when the extension is built, pure Python otherwise.

Set ``HIRZEBRUCH_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels as python_impl

try:
    if os.environ.get("HIRZEBRUCH_PURE_PYTHON"):
        raise ImportError("pure-python kernels requested")
    from . import _ckernels as compiled_impl
except ImportError:
    compiled_impl = None

impl = compiled_impl if compiled_impl is not None else python_impl
BACKEND = "compiled" if compiled_impl is not None else "python"
PRIME = python_impl.PRIME

signed_vectors = impl.signed_vectors
rank_mod_p = impl.rank_mod_p
interpolation_rank_mod_p = impl.interpolation_rank_mod_p
