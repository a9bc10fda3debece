"""Arithmetic kernel with a compiled fast path.

The compiled extension is used when it imported cleanly; set ``LGQ_PURE=1``
to force the pure-Python backend (useful for benchmarking and debugging).
Both backends implement the identical function-level contract, so callers
import names from this package only.
"""

import os

if os.environ.get("LGQ_PURE"):
    from . import py_backend as _impl
else:
    try:
        from . import _ckernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import py_backend as _impl

BACKEND_NAME = _impl.BACKEND_NAME

zp_add = _impl.zp_add
zp_sub = _impl.zp_sub
zp_neg = _impl.zp_neg
zp_mul = _impl.zp_mul
zp_mul_int = _impl.zp_mul_int
zp_content = _impl.zp_content
zp_div_int = _impl.zp_div_int

ip_add = _impl.ip_add
ip_scale = _impl.ip_scale
ip_mul_mono = _impl.ip_mul_mono
ip_mul = _impl.ip_mul
ip_combine = _impl.ip_combine
ip_content = _impl.ip_content
ip_div_int = _impl.ip_div_int
