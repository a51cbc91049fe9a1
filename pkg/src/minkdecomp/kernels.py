"""Kernel selection: compiled extension when available, pure Python otherwise.

The compiled module accelerates the two inner loops that dominate the
profile: integer row reduction and the brute-force facet scan.  Setting
the environment variable MINKDECOMP_PURE to any nonempty value forces the
pure-Python path; `python -m minkdecomp.bench` compares the two.
"""

import os
from math import isqrt

from . import _kernels_py

if os.environ.get("MINKDECOMP_PURE"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

HAVE_COMPILED = _compiled is not None


def rref_int(rows, ncols):
    if _compiled is not None:
        return _compiled.rref_int(rows, ncols)
    return _kernels_py.rref_int(rows, ncols)


def _scan_fits_int64(coords, d):
    """Conservative overflow bound for the int64 facet-scan path.

    The cofactor determinants are bounded by Hadamard's inequality:
    B^2 <= (d-1)^(d-1) * (2A)^(2(d-1)) with A the coordinate bound.
    Bareiss intermediates stay within 2B^2 and the side tests within
    2dBA, so both must fit comfortably under 2^63.
    """
    n = len(coords)
    if n > 63:
        return False
    amax = max((abs(c) for p in coords for c in p), default=0)
    if amax == 0:
        return True
    b_sq = (d - 1) ** (d - 1) * (2 * amax) ** (2 * (d - 1)) if d > 1 else 1
    if 2 * b_sq >= 2**62:
        return False
    b = isqrt(b_sq) + 1
    return 2 * d * b * amax < 2**62


def facet_scan(coords, d):
    if _compiled is not None and _scan_fits_int64(coords, d):
        return _compiled.facet_scan(coords, d)
    return _kernels_py.facet_scan(coords, d)
