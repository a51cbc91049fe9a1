"""Micro-benchmark comparing the pure and compiled kernels.

Run as `python -m minkdecomp.bench`.  Both implementations are invoked
directly (bypassing the dispatcher) on identical inputs, results are
checked for equality, and per-call timings are reported side by side.
Compiled rows are skipped when the extension is not built.
"""

import time
from typing import Callable, List, Optional, Tuple

from . import _kernels_py
from .constructors import bd198, cyclic, delta
from .graphs import decomposing_system_matrix, skeleton
from .linalg import clear_denominators

try:
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

REPEAT = 5


def _time_best(fn: Callable[[], object], repeat: int = REPEAT) -> Tuple[float, object]:
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        if best is None or dt < best:
            best = dt
    return best or 0.0, result


def _facet_cases() -> List[Tuple[str, List[Tuple[int, ...]], int]]:
    cases = []
    for p in (delta(2, 2), delta(1, 3), cyclic(6, 4), bd198(), delta(3, 3)):
        coords = [tuple(int(c) for c in v) for v in p.vertices]
        cases.append((f"facet_scan {p.name}", coords, p.dim))
    return cases


def _rref_cases() -> List[Tuple[str, List[List[int]], int]]:
    cases = []
    for p in (delta(2, 2), bd198(), delta(3, 3)):
        rows, ncols = decomposing_system_matrix(skeleton(p))
        cases.append((f"rref_int {p.name} system", clear_denominators(rows), ncols))
    return cases


def main() -> int:
    rows_out: List[Tuple[str, float, Optional[float]]] = []
    for label, coords, d in _facet_cases():
        t_pure, r_pure = _time_best(lambda: _kernels_py.facet_scan(coords, d))
        if _compiled is not None:
            t_comp, r_comp = _time_best(lambda: _compiled.facet_scan(coords, d))
            if r_comp != r_pure:
                raise AssertionError(f"kernel mismatch on {label}")
            rows_out.append((label, t_pure, t_comp))
        else:
            rows_out.append((label, t_pure, None))
    for label, mat, ncols in _rref_cases():
        t_pure, r_pure = _time_best(lambda: _kernels_py.rref_int([list(r) for r in mat], ncols))
        if _compiled is not None:
            t_comp, r_comp = _time_best(lambda: _compiled.rref_int([list(r) for r in mat], ncols))
            if r_comp != r_pure:
                raise AssertionError(f"kernel mismatch on {label}")
            rows_out.append((label, t_pure, t_comp))
        else:
            rows_out.append((label, t_pure, None))

    width = max(len(r[0]) for r in rows_out)
    print(f"{'case':<{width}}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for label, t_pure, t_comp in rows_out:
        if t_comp is None:
            print(f"{label:<{width}}  {t_pure * 1e3:9.3f}ms  {'-':>10}  {'-':>8}")
        else:
            ratio = t_pure / t_comp if t_comp > 0 else float("inf")
            print(
                f"{label:<{width}}  {t_pure * 1e3:9.3f}ms  {t_comp * 1e3:9.3f}ms  "
                f"{ratio:7.1f}x"
            )
    if _compiled is None:
        print("compiled extension not available; showing pure timings only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
