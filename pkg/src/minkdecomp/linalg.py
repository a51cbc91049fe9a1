"""Exact rational linear algebra.

Everything verdict-relevant in this package reduces to questions about
ranks, kernels and linear feasibility, and rank is discontinuous, so no
floating point is allowed anywhere near a verdict.  Scalars are
fractions.Fraction (canonical form maintained by the stdlib), vectors are
immutable tuples of them, and matrices are plain lists of rows.
Elimination itself runs over cleared-denominator integers in the kernels
module; this module owns the rational boundary.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, List, Optional, Sequence, Tuple

from . import kernels

Rational = Fraction


class Vec(tuple):
    """Point or direction with exact rational coordinates.

    Immutable, hashable, componentwise arithmetic.  Mixed-length
    operations raise ValueError (zip strict).
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable) -> "Vec":
        return super().__new__(cls, (Fraction(c) for c in coords))

    def __add__(self, other) -> "Vec":
        return Vec(a + b for a, b in zip(self, other, strict=True))

    def __radd__(self, other) -> "Vec":
        return self.__add__(other)

    def __sub__(self, other) -> "Vec":
        return Vec(a - b for a, b in zip(self, other, strict=True))

    def __neg__(self) -> "Vec":
        return Vec(-a for a in self)

    def __mul__(self, scalar) -> "Vec":
        s = Fraction(scalar)
        return Vec(a * s for a in self)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Vec":
        s = Fraction(scalar)
        return Vec(a / s for a in self)

    def dot(self, other) -> Rational:
        return sum((a * b for a, b in zip(self, other, strict=True)), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self)


def zero_vec(d: int) -> Vec:
    return Vec([0] * d)


def unit_vec(d: int, i: int) -> Vec:
    """Standard basis vector e_{i+1} of length d."""
    return Vec(int(j == i) for j in range(d))


def clear_denominators(rows: Sequence[Sequence[Rational]]) -> List[List[int]]:
    """Scale each row by the lcm of its denominators; kernel unchanged."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        mult = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * mult) for x in fr])
    return out


def rank_and_kernel(
    rows: Sequence[Sequence[Rational]], ncols: Optional[int] = None
) -> Tuple[int, List[Vec]]:
    """Rank and a kernel basis of the matrix given as a list of rows.

    The basis vectors b satisfy M.b = 0 exactly and there are
    ncols - rank of them.  An empty matrix has rank 0 and the full
    ambient space as kernel (ncols must then be passed explicitly).
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    int_rows = [r for r in clear_denominators(rows) if any(r)]
    pivot_cols, reduced = kernels.rref_int(int_rows, ncols)
    rank = len(pivot_cols)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        coords = [Fraction(0)] * ncols
        coords[f] = Fraction(1)
        for i, c in enumerate(pivot_cols):
            coords[c] = Fraction(-reduced[i][f], reduced[i][c])
        basis.append(Vec(coords))
    return rank, basis


def matrix_rank(rows: Sequence[Sequence[Rational]], ncols: Optional[int] = None) -> int:
    if ncols is None and not rows:
        return 0
    return rank_and_kernel(rows, ncols)[0]


def solve_exact(
    rows: Sequence[Sequence[Rational]], rhs: Sequence[Rational]
) -> List[Rational]:
    """Unique solution of a square nonsingular system; ValueError otherwise."""
    n = len(rows)
    if any(len(r) != n for r in rows) or len(rhs) != n:
        raise ValueError("system is not square")
    aug = [list(r) + [b] for r, b in zip(rows, rhs, strict=True)]
    int_rows = [r for r in clear_denominators(aug) if any(r)]
    pivot_cols, reduced = kernels.rref_int(int_rows, n + 1)
    if tuple(pivot_cols) != tuple(range(n)):
        raise ValueError("matrix is singular")
    return [Fraction(reduced[i][n], reduced[i][i]) for i in range(n)]


def affinely_independent(points: Sequence[Sequence[Rational]]) -> bool:
    """True iff the differences p_i - p_1 (i >= 2) are linearly independent."""
    pts = [Vec(p) for p in points]
    if len({len(p) for p in pts}) > 1:
        raise ValueError("points of mixed dimension")
    k = len(pts)
    if k <= 1:
        return True
    d = len(pts[0])
    if k > d + 1:
        return False
    diffs = [p - pts[0] for p in pts[1:]]
    return matrix_rank(diffs) == k - 1


def _phase1_feasible(rows: List[List[Fraction]], rhs: List[Fraction]) -> bool:
    """Exact phase-1 simplex: is {x >= 0 : A.x = b} nonempty?

    Bland's rule on entering and leaving variables, so termination is
    guaranteed despite degeneracy.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0:
        return True
    # Flip rows so every right-hand side is nonnegative, then append an
    # identity of artificial variables; minimize their sum.
    tab = []
    for i in range(m):
        row = list(rows[i])
        b = rhs[i]
        if b < 0:
            row = [-x for x in row]
            b = -b
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [b])
    basis = list(range(n, n + m))
    total = n + m
    # Reduced cost row for the artificial objective, with the artificial
    # basis already priced out: cost_j = c_j - sum_i tab[i][j].
    cost = []
    for j in range(total):
        cj = Fraction(1) if j >= n else Fraction(0)
        cost.append(cj - sum(tab[i][j] for i in range(m)))
    objective = -sum((tab[i][-1] for i in range(m)), Fraction(0))

    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            coeff = tab[i][enter]
            if coeff > 0:
                ratio = tab[i][-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # Cannot happen: the artificial objective is bounded below by 0.
            raise ArithmeticError("unbounded phase-1 objective")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        if cost[enter]:
            f = cost[enter]
            for j in range(total):
                cost[j] -= f * tab[leave][j]
            objective -= f * tab[leave][-1]
        basis[leave] = enter
    return objective == 0


def point_in_hull(p: Sequence[Rational], points: Sequence[Sequence[Rational]]) -> bool:
    """True iff p is a convex combination of the given points (exact LP)."""
    if not points:
        return False
    pt = Vec(p)
    pts = [Vec(q) for q in points]
    d = len(pt)
    if any(len(q) != d for q in pts):
        raise ValueError("points of mixed dimension")
    # sum mu_i q_i = p, sum mu_i = 1, mu >= 0
    rows = [[q[r] for q in pts] for r in range(d)]
    rows.append([Fraction(1)] * len(pts))
    rhs = list(pt) + [Fraction(1)]
    return _phase1_feasible(rows, rhs)


def linear_feasible(
    eq_rows: Sequence[Sequence[Rational]],
    eq_rhs: Sequence[Rational],
    le_rows: Sequence[Sequence[Rational]],
    le_rhs: Sequence[Rational],
    nvars: int,
) -> bool:
    """Is there an unrestricted x with Aeq.x = beq and Ale.x <= ble?

    Free variables are split into differences of nonnegative ones and
    inequalities get slack variables, then phase-1 simplex decides.
    """
    rows = []
    rhs = []
    nslack = len(le_rows)
    for row, b in zip(eq_rows, eq_rhs, strict=True):
        split = []
        for c in row:
            split.extend((Fraction(c), -Fraction(c)))
        rows.append(split + [Fraction(0)] * nslack)
        rhs.append(Fraction(b))
    for k, (row, b) in enumerate(zip(le_rows, le_rhs, strict=True)):
        split = []
        for c in row:
            split.extend((Fraction(c), -Fraction(c)))
        slack = [Fraction(0)] * nslack
        slack[k] = Fraction(1)
        rows.append(split + slack)
        rhs.append(Fraction(b))
    if any(len(r) != 2 * nvars + nslack for r in rows):
        raise ValueError("row length does not match nvars")
    return _phase1_feasible(rows, rhs)


def hyperplane_through(points: Sequence[Sequence[Rational]]) -> Optional[Tuple[Vec, Rational]]:
    """The hyperplane a.x = b through the given points, if unique.

    Returns (a, b) with the first nonzero entry of a normalized to +1,
    which makes equal hyperplanes literally equal.  Returns None when the
    points do not affinely span exactly a hyperplane: uniqueness holds
    for any number of points precisely when the incidence system below
    has a one-dimensional kernel.
    """
    pts = [Vec(p) for p in points]
    if not pts:
        return None
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("points of mixed dimension")
    # (a, b) is in the kernel of the d x (d+1) system  p.a - b = 0.
    rows = [list(p) + [Fraction(-1)] for p in pts]
    rank, basis = rank_and_kernel(rows, d + 1)
    if len(basis) != 1:
        return None
    vec = basis[0]
    normal, offset = Vec(vec[:d]), vec[d]
    lead = next((x for x in normal if x), None)
    if lead is None:
        # a = 0 forces b = 0, the zero vector; cannot occur in a basis.
        return None
    return normal / lead, offset / lead
