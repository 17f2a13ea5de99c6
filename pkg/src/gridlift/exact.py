"""Exact rational geometry kernel.

Everything downstream reduces to signed simplex volumes ("brackets") of
point sequences, evaluated exactly over the rationals. The bracket of k
points in Q^{k-1} is the determinant of the matrix whose columns are the
points with a row of ones appended; it equals (k-1)! times the signed
volume of their simplex. On top of it sit:

- height_on_hyperplane: the z-value of the hyperplane spanned by d lifted
  points above a given flat point,
- creasing: how two lifted facets sharing a ridge fold along it, with two
  algebraically equal evaluation routes kept side by side as a cross-check,
- stress_of_ridge: the creasing with a fixed orientation convention, which
  is the quantity whose sign pattern certifies convexity.

Determinants are computed fraction-free: each point is scaled to an integer
homogeneous column and the integer determinant (Bareiss) is divided by the
product of scales. This keeps Fraction normalization out of the O(k^3) loop.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import GeometryError

Rat = Fraction
Point = tuple[Fraction, ...]
PointSeq = tuple[Point, ...]

_ZERO = Fraction(0)


def as_point(values: Sequence) -> Point:
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)


def as_point_seq(points: Sequence[Sequence]) -> PointSeq:
    return tuple(as_point(p) for p in points)


def _det_int(a: list[list[int]]) -> int:
    """Determinant of a small integer matrix, fraction-free Bareiss."""
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        (a00, a01, a02), (a10, a11, a12), (a20, a21, a22) = a
        return (
            a00 * (a11 * a22 - a12 * a21)
            - a01 * (a10 * a22 - a12 * a20)
            + a02 * (a10 * a21 - a11 * a20)
        )
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i, row_k = a[i], a[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                # exact division: Bareiss guarantees divisibility by prev
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def bracket(points: Sequence[Sequence]) -> Fraction:
    """Signed (k-1)!-scaled volume of k points in Q^{k-1}.

    Columns are the points with an appended coordinate 1; scaling a column
    to clear denominators multiplies the determinant by the scale, so the
    integer determinant divided by the product of scales is exact.
    """
    k = len(points)
    if k == 0:
        raise GeometryError("bracket of an empty point sequence")
    dim = k - 1
    cols: list[list[int]] = []
    denom = 1
    for p in points:
        if len(p) != dim:
            raise GeometryError(
                f"bracket expects {k} points of dimension {dim}, got one of {len(p)}"
            )
        scale = 1
        ints_needed = False
        for c in p:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    scale = lcm(scale, c.denominator)
                    ints_needed = True
            elif not isinstance(c, int):
                raise GeometryError(f"non-rational coordinate {c!r}")
        if ints_needed:
            col = [
                (c.numerator * (scale // c.denominator))
                if isinstance(c, Fraction)
                else c * scale
                for c in p
            ]
        else:
            col = [c.numerator if isinstance(c, Fraction) else c for c in p]
        col.append(scale)
        denom *= scale
        cols.append(col)
    rows = [[cols[j][i] for j in range(k)] for i in range(k)]
    d = _det_int(rows)
    return Fraction(d, denom) if denom != 1 else Fraction(d)


def project(p: Sequence) -> Point:
    """Drop the last coordinate."""
    if len(p) < 2:
        raise GeometryError("project requires dimension >= 2")
    return as_point(p[:-1])


def project_seq(points: Sequence[Sequence]) -> PointSeq:
    return tuple(project(p) for p in points)


def height_on_hyperplane(
    facet: Sequence[Sequence], p: Sequence, facet_shadow: Fraction | None = None
) -> Fraction:
    """Height of the hyperplane through d lifted points above flat point p.

    `facet` holds d points in Q^d whose projections span a nondegenerate
    simplex; p lives in Q^{d-1}. The value is the bracket of facet with
    (p, 0) appended, divided by the projected facet bracket. The sign
    convention makes the plane through the standard basis points of Q^3
    evaluate to 1 at the origin.

    facet_shadow, if given, must equal the projected bracket of `facet` in
    the same order (callers that cache facet volumes pass it to skip one
    determinant).
    """
    d = len(facet)
    shadow = facet_shadow
    if shadow is None:
        shadow = bracket([p_[:-1] for p_ in facet])
    if shadow == 0:
        raise GeometryError("vertical hyperplane: projected facet is degenerate")
    lifted_p = tuple(p) + (_ZERO,)
    return bracket(list(facet) + [lifted_p]) / shadow


def creasing(S: Sequence[Sequence], T: Sequence[Sequence]) -> Fraction:
    """Fold coefficient of the hyperplanes of S and T along their shared ridge.

    S and T are d lifted points each, agreeing in their first d-1 entries
    (the ridge). Evaluated as the bracket of T with the last point of S
    appended, divided by the product of the two projected facet brackets.
    Antisymmetric in (S, T); independent of which representative last
    points are used on the two hyperplanes.
    """
    _check_shared_ridge(S, T)
    bS = bracket([p[:-1] for p in S])
    bT = bracket([p[:-1] for p in T])
    if bS == 0 or bT == 0:
        raise GeometryError("creasing: vertical hyperplane")
    return bracket(list(T) + [tuple(S[-1])]) / (bT * bS)


def creasing_by_heights(S: Sequence[Sequence], T: Sequence[Sequence]) -> Fraction:
    """Same value as creasing(), via the height-difference route.

    Measures the gap between the two hyperplanes above the projection of
    S's last point, normalized by S's projected volume. Kept as an
    independently coded cross-check of creasing(); property tests assert
    exact agreement.
    """
    _check_shared_ridge(S, T)
    r = project(S[-1])
    bS = bracket([p[:-1] for p in S])
    if bS == 0:
        raise GeometryError("creasing: vertical hyperplane")
    return (height_on_hyperplane(T, r) - height_on_hyperplane(S, r)) / bS


def _check_shared_ridge(S, T) -> None:
    if len(S) != len(T) or len(S) < 2:
        raise GeometryError("creasing expects two equal-length facets, d >= 2")
    for a, b in zip(S[:-1], T[:-1]):
        if tuple(a) != tuple(b):
            raise GeometryError("facets do not share a ridge prefix")


def stress_of_ridge(
    X: Sequence[Sequence],
    S_facet: Sequence[Sequence],
    T_facet: Sequence[Sequence],
    base_flag: bool = False,
) -> Fraction:
    """Creasing of the two facets on ridge X, with the orientation convention.

    X is the shared ridge (d-1 lifted points); S_facet and T_facet extend X
    by one point each. A facet is "left" of the ridge when appending its
    extra point to the projected ridge gives a positive bracket. The base
    facet (recognized, when base_flag is set, as the one lying entirely in
    the z = 0 hyperplane) has its side label flipped: both facets of a base
    ridge project to the same side, and the flip is what makes exactly one
    of them count as left. The result is the creasing of (left, right),
    which is invariant under reordering X and under swapping the two facet
    arguments.
    """
    X = as_point_seq(X)
    S_facet = as_point_seq(S_facet)
    T_facet = as_point_seq(T_facet)
    if S_facet[:-1] != X or T_facet[:-1] != X:
        raise GeometryError("facet arguments must extend the ridge X")
    shadow_X = [p[:-1] for p in X]
    sides = []
    for facet in (S_facet, T_facet):
        b = bracket(shadow_X + [facet[-1][:-1]])
        if b == 0:
            raise GeometryError("flat degeneracy: facet extra point on ridge span")
        sides.append(b > 0)
    if base_flag:
        flat_S = all(p[-1] == 0 for p in S_facet)
        flat_T = all(p[-1] == 0 for p in T_facet)
        if flat_S == flat_T:
            raise GeometryError(
                "base_flag set but base facet is not identifiable by z = 0"
            )
        # the base facet's left/right label is interchanged
        if flat_S:
            sides[0] = not sides[0]
        else:
            sides[1] = not sides[1]
    if sides[0] == sides[1]:
        raise GeometryError("no consistent left/right orientation for ridge")
    left, right = (S_facet, T_facet) if sides[0] else (T_facet, S_facet)
    return creasing(left, right)
