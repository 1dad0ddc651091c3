"""Bloch-sphere geometry: angle coordinates, spherical circles, intersections.

A pure qubit state is parametrized as

    |(x, y)> = cos(x/2) |0> + e^{iy} sin(x/2) |1>,   x in [0, pi], y in [0, 2pi)

and sits on the unit sphere at (X, Y, Z) = (sin x cos y, sin x sin y, cos x),
so |0> is the north pole and |1> the south pole.  Both poles use the
canonical representative y = 0, which makes (x, y) <-> sphere a bijection.

A spherical circle is the intersection of a plane ``n . p = c`` (unit
normal n, |c| <= 1) with the unit sphere.  Because (n, c) and (-n, -c)
describe the same point set, circles are stored in a canonical
orientation: c > 0, or when c is essentially zero, first nonzero normal
component positive.  All circle-equality tests compare canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, EmptyCircleError, InvalidInputError

TWO_PI = 2.0 * np.pi

# Orientation tie-break threshold for |c| ~ 0 and the tangency threshold
# on the circle-circle intersection discriminant.  Double-precision
# geometry noise at unit scale sits far below 1e-9.
CANON_EPS = 1e-12
TANGENT_EPS = 1e-9

# Circles with radius below this are retained as (degenerate) point circles.
POINT_CIRCLE_RADIUS = 1e-9


@dataclass(frozen=True)
class AngleState:
    """A pure qubit state in Bloch angle coordinates (x, y).

    Range bounds are enforced at construction; exact poles (x = 0 or
    x = pi) are canonicalized to y = 0.
    """

    x: float
    y: float

    def __post_init__(self):
        x = float(self.x)
        y = float(self.y)
        if not (np.isfinite(x) and np.isfinite(y)):
            raise InvalidInputError("angle coordinates must be finite")
        # absorb sub-epsilon range excursions from upstream arithmetic
        if -1e-12 <= x < 0.0:
            x = 0.0
        if np.pi < x <= np.pi + 1e-12:
            x = float(np.pi)
        if -1e-12 <= y < 0.0:
            y = 0.0
        if TWO_PI <= y <= TWO_PI + 1e-12:
            y = 0.0
        if not (0.0 <= x <= np.pi):
            raise InvalidInputError(f"x={x!r} outside [0, pi]")
        if not (0.0 <= y < TWO_PI):
            raise InvalidInputError(f"y={y!r} outside [0, 2*pi)")
        if x == 0.0 or x == np.pi:
            y = 0.0
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


def angles_to_bloch(s: AngleState) -> np.ndarray:
    """Unit sphere point (sin x cos y, sin x sin y, cos x) of a state."""
    sx = np.sin(s.x)
    return np.array([sx * np.cos(s.y), sx * np.sin(s.y), np.cos(s.x)])


def bloch_to_angles(p) -> AngleState:
    """Angle coordinates of a unit 3-vector; inverse of angles_to_bloch.

    The input must be unit within 1e-9.  y is mapped into [0, 2pi) and
    poles come back with y = 0.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (3,) or not np.all(np.isfinite(p)):
        raise InvalidInputError("expected a finite 3-vector")
    if abs(np.linalg.norm(p) - 1.0) > 1e-9:
        raise InvalidInputError(f"point is not on the unit sphere: |p| = {np.linalg.norm(p)!r}")
    # atan2 of the transverse radius keeps full precision near the poles,
    # where arccos(Z) cannot resolve polar angles below ~1e-8
    transverse = np.hypot(p[0], p[1])
    if transverse < 1e-12:
        # the azimuth is pure rounding noise there; return the exact pole
        return AngleState(0.0 if p[2] > 0 else float(np.pi), 0.0)
    x = float(np.arctan2(transverse, p[2]))
    y = float(np.arctan2(p[1], p[0]))
    if y < 0.0:
        y += TWO_PI
    if y >= TWO_PI:
        y = 0.0
    return AngleState(x, y)


def angles_to_state(s: AngleState) -> np.ndarray:
    """Unit state vector (cos(x/2), e^{iy} sin(x/2)).

    The global phase is fixed by keeping the |0> amplitude real and
    non-negative, so vector-level comparisons are deterministic.
    """
    return np.array([np.cos(s.x / 2), np.exp(1j * s.y) * np.sin(s.x / 2)], dtype=complex)


@dataclass(frozen=True, eq=False)
class SphericalCircle:
    """Plane-sphere intersection: unit normal ``n`` and offset ``c`` with |c| <= 1.

    Construction normalizes and canonicalizes the orientation, so two
    SphericalCircle values describe the same point set exactly when
    their fields agree (up to float tolerance); compare with
    :func:`circles_equal`.
    """

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float).copy()
        c = float(self.offset)
        if n.shape != (3,) or not np.all(np.isfinite(n)) or not np.isfinite(c):
            raise InvalidInputError("circle requires a finite 3-vector normal and finite offset")
        norm = np.linalg.norm(n)
        if norm < 1e-12:
            raise InvalidInputError("circle normal must be nonzero")
        n /= norm
        c /= norm
        if abs(c) > 1.0 + 1e-12:
            raise EmptyCircleError(f"plane offset {c!r} misses the unit sphere")
        c = float(np.clip(c, -1.0, 1.0))
        if abs(c) <= CANON_EPS:
            for comp in n:
                if abs(comp) > CANON_EPS:
                    if comp < 0.0:
                        n = -n
                    break
        elif c < 0.0:
            n, c = -n, -c
        n = n + 0.0  # clears negative zeros
        n.setflags(write=False)
        object.__setattr__(self, "normal", n)
        object.__setattr__(self, "offset", c)

    @property
    def radius(self) -> float:
        return float(np.sqrt(max(0.0, 1.0 - self.offset**2)))

    @property
    def center(self) -> np.ndarray:
        """Center of the circle in 3-space (foot of the plane)."""
        return self.offset * self.normal

    def plane_residual(self, p):
        """|n . p - c| for a 3-vector or an (N, 3) stack of them."""
        p = np.asarray(p, dtype=float)
        return np.abs(p @ self.normal - self.offset)

    def contains(self, p, tol: float = 1e-9) -> bool:
        return bool(self.plane_residual(p) <= tol)

    def __repr__(self):
        n = self.normal
        return f"SphericalCircle(n=({n[0]:.6g}, {n[1]:.6g}, {n[2]:.6g}), c={self.offset:.6g})"


def circles_equal(a: SphericalCircle, b: SphericalCircle, tol: float = 1e-9) -> bool:
    """Whether two canonical circles describe the same point set."""
    if np.linalg.norm(a.normal - b.normal) <= tol and abs(a.offset - b.offset) <= tol:
        return True
    # opposite orientation can survive canonicalization only in the |c| ~ 0 tie-break zone
    return np.linalg.norm(a.normal + b.normal) <= tol and abs(a.offset + b.offset) <= tol


def distance_to_circle(circle: SphericalCircle, p) -> np.ndarray:
    """Euclidean 3-space distance from point(s) to the circle's point set.

    Accepts a single 3-vector or an (N, 3) array.  A degenerate point
    circle reduces to plain point distance.
    """
    p = np.atleast_2d(np.asarray(p, dtype=float))
    axial = p @ circle.normal - circle.offset
    in_plane = p - np.outer(p @ circle.normal, circle.normal)
    rho = np.linalg.norm(in_plane, axis=1)
    d = np.sqrt(axial**2 + (rho - circle.radius) ** 2)
    return d if d.size > 1 else d[0]


def circle_from_mask_params(alpha: float, theta: float, cval: float) -> SphericalCircle:
    """The level set {p : cos(a) Z - sin(a) cos(t) X - sin(a) sin(t) Y = cval}.

    This is the spherical circle carved out by holding the masking
    invariant of the (alpha, theta) family at the value ``cval``.
    """
    if not (np.isfinite(alpha) and np.isfinite(theta) and np.isfinite(cval)):
        raise InvalidInputError("mask parameters must be finite")
    if abs(cval) > 1.0 + 1e-12:
        raise EmptyCircleError(f"level value {cval!r} outside [-1, 1]: empty circle")
    n = np.array(
        [-np.sin(alpha) * np.cos(theta), -np.sin(alpha) * np.sin(theta), np.cos(alpha)]
    )
    return SphericalCircle(n, float(np.clip(cval, -1.0, 1.0)))


def canonical_mask_params(circle: SphericalCircle) -> tuple[float, float, float]:
    """Invert :func:`circle_from_mask_params` up to canonical orientation.

    Returns (alpha, theta, cval) with alpha in [0, pi) and theta in
    [0, 2pi) whose level circle at cval is the given one.  Horizontal
    planes (normal along +-Z) come back with alpha = 0 and theta = 0;
    great circles (cval ~ 0) pick the representative with theta in [0, pi).
    """
    n = circle.normal
    c = circle.offset
    # the (alpha, theta) normals exclude -Z; flip orientation to reach it
    if n[2] < -1.0 + 1e-15 and np.hypot(n[0], n[1]) < 1e-15:
        n, c = -n, -c
    rho = np.hypot(n[0], n[1])
    if rho < 1e-15:
        alpha, theta = 0.0, 0.0
    else:
        alpha = float(np.arctan2(rho, n[2]))
        theta = float(np.arctan2(-n[1], -n[0]) % TWO_PI)
    # great circles: both orientations parametrize the same point set;
    # use the one with theta in [0, pi)
    if abs(c) <= CANON_EPS and theta >= np.pi:
        alpha = float(np.pi - alpha)
        theta = float(theta - np.pi)
        c = -c
    if alpha >= np.pi:
        alpha = 0.0  # only reachable through rounding at rho ~ 0
    return alpha, theta, float(c) + 0.0


def circle_through_three(p1, p2, p3) -> SphericalCircle:
    """The unique spherical circle through three distinct unit points."""
    pts = [np.asarray(p, dtype=float) for p in (p1, p2, p3)]
    for i in range(3):
        for j in range(i + 1, 3):
            if np.linalg.norm(pts[i] - pts[j]) <= 1e-8:
                raise DegenerateInputError("need three pairwise-distinct points on the sphere")
    n = np.cross(pts[1] - pts[0], pts[2] - pts[0])
    if np.linalg.norm(n) < 1e-14:
        raise DegenerateInputError("points are numerically collinear")
    n /= np.linalg.norm(n)
    c = float(n @ (pts[0] + pts[1] + pts[2]) / 3.0)
    return SphericalCircle(n, c)


# --- circle-circle intersection -------------------------------------------


@dataclass(frozen=True, eq=False)
class Coincident:
    circle: SphericalCircle


@dataclass(frozen=True, eq=False)
class TwoPoints:
    p1: np.ndarray
    p2: np.ndarray


@dataclass(frozen=True, eq=False)
class OnePoint:
    p: np.ndarray


@dataclass(frozen=True)
class Empty:
    pass


CircleIntersection = Coincident | TwoPoints | OnePoint | Empty


def intersect_circles(c1: SphericalCircle, c2: SphericalCircle) -> CircleIntersection:
    """Intersect two spherical circles.

    Parallel planes give Coincident or Empty; otherwise the plane-plane
    line is cut against the unit sphere, with the discriminant
    classified as TwoPoints, OnePoint (tangency within TANGENT_EPS) or
    Empty.  Returned points satisfy both plane equations and lie on the
    sphere to within 1e-9; the two-point case is ordered
    lexicographically by (X, Y, Z) so the result is symmetric in the
    argument order.
    """
    n1, o1 = c1.normal, c1.offset
    n2, o2 = c2.normal, c2.offset
    if n1 @ n2 < 0.0:
        # same plane, opposite orientation: flip so the angle stays acute
        n2, o2 = -n2, -o2
    d = np.cross(n1, n2)
    dn = np.linalg.norm(d)
    if dn < TANGENT_EPS:
        if abs(o1 - o2) <= TANGENT_EPS:
            return Coincident(c1)
        return Empty()
    d /= dn
    # The textbook line-point formula divides by 1 - dot^2, which loses
    # every digit once the plane angle drops below ~1e-8 (dot rounds to 1).
    # Both 1 -/+ dot are recovered from the normal difference instead:
    # |n1 - n2|^2 = 2 (1 - dot) is cancellation-free at small angles, and
    # the flip above keeps 1 + dot away from zero.
    w = n1 - n2
    one_minus = float(w @ w) / 2.0
    one_plus = 2.0 - one_minus
    q0 = (o1 - o2) / (2.0 * one_minus) * w + (o1 + o2) / (2.0 * one_plus) * (n1 + n2)
    disc = 1.0 - float(q0 @ q0)
    if disc > TANGENT_EPS:
        t = np.sqrt(disc)
        pa, pb = q0 + t * d, q0 - t * d
        if tuple(pa) > tuple(pb):
            pa, pb = pb, pa
        return TwoPoints(pa, pb)
    if disc < -TANGENT_EPS:
        return Empty()
    nq = np.linalg.norm(q0)
    return OnePoint(q0 / nq if nq > 0 else q0)


def sample_circle(circle: SphericalCircle, k: int) -> list[AngleState]:
    """k points uniformly spaced by central angle around the circle.

    Every sample satisfies the plane equation to within 1e-10.  Point
    circles (radius < 1e-9) return k copies of their single point.
    """
    if k < 1:
        raise InvalidInputError("need at least one sample")
    n = circle.normal
    r = circle.radius
    if r < POINT_CIRCLE_RADIUS:
        pole = circle.offset * n
        pole /= np.linalg.norm(pole)
        return [bloch_to_angles(pole)] * k
    # orthonormal frame in the circle's plane, seeded off the smallest normal component
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(n)))] = 1.0
    e1 = axis - (axis @ n) * n
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    center = circle.center
    out = []
    for j in range(k):
        phi = TWO_PI * j / k
        p = center + r * (np.cos(phi) * e1 + np.sin(phi) * e2)
        p /= np.linalg.norm(p)
        out.append(bloch_to_angles(p))
    return out
