"""Explicit qubit maskers and their maskable circles.

A masker is the two-parameter family of 4x2 isometries S(alpha, theta)
acting as

    |0> -> |0>|u0> + |1>|u1>,    |1> -> |0>|v0> + |1>|v1>

with

    u0 =  (1/sqrt2) cos(a/2) e^{i(t + pi/4)} (|0> + |1>)
    u1 =  (1/sqrt2) sin(a/2) e^{i(t - pi/4)} (|0> - |1>)
    v0 = -(1/sqrt2) sin(a/2) e^{ i pi/4}     (|0> + |1>)
    v1 =  (1/sqrt2) cos(a/2) e^{-i pi/4}     (|0> - |1>)

Applied to |(x, y)> the reduced states depend on the input only through
the scalar invariant

    hbar(x, y) = cos(a) cos(x) - sin(a) sin(x) cos(y - t)

namely rho_A = diag(1/2 + hbar/2, 1/2 - hbar/2) and rho_B = I/2 +
(hbar/2)(|0><1| + |1><0|).  The set where hbar is constant is a
spherical circle, so every spherical circle on the Bloch sphere is
masked by the member of the family sharing its plane normal; any three
distinct states determine such a circle and hence a common masker.

The masker is represented by its two isometry columns (the images of
|0> and |1>), not by a unitary dilation on the full two-qubit space:
with the ancilla input fixed, the 4x2 isometry is the faithful object.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import (
    AngleState,
    SphericalCircle,
    angles_to_bloch,
    canonical_mask_params,
    circle_from_mask_params,
    circle_through_three,
)
from .errors import InvalidInputError
from .linalg import TOL_EQUALITY, mat_distance, partial_trace_a, partial_trace_b

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class MaskerParams:
    """Masker family parameters, alpha in [0, pi) and theta in [0, 2pi)."""

    alpha: float
    theta: float

    def __post_init__(self):
        a, t = float(self.alpha), float(self.theta)
        if not (np.isfinite(a) and np.isfinite(t)):
            raise InvalidInputError("masker parameters must be finite")
        if not (0.0 <= a < np.pi):
            raise InvalidInputError(f"alpha={a!r} outside [0, pi)")
        if not (0.0 <= t < TWO_PI):
            raise InvalidInputError(f"theta={t!r} outside [0, 2*pi)")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "theta", t)


@dataclass(frozen=True, eq=False)
class Isometry42:
    """A 4x2 isometry given by its columns, the images of |0> and |1>.

    Columns must be orthonormal within 1e-12 (checked at construction).
    """

    col0: np.ndarray
    col1: np.ndarray

    def __post_init__(self):
        c0 = np.asarray(self.col0, dtype=complex).copy()
        c1 = np.asarray(self.col1, dtype=complex).copy()
        if c0.shape != (4,) or c1.shape != (4,):
            raise InvalidInputError("isometry columns must be 4-component vectors")
        if not (np.all(np.isfinite(c0.view(float))) and np.all(np.isfinite(c1.view(float)))):
            raise InvalidInputError("isometry columns contain non-finite components")
        if (
            abs(np.vdot(c0, c0) - 1.0) > 1e-12
            or abs(np.vdot(c1, c1) - 1.0) > 1e-12
            or abs(np.vdot(c0, c1)) > 1e-12
        ):
            raise InvalidInputError("columns are not orthonormal: not an isometry")
        c0.setflags(write=False)
        c1.setflags(write=False)
        object.__setattr__(self, "col0", c0)
        object.__setattr__(self, "col1", c1)

    @property
    def matrix(self) -> np.ndarray:
        return np.column_stack([self.col0, self.col1])


@dataclass(frozen=True)
class MaskReport:
    """Outcome of a masking verification over a state set.

    ``ok`` holds exactly when both reduced-state deviations stay within
    the tolerance; ``witness`` names the first offending pair otherwise.
    """

    ok: bool
    max_deviation_a: float
    max_deviation_b: float
    witness: tuple[AngleState, AngleState] | None = None


def hbar(params: MaskerParams, s: AngleState) -> float:
    """The masking invariant cos(a) cos(x) - sin(a) sin(x) cos(y - t).

    Always in [-1, 1]; equals the dot product of the Bloch point with
    the plane normal of :func:`maskable_circle`.
    """
    return float(
        np.cos(params.alpha) * np.cos(s.x)
        - np.sin(params.alpha) * np.sin(s.x) * np.cos(s.y - params.theta)
    )


def build_masker(params: MaskerParams) -> Isometry42:
    """Construct the 4x2 isometry of the (alpha, theta) masker."""
    a, t = params.alpha, params.theta
    s2 = np.sqrt(2.0) / 2.0
    ca, sa = np.cos(a / 2.0), np.sin(a / 2.0)
    plus = np.array([1.0, 1.0], dtype=complex)
    minus = np.array([1.0, -1.0], dtype=complex)
    u0 = s2 * ca * np.exp(1j * (t + np.pi / 4)) * plus
    u1 = s2 * sa * np.exp(1j * (t - np.pi / 4)) * minus
    v0 = -s2 * sa * np.exp(1j * np.pi / 4) * plus
    v1 = s2 * ca * np.exp(-1j * np.pi / 4) * minus
    return Isometry42(np.concatenate([u0, u1]), np.concatenate([v0, v1]))


def apply_masker(iso: Isometry42, s: AngleState) -> np.ndarray:
    """Image cos(x/2) col0 + e^{iy} sin(x/2) col1 of the state |(x, y)>."""
    return np.cos(s.x / 2.0) * iso.col0 + np.exp(1j * s.y) * np.sin(s.x / 2.0) * iso.col1


def predicted_reduced(params: MaskerParams, s: AngleState) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form reduced pair (rho_A, rho_B) of the masked state.

    rho_A = diag(1/2 + h/2, 1/2 - h/2) and rho_B = I/2 + (h/2) X with
    h = hbar(params, s); both are Hermitian, trace one and PSD.
    """
    h = hbar(params, s)
    rho_a = np.array([[0.5 + h / 2.0, 0.0], [0.0, 0.5 - h / 2.0]], dtype=complex)
    rho_b = np.array([[0.5, h / 2.0], [h / 2.0, 0.5]], dtype=complex)
    return rho_a, rho_b


def maskable_circle(params: MaskerParams, anchor: AngleState) -> SphericalCircle:
    """The spherical circle of states this masker hides alongside the anchor."""
    return circle_from_mask_params(params.alpha, params.theta, hbar(params, anchor))


def verify_mask(iso: Isometry42, states: list[AngleState], tol: float = TOL_EQUALITY) -> MaskReport:
    """Check that all states produce identical reduced pairs under the isometry.

    Every state is compared against the first (identity of marginals is
    transitive, so O(n) comparisons suffice); deviations are Frobenius
    distances.
    """
    if not states:
        raise InvalidInputError("verify_mask needs at least one state")
    psi0 = apply_masker(iso, states[0])
    ref_a, ref_b = partial_trace_b(psi0), partial_trace_a(psi0)
    max_a = max_b = 0.0
    witness = None
    for s in states[1:]:
        psi = apply_masker(iso, s)
        da = mat_distance(partial_trace_b(psi), ref_a)
        db = mat_distance(partial_trace_a(psi), ref_b)
        if witness is None and (da > tol or db > tol):
            witness = (states[0], s)
        max_a = max(max_a, da)
        max_b = max(max_b, db)
    ok = max_a <= tol and max_b <= tol
    return MaskReport(ok=ok, max_deviation_a=max_a, max_deviation_b=max_b,
                      witness=None if ok else witness)


def masker_for_states(s1: AngleState, s2: AngleState, s3: AngleState) -> tuple[MaskerParams, float]:
    """A masker hiding three distinct states, plus its invariant level.

    The three Bloch points fix a spherical circle; the masker sharing
    that circle's plane normal masks all three.  Returns the parameters
    and the circle's canonical offset.
    """
    circle = circle_through_three(
        angles_to_bloch(s1), angles_to_bloch(s2), angles_to_bloch(s3)
    )
    alpha, theta, cval = canonical_mask_params(circle)
    return MaskerParams(alpha, theta), cval
