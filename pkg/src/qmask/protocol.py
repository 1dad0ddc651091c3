"""Multi-masker secret sharing with geometric decoding.

Alice encodes a message (x0, y0) as the state |(x0, y0)> and masks it
once per receiver, each time with a different masker from the
(alpha, theta) family.  Receiver k gets only the B-side reduced state
of their copy together with the (public) masker parameters.  One share
reveals nothing beyond a spherical circle the message must lie on: its
reduced state is I/2 + (c_k/2)(|0><1| + |1><0|) with c_k the masker's
invariant at the message, so the circle is the invariant's level set.

Cooperating receivers intersect their circles.  Depending on the scheme
geometry the survivors are a unique point (the message), a point pair
that no number of further shares can split (all-vertical schemes), or
the whole circle when every share repeats the same constraint.

Shares carry exact reduced matrices; tomography noise is out of scope,
but the candidate-filter tolerance is an argument so noisy inputs can
be admitted later.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import (
    AngleState,
    Coincident,
    Empty,
    OnePoint,
    SphericalCircle,
    bloch_to_angles,
    circle_from_mask_params,
    intersect_circles,
)
from .errors import CorruptShareError, InvalidInputError, InvalidSchemeError
from .linalg import partial_trace_a
from .masking import MaskerParams, apply_masker, build_masker

DECODE_TOL = 1e-8


@dataclass(frozen=True)
class Scheme:
    """An ordered list of maskers Alice applies, one per receiver."""

    maskers: tuple[MaskerParams, ...]
    label: str = ""

    def __post_init__(self):
        maskers = tuple(self.maskers)
        if not maskers:
            raise InvalidSchemeError("a scheme needs at least one masker")
        object.__setattr__(self, "maskers", maskers)

    def __len__(self):
        return len(self.maskers)


@dataclass(frozen=True, eq=False)
class Share:
    """One receiver's holdings: masker parameters plus their reduced state.

    Honest shares have rho_b Hermitian with unit trace, both diagonal
    entries 1/2 and a real off-diagonal entry; that structure is forced
    by the masker family and is enforced when the share is consumed, not
    here, so tampered shares remain representable and detectable.
    """

    masker: MaskerParams
    rho_b: np.ndarray


def encode(message: AngleState, scheme: Scheme) -> list[Share]:
    """Mask the message once per scheme masker and collect the B-side shares."""
    shares = []
    for params in scheme.maskers:
        psi = apply_masker(build_masker(params), message)
        shares.append(Share(masker=params, rho_b=partial_trace_a(psi)))
    return shares


def share_constraint(share: Share, tol: float = DECODE_TOL) -> SphericalCircle:
    """The spherical circle a single share pins the message to.

    Validates the share structure within tol and raises
    CorruptShareError on violation.  The circle is the masker's
    invariant level set at c = 2 Re(rho_b[0,1]); the true message always
    lies on it.
    """
    rho = np.asarray(share.rho_b, dtype=complex)
    if rho.shape != (2, 2) or not np.all(np.isfinite(rho.view(float))):
        raise CorruptShareError("share reduced state must be a finite 2x2 matrix")
    problems = [
        abs(rho[0, 0] - 0.5),
        abs(rho[1, 1] - 0.5),
        abs(rho[0, 1] - rho[1, 0].conjugate()),
        abs(rho[0, 1].imag),
    ]
    if max(problems) > tol:
        raise CorruptShareError(
            "share reduced state violates the masking structure "
            f"(worst deviation {max(problems):.3e})"
        )
    c = float(2.0 * rho[0, 1].real)
    if abs(c) > 1.0 + tol:
        raise CorruptShareError(f"share off-diagonal implies impossible level {c!r}")
    return circle_from_mask_params(
        share.masker.alpha, share.masker.theta, float(np.clip(c, -1.0, 1.0))
    )


# --- decoding ----------------------------------------------------------------


@dataclass(frozen=True)
class Unique:
    state: AngleState


@dataclass(frozen=True)
class TwoCandidates:
    first: AngleState
    second: AngleState


@dataclass(frozen=True, eq=False)
class AmbiguousCircle:
    circle: SphericalCircle


@dataclass(frozen=True)
class Inconsistent:
    pass


DecodeResult = Unique | TwoCandidates | AmbiguousCircle | Inconsistent


def _refine(points: list[np.ndarray], circles: list[SphericalCircle], cutoff: float) -> list[np.ndarray]:
    """Polish candidates by Newton steps on the joint plane-plus-sphere system.

    Near-tangent or nearly-duplicate circle pairs can misplace an
    intersection point by far more than the decode tolerance (the
    position error grows like rounding noise over the pair's angular
    separation).  Solving the full system restores the precision the
    shares jointly carry: the sphere row resolves the direction a
    rank-deficient plane stack leaves free whenever the crossing is
    transversal.

    Jacobian directions with singular values below ``cutoff`` are
    dropped rather than inverted; they belong to constraints that agree
    to within the decode tolerance, where inversion would only amplify
    noise, and they leave at most ~cutoff of residual behind.
    """
    normals = np.vstack([c.normal for c in circles])
    offsets = np.array([c.offset for c in circles])
    refined = []
    for p in points:
        q = p.astype(float).copy()
        for _ in range(4):
            jac = np.vstack([normals, q])
            residual = np.concatenate([offsets - normals @ q, [(1.0 - q @ q) / 2.0]])
            u, s, vt = np.linalg.svd(jac, full_matrices=False)
            rank = int(np.sum(s > cutoff))
            if rank == 0:
                break
            step = vt[:rank].T @ ((u[:, :rank].T @ residual) / s[:rank])
            q = q + step
            if np.linalg.norm(step) < 1e-15:
                break
        nq = np.linalg.norm(q)
        if nq > 1e-12:
            q = q / nq
        refined.append(q)
    return refined


def decode(shares: list[Share], tol: float = DECODE_TOL) -> DecodeResult:
    """Intersect the share circles and classify what survives.

    The circles are intersected sequentially -- circle against circle
    first, then plane-membership filtering of candidate points -- and
    the surviving points are refined against the full constraint system
    before the final tolerance check.  Inconsistent is a result, not an
    error: it can only arise from corrupted shares.
    """
    if not shares:
        raise InvalidInputError("decode needs at least one share")
    circles = [share_constraint(s, tol=tol) for s in shares]
    current_circle: SphericalCircle | None = circles[0]
    points: list[np.ndarray] = []
    # candidate positions may sit off by ~sqrt(tangency threshold) before
    # refinement, so the running filter is looser than the final one
    prefilter = max(tol, 1e-4)
    for ck in circles[1:]:
        if current_circle is not None:
            hit = intersect_circles(current_circle, ck)
            if isinstance(hit, Coincident):
                continue
            if isinstance(hit, Empty):
                return Inconsistent()
            points = [hit.p] if isinstance(hit, OnePoint) else [hit.p1, hit.p2]
            current_circle = None
        else:
            points = [p for p in points if ck.plane_residual(p) <= prefilter]
            if not points:
                return Inconsistent()
    if current_circle is not None:
        return AmbiguousCircle(current_circle)
    points = _refine(points, circles, cutoff=tol)
    points = [p for p in points if max(c.plane_residual(p) for c in circles) <= tol]
    # refinement can merge a near-tangent pair into one candidate
    deduped: list[np.ndarray] = []
    for p in points:
        if all(np.linalg.norm(p - q) > 1e-6 for q in deduped):
            deduped.append(p)
    if not deduped:
        return Inconsistent()
    if len(deduped) == 1:
        return Unique(bloch_to_angles(deduped[0]))
    states = sorted((bloch_to_angles(p) for p in deduped), key=lambda s: (s.x, s.y))
    return TwoCandidates(states[0], states[1])


# --- preset schemes -----------------------------------------------------------


def fig1_axes() -> Scheme:
    """Three maskers pinning cos x, sin x cos y and sin x sin y in turn.

    Any three cooperating receivers recover the full Bloch point, so the
    message decodes uniquely everywhere off the poles.
    """
    return Scheme(
        (
            MaskerParams(0.0, 0.0),
            MaskerParams(np.pi / 2, 0.0),
            MaskerParams(np.pi / 2, np.pi / 2),
        ),
        label="fig1_axes",
    )


def fig3_pole(n: int) -> Scheme:
    """Maskers (k*pi/n, 0) for k = 1..n-1; their circles through the north
    pole are pairwise tangent there, so any two shares of the message
    (0, 0) decode it uniquely."""
    if n < 3:
        raise InvalidSchemeError("the pole family needs n >= 3")
    return Scheme(
        tuple(MaskerParams(k * np.pi / n, 0.0) for k in range(1, n)),
        label=f"fig3_pole:{n}",
    )


def fig2_vertical(n: int) -> Scheme:
    """Maskers (pi/2, k*pi/n) for k = 0..n-1, all with vertical circles.

    Every pair of the circles crosses in the same two points, the
    message and its Z-reflection, so no number of shares can decide
    between them.
    """
    if n < 4:
        raise InvalidSchemeError("the vertical family needs n >= 4")
    return Scheme(
        tuple(MaskerParams(np.pi / 2, k * np.pi / n) for k in range(n)),
        label=f"fig2_vertical:{n}",
    )


def general(n: int) -> Scheme:
    """Maskers (k*pi/n, k*pi/n) for k = 1..n-1.

    For n >= 5 every triple of plane normals has full rank, so any three
    shares decode uniquely.  At n = 4 the three normals are linearly
    dependent (n1 - n2 + n3 = 0): all three planes stay parallel to one
    line and a generic message only narrows to two candidates.
    """
    if n < 4:
        raise InvalidSchemeError("the general family needs n >= 4")
    return Scheme(
        tuple(MaskerParams(k * np.pi / n, k * np.pi / n) for k in range(1, n)),
        label=f"general:{n}",
    )


def preset_schemes() -> dict[str, str]:
    """Names and descriptions of the built-in scheme families."""
    return {
        "fig1_axes": "three axis maskers; any message decodes uniquely",
        "fig3_pole:N": "N-1 circles tangent at the north pole (N >= 3); two shares decode (0, 0)",
        "fig2_vertical:N": "N vertical circles (N >= 4); every subset leaves two candidates",
        "general:N": "N-1 maskers (k*pi/N, k*pi/N) (N >= 4); three shares decode for N >= 5",
    }


def preset_scheme(spec: str) -> Scheme:
    """Resolve a scheme name such as ``fig1_axes`` or ``fig3_pole:8``."""
    name, _, arg = spec.partition(":")
    if name == "fig1_axes":
        if arg:
            raise InvalidSchemeError("fig1_axes takes no size argument")
        return fig1_axes()
    factories = {"fig3_pole": fig3_pole, "fig2_vertical": fig2_vertical, "general": general}
    if name not in factories:
        raise InvalidSchemeError(f"unknown scheme {spec!r}; presets: {sorted(factories) + ['fig1_axes']}")
    if not arg:
        raise InvalidSchemeError(f"scheme {name!r} needs a size, e.g. {name}:8")
    try:
        n = int(arg)
    except ValueError as exc:
        raise InvalidSchemeError(f"bad scheme size {arg!r}") from exc
    return factories[name](n)
