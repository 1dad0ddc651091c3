"""Maskable-set analysis of arbitrary single-qubit-to-two-qubit linear operators.

An operator is given by eight complex coefficients,

    |0> -> a0|00> + a1|01> + c0|10> + c1|11>
    |1> -> b0|00> + b1|01> + d0|10> + d1|11>,

or equivalently by the B-side sub-vectors mu0 = (a0, a1), mu1 = (c0, c1)
attached to the image of |0>, and nu0 = (b0, b1), nu1 = (d0, d1) for |1>.

Each real entry function of the two raw reduced matrices (diagonals,
real and imaginary parts of the upper off-diagonal, for rho_A and
rho_B) is an affine function of the Bloch coordinates (X, Y, Z).  The
largest set of input states sharing both reduced matrices with an
anchor state is therefore the sphere cut by up to eight anchored
planes: a spherical circle, a pair of points, or a single point --
never the full sphere for a nonzero operator, which is asserted at
runtime.

Raw means unnormalized: membership compares the direct traces of the
mapped vector with no renormalization, so non-isometric operators are
analyzed exactly as their images come out.  Both conventions coincide
on isometries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import AngleState, SphericalCircle, angles_to_bloch, distance_to_circle
from .errors import InvalidInputError, InvariantViolationError

# Rank decisions on the stacked constraint normals use this absolute
# singular-value threshold after row normalization.
RANK_TOL = 1e-9

# Fitted-vs-exact residual allowance per unit of squared operator norm
# (entry functions are quadratic in the coefficients).
FIT_RESIDUAL_TOL = 1e-10

ENTRY_LABELS = (
    "rhoA.re00", "rhoA.re11", "rhoA.re01", "rhoA.im01",
    "rhoB.re00", "rhoB.re11", "rhoB.re01", "rhoB.im01",
)

# Fit states sitting at the Bloch points +Z, -Z, +X, +Y, with -Y as the
# consistency probe; these four are affinely independent.
_FIT_STATES = (
    (0.0, 0.0),
    (np.pi, 0.0),
    (np.pi / 2, 0.0),
    (np.pi / 2, np.pi / 2),
    (np.pi / 2, 3 * np.pi / 2),
)


@dataclass(frozen=True)
class GeneralLinearOp:
    """An arbitrary nonzero linear map from one qubit into two."""

    a0: complex
    a1: complex
    b0: complex
    b1: complex
    c0: complex
    c1: complex
    d0: complex
    d1: complex

    def __post_init__(self):
        coeffs = self.coefficients
        if not np.all(np.isfinite(coeffs.view(float))):
            raise InvalidInputError("operator coefficients must be finite")
        if not np.any(coeffs):
            raise InvalidInputError("the zero operator has no maskable-set analysis")

    @property
    def coefficients(self) -> np.ndarray:
        return np.array(
            [self.a0, self.a1, self.b0, self.b1, self.c0, self.c1, self.d0, self.d1],
            dtype=complex,
        )

    @property
    def col0(self) -> np.ndarray:
        """Image of |0> in the 2a+b amplitude ordering."""
        return np.array([self.a0, self.a1, self.c0, self.c1], dtype=complex)

    @property
    def col1(self) -> np.ndarray:
        """Image of |1>."""
        return np.array([self.b0, self.b1, self.d0, self.d1], dtype=complex)

    @property
    def mu0(self) -> np.ndarray:
        return np.array([self.a0, self.a1], dtype=complex)

    @property
    def mu1(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=complex)

    @property
    def nu0(self) -> np.ndarray:
        return np.array([self.b0, self.b1], dtype=complex)

    @property
    def nu1(self) -> np.ndarray:
        return np.array([self.d0, self.d1], dtype=complex)

    @classmethod
    def from_columns(cls, col0, col1) -> "GeneralLinearOp":
        c0 = np.asarray(col0, dtype=complex)
        c1 = np.asarray(col1, dtype=complex)
        if c0.shape != (4,) or c1.shape != (4,):
            raise InvalidInputError("operator columns must be 4-component vectors")
        return cls(c0[0], c0[1], c1[0], c1[1], c0[2], c0[3], c1[2], c1[3])

    @classmethod
    def from_isometry(cls, iso) -> "GeneralLinearOp":
        return cls.from_columns(iso.col0, iso.col1)


def operator_scale(op: GeneralLinearOp) -> float:
    """Squared Frobenius norm of the 4x2 coefficient matrix.

    Entry functions are quadratic forms in the coefficients, so this is
    the natural magnitude unit for constraint rows and tolerance scaling
    (2-norm of the stacked constraint matrix stays below ~0.7x this).
    """
    return float(np.sum(np.abs(op.coefficients) ** 2))


@dataclass(frozen=True, eq=False)
class AffineConstraint:
    """One real entry function as n . (X, Y, Z) + r over the Bloch sphere."""

    n: np.ndarray
    r: float
    label: str = ""

    def evaluate(self, p) -> np.ndarray:
        """Value at a Bloch point or an (N, 3) stack of points."""
        return np.asarray(p, dtype=float) @ self.n + self.r


# --- maskable-set classification -------------------------------------------


@dataclass(frozen=True, eq=False)
class SinglePoint:
    point: np.ndarray


@dataclass(frozen=True, eq=False)
class PointPair:
    p1: np.ndarray
    p2: np.ndarray


@dataclass(frozen=True, eq=False)
class Circle:
    circle: SphericalCircle


@dataclass(frozen=True)
class FullSphere:
    pass


MaskableClass = SinglePoint | PointPair | Circle | FullSphere


def _amplitudes(states) -> tuple[np.ndarray, np.ndarray]:
    xs = np.array([s[0] for s in states])
    ys = np.array([s[1] for s in states])
    return np.cos(xs / 2.0), np.exp(1j * ys) * np.sin(xs / 2.0)


def _entry_values(op: GeneralLinearOp, states) -> np.ndarray:
    """The 8 real entry functions at each (x, y) pair; shape (len(states), 8)."""
    w0, w1 = _amplitudes(states)
    psi = np.outer(w0, op.col0) + np.outer(w1, op.col1)
    m = psi.reshape(-1, 2, 2)
    rho_a = np.einsum("nab,ncb->nac", m, m.conj())
    rho_b = np.einsum("nab,nac->nbc", m, m.conj())
    return np.column_stack(
        [
            rho_a[:, 0, 0].real, rho_a[:, 1, 1].real,
            rho_a[:, 0, 1].real, rho_a[:, 0, 1].imag,
            rho_b[:, 0, 0].real, rho_b[:, 1, 1].real,
            rho_b[:, 0, 1].real, rho_b[:, 0, 1].imag,
        ]
    )


def reduced_pair_raw(op: GeneralLinearOp, s: AngleState) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized (Tr_B, Tr_A) of the operator applied to |(x, y)>."""
    w0 = np.cos(s.x / 2.0)
    w1 = np.exp(1j * s.y) * np.sin(s.x / 2.0)
    m = (w0 * op.col0 + w1 * op.col1).reshape(2, 2)
    return m @ m.conj().T, m.T @ m.conj()


def extract_constraints(op: GeneralLinearOp) -> list[AffineConstraint]:
    """Recover the 8 affine entry functions by evaluation at fixed Bloch points.

    The four points +Z, -Z, +X, +Y determine each affine function; the
    value at -Y then has to agree, which guards the affineness of the
    whole pipeline.  One uniform numeric path covers both reduced
    matrices (the rho_B family has no special-case handling).
    """
    vals = _entry_values(op, _FIT_STATES)
    v_zp, v_zm, v_xp, v_yp, v_ym = vals
    r = (v_zp + v_zm) / 2.0
    nz = (v_zp - v_zm) / 2.0
    nx = v_xp - r
    ny = v_yp - r
    residual = np.abs((r - ny) - v_ym).max()
    if residual > FIT_RESIDUAL_TOL * max(1.0, operator_scale(op)):
        raise InvariantViolationError(
            f"entry functions failed the affine consistency probe (residual {residual:.3e})"
        )
    return [
        AffineConstraint(np.array([nx[i], ny[i], nz[i]]), float(r[i]), ENTRY_LABELS[i])
        for i in range(8)
    ]


def constraint_matrix(op: GeneralLinearOp) -> np.ndarray:
    """The 8x3 stack of constraint normals, rows ordered as ENTRY_LABELS."""
    return np.vstack([c.n for c in extract_constraints(op)])


def maskable_set(op: GeneralLinearOp, anchor: AngleState) -> MaskableClass:
    """Classify the largest state set sharing the anchor's raw reduced pair.

    The anchored constraints n_i . (p - p0) = 0 are ranked by singular
    values of the row-normalized normal stack (threshold RANK_TOL, with
    rows below the operator's noise floor treated as zero):

      rank 1 -> circle through the anchor (a point if its radius collapses)
      rank 2 -> the plane-line against the sphere: two points or a tangent point
      rank 3 -> the anchor alone

    Rank 0 would mean every state is masked, which no nonzero operator
    admits; it raises InvariantViolationError.
    """
    normals = constraint_matrix(op)
    p0 = angles_to_bloch(anchor)
    row_norms = np.linalg.norm(normals, axis=1)
    floor = 1e-12 * operator_scale(op)
    keep = normals[row_norms > floor] / row_norms[row_norms > floor, None]
    if keep.size == 0:
        raise InvariantViolationError(
            "all entry functions are constant: a nonzero operator cannot mask the full sphere"
        )
    _, svals, vt = np.linalg.svd(keep)
    rank = int(np.sum(svals > RANK_TOL))
    if rank == 0:
        raise InvariantViolationError(
            "constraint stack has rank 0: a nonzero operator cannot mask the full sphere"
        )
    if rank == 1:
        circle = SphericalCircle(vt[0], float(vt[0] @ p0))
        if circle.radius < 1e-9:
            return SinglePoint(p0)
        return Circle(circle)
    if rank == 2:
        d = np.cross(vt[0], vt[1])
        d /= np.linalg.norm(d)
        # the anchored line passes through p0; its second sphere crossing is
        # at parameter t = -2 (p0 . d), degenerating to tangency when that vanishes
        t = -2.0 * float(p0 @ d)
        if abs(t) < 1e-9:
            return SinglePoint(p0)
        p1 = p0 + t * d
        p1 /= np.linalg.norm(p1)
        a, b = (p0, p1) if tuple(p0) <= tuple(p1) else (p1, p0)
        return PointPair(a, b)
    return SinglePoint(p0)


def class_distance(mask_class: MaskableClass, points) -> np.ndarray:
    """Euclidean distance from Bloch point(s) to a classified maskable set."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    if isinstance(mask_class, SinglePoint):
        d = np.linalg.norm(p - mask_class.point, axis=1)
    elif isinstance(mask_class, PointPair):
        d = np.minimum(
            np.linalg.norm(p - mask_class.p1, axis=1),
            np.linalg.norm(p - mask_class.p2, axis=1),
        )
    elif isinstance(mask_class, Circle):
        d = np.atleast_1d(distance_to_circle(mask_class.circle, p))
    elif isinstance(mask_class, FullSphere):
        d = np.zeros(len(p))
    else:
        raise InvalidInputError(f"not a maskable-set class: {mask_class!r}")
    return d if d.size > 1 else d[0]


# --- product-form diagnosis -------------------------------------------------


@dataclass(frozen=True)
class ProductFormReport:
    """Degenerate-factorization test of an operator.

    An operator whose images both factor through the same first-qubit
    vector, |0> -> (|0> + lam |1>) x mu0 and |1> -> (|0> + lam |1>) x nu0,
    is characterized by vanishing cross inner products between the mu and
    nu sub-vectors (orthogonality residual) together with matching Gram
    data within each family (norm residual).  ``lam`` is recovered when
    the factorization holds and the mu0/nu0 pair is nonzero.
    """

    orthogonality_residual: float
    norm_residual: float
    is_product_form: bool
    lam: complex | None = None


def product_form_diagnosis(op: GeneralLinearOp, tol: float = 1e-10) -> ProductFormReport:
    mu0, mu1, nu0, nu1 = op.mu0, op.mu1, op.nu0, op.nu1
    cross = [
        np.vdot(nu0, mu0),
        np.vdot(nu1, mu1),
        np.vdot(nu1, mu0),
        np.vdot(nu0, mu1),
    ]
    gram = [
        np.vdot(mu1, mu0) - np.vdot(nu1, nu0),
        np.vdot(mu0, mu0) - np.vdot(nu0, nu0),
        np.vdot(mu1, mu1) - np.vdot(nu1, nu1),
    ]
    orth = float(max(abs(z) for z in cross))
    norm = float(max(abs(z) for z in gram))
    is_product = orth < tol and norm < tol
    lam = None
    if is_product:
        denom = float(np.vdot(mu0, mu0).real + np.vdot(nu0, nu0).real)
        if denom > tol:
            lam = complex((np.vdot(mu0, mu1) + np.vdot(nu0, nu1)) / denom)
    return ProductFormReport(orth, norm, is_product, lam)


def f01_symbolic(op: GeneralLinearOp) -> tuple[complex, complex, complex, complex]:
    """Closed-form plane coefficients of the upper off-diagonal of rho_A.

    Writing that entry as p*Z + q*X + h*Y + r over the Bloch sphere,

        p = (<mu1|mu0> - <nu1|nu0>)/2
        q = (<nu1|mu0> + <mu1|nu0>)/2
        h = i (<mu1|nu0> - <nu1|mu0>)/2
        r = (<mu1|mu0> + <nu1|nu0>)/2

    The numeric affine fit in :func:`extract_constraints` must agree
    with these; they serve as an independent derivation for testing.
    """
    mu0, mu1, nu0, nu1 = op.mu0, op.mu1, op.nu0, op.nu1
    p = (np.vdot(mu1, mu0) - np.vdot(nu1, nu0)) / 2.0
    q = (np.vdot(nu1, mu0) + np.vdot(mu1, nu0)) / 2.0
    h = 1j * (np.vdot(mu1, nu0) - np.vdot(nu1, mu0)) / 2.0
    r = (np.vdot(mu1, mu0) + np.vdot(nu1, nu0)) / 2.0
    return complex(p), complex(q), complex(h), complex(r)
