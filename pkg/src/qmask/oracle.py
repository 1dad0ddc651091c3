"""Brute-force grid verification of masked sets, independent of the analysis path.

Membership here is decided by definition alone: map each grid state
through the operator, take both raw reduced matrices directly, and
compare against the anchor's pair in Frobenius norm.  Nothing in this
module calls the constraint extraction or the classifier -- that
independence is the point, so the two paths cross-validate each other.

The grid tolerance is tied to the spacing (tol = kappa * h) so the
discrete masked set converges onto the continuum set as the grid is
refined; with a fixed tolerance the masked fraction would freeze
instead of shrinking.  For a set that is genuinely a curve the fraction
then decays like h (halves per resolution doubling), for an isolated
point like h^2 (quarters), and for no nonzero operator does any
neighborhood keep a fraction bounded away from zero.

The reported fractions are plain counts over the (x, y) angle
rectangle, not sphere-area measures: no sin(x) Jacobian is applied.
That distinction cannot move a set between zero and nonzero measure,
which is all these scans are meant to probe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import GeneralLinearOp, operator_scale
from .bloch import AngleState
from .errors import InvalidInputError

DEFAULT_REGION = ((0.0, float(np.pi)), (0.0, float(2.0 * np.pi)))


@dataclass(frozen=True)
class GridSpec:
    """A rectangular (x, y) evaluation grid.

    x runs through ``nx`` points including both region endpoints; y runs
    through ``ny`` points with the upper endpoint excluded (the default
    region is periodic in y).
    """

    nx: int
    ny: int
    region: tuple[tuple[float, float], tuple[float, float]] = DEFAULT_REGION

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise InvalidInputError("grid needs at least 2 points per axis")
        (x0, x1), (y0, y1) = self.region
        if not (x1 > x0 and y1 > y0):
            raise InvalidInputError("grid region must have positive extent")

    @property
    def spacing(self) -> float:
        """The coarser of the two axis spacings."""
        (x0, x1), (y0, y1) = self.region
        return max((x1 - x0) / (self.nx - 1), (y1 - y0) / self.ny)

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """Flattened x and y coordinates of all nx*ny grid nodes."""
        (x0, x1), (y0, y1) = self.region
        xs = np.linspace(x0, x1, self.nx)
        ys = np.linspace(y0, y1, self.ny, endpoint=False)
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        return gx.ravel(), gy.ravel()


def _reduced_stack(op: GeneralLinearOp, xs: np.ndarray, ys: np.ndarray):
    """Raw (rho_A, rho_B) stacks over (x, y) arrays, computed inline."""
    w0 = np.cos(xs / 2.0)
    w1 = np.exp(1j * ys) * np.sin(xs / 2.0)
    psi = np.outer(w0, op.col0) + np.outer(w1, op.col1)
    m = psi.reshape(-1, 2, 2)
    rho_a = np.einsum("nab,ncb->nac", m, m.conj())
    rho_b = np.einsum("nab,nac->nbc", m, m.conj())
    return rho_a, rho_b


def grid_deviations(op: GeneralLinearOp, anchor: AngleState, grid: GridSpec):
    """Per-node deviation of the raw reduced pair from the anchor's.

    Returns (xs, ys, dev) flattened over the grid, where dev is the
    larger of the two Frobenius distances.  The anchor itself is
    evaluated exactly, not snapped to the grid.
    """
    ra0, rb0 = _reduced_stack(op, np.array([anchor.x]), np.array([anchor.y]))
    xs, ys = grid.points()
    rho_a, rho_b = _reduced_stack(op, xs, ys)
    dev_a = np.sqrt(np.sum(np.abs(rho_a - ra0[0]) ** 2, axis=(1, 2)))
    dev_b = np.sqrt(np.sum(np.abs(rho_b - rb0[0]) ** 2, axis=(1, 2)))
    return xs, ys, np.maximum(dev_a, dev_b)


def grid_scan(
    op: GeneralLinearOp, anchor: AngleState, grid: GridSpec, tol: float
) -> list[AngleState]:
    """All grid states whose raw reduced pair matches the anchor's within tol."""
    xs, ys, dev = grid_deviations(op, anchor, grid)
    hit = dev <= tol
    return [AngleState(float(x), float(y)) for x, y in zip(xs[hit], ys[hit])]


def default_kappa(op: GeneralLinearOp) -> float:
    """Default spacing-to-tolerance factor, 2x the operator scale.

    The deviation function is Lipschitz in the Bloch point with constant
    below twice the squared Frobenius norm of the operator, so with
    tol = kappa * h every grid node within one spacing of the true
    masked set is flagged.
    """
    return 2.0 * operator_scale(op)


def masked_fraction_scaling(
    op: GeneralLinearOp,
    anchor: AngleState,
    resolutions: list[int],
    kappa: float | None = None,
    region: tuple[tuple[float, float], tuple[float, float]] = DEFAULT_REGION,
) -> list[tuple[int, float]]:
    """Masked-grid fraction at a ladder of resolutions with tol = kappa * h.

    Resolution n means an (n x 2n) grid over the region.  For operators
    whose masked set is a circle the fraction decays like 1/n, for
    point-like sets like 1/n^2; it never converges to a positive
    constant.
    """
    if kappa is None:
        kappa = default_kappa(op)
    if kappa <= 0:
        raise InvalidInputError("kappa must be positive")
    if any(b <= a for a, b in zip(resolutions, resolutions[1:])):
        raise InvalidInputError("resolutions must be strictly increasing")
    out = []
    for n in resolutions:
        grid = GridSpec(nx=n, ny=2 * n, region=region)
        _, _, dev = grid_deviations(op, anchor, grid)
        fraction = float(np.count_nonzero(dev <= kappa * grid.spacing)) / dev.size
        out.append((n, fraction))
    return out
