"""Agreement check between the grid oracle and the analytic classification.

The oracle module stays independent of the constraint machinery, so the
comparison between the two lives here.  Agreement holds when

  * every grid node within one grid spacing of the classified set is
    flagged by the oracle (the spacing-tied tolerance guarantees this
    through the Lipschitz bound), and
  * every flagged node lies inside the tolerance band around the set,
    whose width follows from the constraint stack's singular values and
    the class's transversality to the sphere.
"""

from __future__ import annotations

import numpy as np

from .analysis import (
    Circle,
    GeneralLinearOp,
    PointPair,
    class_distance,
    extract_constraints,
    maskable_set,
    operator_scale,
)
from .bloch import AngleState, angles_to_bloch
from .oracle import GridSpec, default_kappa, grid_deviations

# rho_A and rho_B each contribute their off-diagonal entry twice to the
# Frobenius deviation, hence the sqrt(2) weights on the 01 rows
ENTRY_WEIGHTS = np.array([1.0, 1.0, np.sqrt(2), np.sqrt(2), 1.0, 1.0, np.sqrt(2), np.sqrt(2)])


def agreement_report(op: GeneralLinearOp, anchor: AngleState, grid: GridSpec) -> dict:
    """Scan the grid and compare against the classified maskable set."""
    mask_class = maskable_set(op, anchor)
    constraints = extract_constraints(op)
    p0 = angles_to_bloch(anchor)
    scale = operator_scale(op)
    tol = default_kappa(op) * grid.spacing

    xs, ys, dev = grid_deviations(op, anchor, grid)
    points = np.column_stack(
        [np.sin(xs) * np.cos(ys), np.sin(xs) * np.sin(ys), np.cos(xs)]
    )
    flagged = dev <= tol
    dist = np.atleast_1d(class_distance(mask_class, points))

    complete = bool(np.all(flagged[dist <= grid.spacing * (1 - 1e-9)]))

    normals = np.vstack([c.n for c in constraints])
    weighted = normals * ENTRY_WEIGHTS[:, None]
    svals = np.linalg.svd(weighted, compute_uv=False)
    if isinstance(mask_class, Circle):
        rank = 1
        trans = float(np.sqrt(1.0 + 4.0 / max(mask_class.circle.radius, 1e-3) ** 2))
    elif isinstance(mask_class, PointPair):
        rank = 2
        row_norms = np.linalg.norm(normals, axis=1)
        keep = normals[row_norms > 1e-12 * scale]
        keep = keep / np.linalg.norm(keep, axis=1)[:, None]
        _, _, vt = np.linalg.svd(keep)
        d = np.cross(vt[0], vt[1])
        d /= np.linalg.norm(d)
        trans = 1.0 + 1.0 / max(abs(float(p0 @ d)), 1e-3)
    else:
        rank = 3
        trans = 1.0
    outer = grid.spacing + np.sqrt(2.0) * tol / svals[rank - 1] * trans
    max_dist = float(dist[flagged].max()) if flagged.any() else 0.0
    sound = max_dist <= outer

    return {
        "resolution": grid.nx,
        "tolerance": float(tol),
        "flagged": int(flagged.sum()),
        "max_distance_to_class": max_dist,
        "band_bound": float(outer),
        "agreement": "OK" if (complete and sound) else "MISMATCH",
    }
