"""Minimal complex linear algebra for one- and two-qubit state vectors.

Two-qubit amplitudes use the fixed index convention ``index = 2*a + b``
where ``a`` labels qubit A (the left tensor factor) and ``b`` labels
qubit B.  Every other module inherits this convention; a 4-vector
``psi`` therefore reshapes to the 2x2 coefficient matrix
``M[a, b] = psi[2*a + b]``, which makes the partial traces

    rho_A = M @ M^dagger        (trace over B)
    rho_B = M^T @ conj(M)       (trace over A)

State vectors are plain complex ndarrays of shape (2,) or (4,); reduced
density matrices are (2, 2) ndarrays.  Norm-1 is deliberately not
required: general linear operators map unit vectors to unnormalized
images and the traces here must report that faithfully.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError

# Default tolerances: matrix-equality assertions sit at 1e-10, while
# self-consistency checks (trace, Hermiticity) use the tighter 1e-12.
# Closed-form comparisons at double precision land far below both.
TOL_EQUALITY = 1e-10
TOL_SELF = 1e-12


def _as_vec4(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (4,):
        raise InvalidInputError(f"expected a 4-component state vector, got shape {psi.shape}")
    if not np.all(np.isfinite(psi.view(float))):
        raise InvalidInputError("state vector contains non-finite components")
    return psi


def partial_trace_b(psi) -> np.ndarray:
    """Trace out qubit B of a two-qubit pure state.

    Returns ``Tr_B |psi><psi|`` with entry ``(a, a') = sum_b psi[2a+b] conj(psi[2a'+b])``.
    The result is Hermitian and PSD, with trace equal to <psi|psi>.
    """
    m = _as_vec4(psi).reshape(2, 2)
    return m @ m.conj().T


def partial_trace_a(psi) -> np.ndarray:
    """Trace out qubit A of a two-qubit pure state.

    Returns ``Tr_A |psi><psi|`` with entry ``(b, b') = sum_a psi[2a+b] conj(psi[2a+b'])``.
    """
    m = _as_vec4(psi).reshape(2, 2)
    return m.T @ m.conj()


def mat_distance(a, b) -> float:
    """Frobenius distance between two 2x2 matrices.

    Symmetric, and zero exactly when the matrices are equal; used as the
    equality metric for reduced-state comparisons.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return float(np.linalg.norm(a - b))
