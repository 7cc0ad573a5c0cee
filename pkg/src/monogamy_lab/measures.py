"""
Negativity and convex-roof extended negativity (CREN).

Two normalizations are in use for the negativity of a bipartite state:

* ``Convention.STANDARD``: ``(||rho^T_A|| - 1) / 2``
* ``Convention.DOUBLED``:  ``||rho^T_A|| - 1``, which for a pure state
  equals ``(Tr sqrt(rho_A))^2 - 1 = 2 sum_{i<j} sqrt(l_i l_j)``.

The doubled form is the default since every worked W-state value
(``2 sqrt(2) / 3`` and so on) is expressed in it.
"""

from __future__ import annotations

import enum
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import UnsupportedInputError, ValidationError
from .states import PureState, WClassParams, reduced
from .tensor import (
    PSD_REJECT,
    as_matrix,
    check_dims,
    check_subset,
    hermitian_eigenvalues,
    hermiticity_defect,
    partial_transpose,
    sqrt_trace,
)

TRACE_TOL = 1e-8
NEGATIVITY_CLAMP = 1e-9


class Convention(str, enum.Enum):
    STANDARD = "standard"
    DOUBLED = "doubled"

    def scale(self, doubled_value: float) -> float:
        """Express a doubled-convention value in this convention."""
        return doubled_value if self is Convention.DOUBLED else 0.5 * doubled_value


DEFAULT_CONVENTION = Convention.DOUBLED


def _clamp(value: float) -> float:
    # eigensolver noise on PPT states lands on either side of zero
    if abs(value) <= NEGATIVITY_CLAMP:
        return 0.0
    return value


def validate_density(rho, tol: float = 1e-10) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity; return the matrix."""
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise ValidationError(f"density matrix must be square, got {rho.shape}")
    defect = hermiticity_defect(rho)
    if defect > tol:
        raise ValidationError(f"density matrix is not Hermitian (defect {defect:.3e})")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValidationError(f"density matrix must have unit trace, got {tr}")
    w = hermitian_eigenvalues(rho)
    if w[0] < -PSD_REJECT:
        raise ValidationError(f"density matrix is not positive semidefinite (eigenvalue {w[0]:.3e})")
    return rho


def negativity(
    rho,
    dims: Sequence[int],
    side_a: Iterable[int],
    conv: Convention = DEFAULT_CONVENTION,
) -> float:
    """
    Negativity across the cut ``side_a | rest`` from the trace norm of
    the partial transpose.

    Parameters
    ----------
    rho : array_like
        Density matrix on parties with local dimensions ``dims``.
    dims : sequence of int
        Local dimensions, party 0 slowest-varying.
    side_a : iterable of int
        Parties whose indices are transposed.
    conv : Convention
        Normalization; see the module docstring.

    Returns
    -------
    float
        Nonnegative negativity (values within ``1e-9`` of zero reported as 0).
    """
    dims = check_dims(dims)
    rho = validate_density(rho)
    side_a = check_subset(side_a, len(dims))
    pt = partial_transpose(rho, dims, side_a)
    norm = float(np.sum(np.abs(hermitian_eigenvalues(pt))))
    return _clamp(Convention(conv).scale(norm - 1.0))


def pure_negativity(psi: PureState, side_a: Iterable[int], conv: Convention = DEFAULT_CONVENTION) -> float:
    """Negativity of a pure state via ``(Tr sqrt(rho_A))^2 - 1``."""
    rho_a = reduced(psi, side_a)
    value = sqrt_trace(rho_a) ** 2 - 1.0
    return _clamp(Convention(conv).scale(value))


def cren(state, side_a: Iterable[int], conv: Convention = DEFAULT_CONVENTION) -> float:
    """
    CREN of a pure state, where it coincides with the negativity.

    Mixed inputs are rejected: the convex-roof minimum has no
    implemented route beyond the W-class closed forms
    (:func:`cren_wclass_one_vs_rest`, :func:`cren_wclass_pair`).
    """
    if isinstance(state, PureState):
        return pure_negativity(state, side_a, conv)
    raise UnsupportedInputError(
        "CREN is only available for pure states and W-class reductions; "
        "use cren_wclass_pair for two-party reductions of W-class states"
    )


def cren_wclass_one_vs_rest(params: WClassParams, conv: Convention = DEFAULT_CONVENTION) -> float:
    """CREN of a W-class state across ``A_1 | A_2 ... A_n``: ``2 sqrt((1 - W1) W1)``."""
    om = params.omega1
    return Convention(conv).scale(2.0 * math.sqrt((1.0 - om) * om))


def cren_wclass_pair(params: WClassParams, s: int, conv: Convention = DEFAULT_CONVENTION) -> float:
    """
    CREN of the two-party reduction on ``A_1`` and ``A_s``.

    ``s`` is the 1-based party label (``2 <= s <= n``) so that
    ``cren_wclass_pair(p, 2)`` is the ``A_1 A_2`` reduction.
    """
    if not 2 <= s <= params.n:
        raise ValidationError(f"party index s must lie in [2, {params.n}], got {s}")
    weight = params.party_weight(s - 1)
    return Convention(conv).scale(2.0 * math.sqrt((1.0 - params.omega1) * weight))
