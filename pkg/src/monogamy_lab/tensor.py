"""
Dense complex linear algebra for multipartite operators.

Composite indices are row-major with party 0 varying slowest, so a
basis label ``|i_0 i_1 ... i_{n-1}>`` sits at
``np.ravel_multi_index((i_0, ..., i_{n-1}), dims)``.

Matrices are plain 2-D ``numpy`` arrays of complex dtype. Party
dimensions are any sequence of ints >= 2; party subsets are any
iterable of 0-based party indices.
"""

from __future__ import annotations

import math
import os
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, ConvergenceError, ShapeError, ValidationError

DEFAULT_ELEMENT_CAP = 2**26
ELEMENT_CAP_ENV = "MONOGAMY_LAB_ELEM_CAP"

HERMITIAN_TOL = 1e-10
PSD_REJECT = 1e-8
SQRT_SNAP = 1e-14
JACOBI_MAX_SWEEPS = 100
# Jacobi cost grows ~side^3 per sweep in Python; larger inputs go to LAPACK
JACOBI_MAX_SIDE = 256


def element_cap() -> int:
    """Current matrix element cap, honouring the environment override."""
    raw = os.environ.get(ELEMENT_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_ELEMENT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValidationError(f"{ELEMENT_CAP_ENV} must be an integer, got {raw!r}")
    if cap < 1:
        raise ValidationError(f"{ELEMENT_CAP_ENV} must be positive, got {cap}")
    return cap


def check_capacity(n_elements: int, what: str = "matrix") -> None:
    cap = element_cap()
    if n_elements > cap:
        raise CapacityError(f"{what} would hold {n_elements} elements; cap is {cap}")


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got shape {a.shape}")
    return a


def check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ValidationError("party dimensions must be nonempty")
    if any(d < 2 for d in dims):
        raise ValidationError(f"every local dimension must be >= 2, got {dims}")
    return dims


def check_subset(subset: Iterable[int], n_parties: int, *, allow_empty: bool = False) -> tuple[int, ...]:
    members = tuple(sorted({int(i) for i in subset}))
    if not members and not allow_empty:
        raise ValidationError("party subset must be nonempty")
    bad = [i for i in members if i < 0 or i >= n_parties]
    if bad:
        raise ValidationError(f"party indices {bad} out of range for {n_parties} parties")
    return members


def _check_square(rho: np.ndarray, dims: tuple[int, ...]) -> None:
    side = math.prod(dims)
    if rho.shape != (side, side):
        raise ShapeError(f"matrix shape {rho.shape} does not match dims {dims} (side {side})")


def kron(a, b) -> np.ndarray:
    """Kronecker product ``a (x) b``, refusing results above the element cap."""
    a = as_matrix(a)
    b = as_matrix(b)
    check_capacity(a.size * b.size, "Kronecker product")
    return np.kron(a, b)


def kron_power(a, m: int) -> np.ndarray:
    """``a`` tensored with itself ``m`` times (``m = 0`` gives ``[[1]]``)."""
    if m < 0:
        raise ValidationError(f"tensor power must be >= 0, got {m}")
    a = as_matrix(a)
    check_capacity(a.size**m, "Kronecker power")
    out = np.ones((1, 1), dtype=complex)
    for _ in range(m):
        out = np.kron(out, a)
    return out


def partial_trace(rho, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """
    Trace out every party not listed in ``keep``.

    The kept parties stay in their original relative order.
    """
    rho = as_matrix(rho)
    dims = check_dims(dims)
    _check_square(rho, dims)
    keep = check_subset(keep, len(dims))
    n = len(dims)
    if len(keep) == n:
        return rho.copy()
    traced = [i for i in range(n) if i not in keep]
    dk = math.prod(dims[i] for i in keep)
    dt = math.prod(dims[i] for i in traced)
    order = list(keep) + traced
    t = rho.reshape(dims + dims).transpose(order + [n + i for i in order])
    t = t.reshape(dk, dt, dk, dt)
    return np.einsum("ajbj->ab", t)


def partial_transpose(rho, dims: Sequence[int], subset: Iterable[int]) -> np.ndarray:
    """Transpose the row and column indices of the parties in ``subset``."""
    rho = as_matrix(rho)
    dims = check_dims(dims)
    _check_square(rho, dims)
    subset = check_subset(subset, len(dims), allow_empty=True)
    n = len(dims)
    axes = list(range(2 * n))
    for i in subset:
        axes[i], axes[n + i] = axes[n + i], axes[i]
    return rho.reshape(dims + dims).transpose(axes).reshape(rho.shape)


def hermiticity_defect(h) -> float:
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {h.shape}")
    if h.size == 0:
        return 0.0
    return float(np.max(np.abs(h - h.conj().T)))


def _round_robin(n: int):
    """Yield n-1 rounds of n/2 disjoint index pairs covering every pair once (n even)."""
    players = list(range(n))
    for _ in range(n - 1):
        half = n // 2
        ps = np.array([min(players[k], players[n - 1 - k]) for k in range(half)])
        qs = np.array([max(players[k], players[n - 1 - k]) for k in range(half)])
        yield ps, qs
        players = [players[0], players[-1]] + players[1:-1]


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigenvalues(h, tol: float = HERMITIAN_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """
    Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each sweep visits every index pair once in round-robin order; the
    n/2 rotations of one round touch disjoint rows and columns and are
    applied together. Iteration stops once the off-diagonal Frobenius
    norm falls below ``1e-12 * side`` (relative to the matrix norm when
    that exceeds one).

    Parameters
    ----------
    h : array_like
        Square Hermitian matrix.
    tol : float
        Largest accepted ``|h[i, j] - conj(h[j, i])|``.
    max_sweeps : int
        Iteration cap.

    Returns
    -------
    numpy.ndarray
        Real eigenvalues in ascending order.
    """
    a = as_matrix(h)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise ValidationError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:.1e})")
    side = a.shape[0]
    if side == 0:
        return np.zeros(0)
    a = 0.5 * (a + a.conj().T)
    if side == 1:
        return np.array([a[0, 0].real])

    n = side + (side % 2)
    if n != side:
        # dummy zero row/column: decoupled eigenvalue 0, dropped at the end
        padded = np.zeros((n, n), dtype=complex)
        padded[:side, :side] = a
        a = padded

    threshold = 1e-12 * side * max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= threshold:
            break
        for ps, qs in _round_robin(n):
            apq = a[ps, qs]
            r = np.abs(apq)
            active = r > 0.0
            if not np.any(active):
                continue
            ps, qs, apq, r = ps[active], qs[active], apq[active], r[active]
            app = a[ps, ps].real
            aqq = a[qs, qs].real
            theta = 0.5 * np.arctan2(2.0 * r, aqq - app)
            c = np.cos(theta)
            s = np.sin(theta)
            phase = apq / r
            # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] on each (p, q) block;
            # A <- G^H (G^H A)^H uses row updates only
            cp = c[:, None]
            sp = (s * phase)[:, None]
            cpp = (c * phase)[:, None]
            sc = s[:, None]
            for _ in range(2):
                row_p = a[ps, :]
                row_q = a[qs, :]
                a[ps, :] = cp * row_p - sp * row_q
                a[qs, :] = sc * row_p + cpp * row_q
                a = np.ascontiguousarray(a.conj().T)
            a[ps, qs] = 0.0
            a[qs, ps] = 0.0
    else:
        if _offdiag_norm(a) > threshold:
            raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.diag(a).real
    if n != side:
        # remove the eigenvalue belonging to the dummy index
        w = np.delete(w, side)
    return np.sort(w)


def hermitian_eigenvalues(h, tol: float = HERMITIAN_TOL, method: str = "auto") -> np.ndarray:
    """
    Ascending real eigenvalues of a Hermitian matrix.

    ``method`` is ``"jacobi"`` (:func:`jacobi_eigenvalues`), ``"lapack"``
    (``numpy.linalg.eigvalsh``) or ``"auto"``, which uses Jacobi up to
    side ``JACOBI_MAX_SIDE`` and LAPACK above it.
    """
    a = as_matrix(h)
    if method == "auto":
        method = "jacobi" if a.shape[0] <= JACOBI_MAX_SIDE else "lapack"
    if method == "jacobi":
        return jacobi_eigenvalues(a, tol=tol)
    if method == "lapack":
        defect = hermiticity_defect(a)
        if defect > tol:
            raise ValidationError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:.1e})")
        return np.linalg.eigvalsh(0.5 * (a + a.conj().T))
    raise ValidationError(f"unknown eigensolver {method!r}")


def trace_norm_hermitian(h) -> float:
    """Trace norm of a Hermitian matrix: the sum of absolute eigenvalues."""
    return float(np.sum(np.abs(hermitian_eigenvalues(h))))


def sqrt_trace(rho) -> float:
    """
    ``Tr sqrt(rho)`` for a positive semidefinite ``rho``.

    Negative eigenvalues down to ``-1e-8`` are clamped to zero; anything
    below is rejected. Positive eigenvalues under ``1e-14 * side`` are
    treated as round-off and dropped too, since their square roots would
    otherwise contribute ~1e-8 to the result.
    """
    w = hermitian_eigenvalues(rho)
    if w.size and w[0] < -PSD_REJECT:
        raise ValidationError(f"matrix is not positive semidefinite (eigenvalue {w[0]:.3e})")
    w = np.where(w <= SQRT_SNAP * w.size, 0.0, w)
    return float(np.sum(np.sqrt(w)))
