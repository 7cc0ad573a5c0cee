"""
Monogamy of W-class states under tensor copies.

Two models of the m-copy negativities are kept side by side:

* the *closed-form model*, ``((1 + 2 N)^m - 1) / 2`` with ``N`` the
  doubled single-copy CREN, used for the copy sweeps and thresholds;
* the *definitional model*, the trace norm of the partially transposed
  m-copy state (:func:`brute_force_copy_negativity`). Trace norms are
  multiplicative, so this gives ``(1 + N)^m - 1`` in the doubled
  convention.

The two agree at ``m = 1`` and differ for every ``m >= 2``;
:func:`copy_model_gap` reports the difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import CapacityError, ValidationError
from .measures import (
    DEFAULT_CONVENTION,
    Convention,
    cren_wclass_one_vs_rest,
    cren_wclass_pair,
    negativity,
)
from .monogamy import CorrelationProfile
from .states import PureState, WClassParams, expand_parties, reduced, tensor_copies
from .tensor import check_capacity, check_subset, kron_power, sqrt_trace

# above this side the full partial-transpose path is refused
FULL_PATH_MAX_SIDE = 4096
DEFAULT_M_MAX = 64
DIVERGENCE_RATIO = 1.05


def _closed_form(single_copy: float, m: int) -> float:
    # ((1 + 2N)^m - 1) / 2 expanded as sum_k C(m, k) 2^(k-1) N^k: every
    # term is nonnegative and m = 1 returns N exactly
    if m < 0:
        raise ValidationError(f"number of copies must be >= 0, got {m}")
    return math.fsum(math.comb(m, k) * 2.0 ** (k - 1) * single_copy**k for k in range(1, m + 1))


def copies_cren_one_vs_rest(params: WClassParams, m: int) -> float:
    """Closed-form CREN of ``m`` copies across ``A_1 | A_2 ... A_n``."""
    return _closed_form(cren_wclass_one_vs_rest(params, Convention.DOUBLED), m)


def copies_cren_pair(params: WClassParams, s: int, m: int) -> float:
    """Closed-form CREN of ``m`` copies of the ``A_1 A_s`` reduction (``s`` 1-based)."""
    return _closed_form(cren_wclass_pair(params, s, Convention.DOUBLED), m)


@dataclass(frozen=True)
class CopySweepResult:
    m: int
    q_joint_m: float
    q_pairs_m: tuple[float, ...]
    residual_m: float

    @property
    def profile(self) -> CorrelationProfile:
        return CorrelationProfile(self.q_joint_m, self.q_pairs_m)


def copies_residual(params: WClassParams, m: int) -> CopySweepResult:
    if m < 1:
        raise ValidationError(f"number of copies must be >= 1, got {m}")
    joint = copies_cren_one_vs_rest(params, m)
    pairs = tuple(copies_cren_pair(params, s, m) for s in range(2, params.n + 1))
    return CopySweepResult(m, joint, pairs, joint - sum(pairs))


def copy_sweep(params: WClassParams, m_max: int) -> list[CopySweepResult]:
    return [copies_residual(params, m) for m in range(1, m_max + 1)]


class CopyThreshold(NamedTuple):
    """Smallest monogamous copy count (None if not reached) and the last residual seen."""

    m_star: int | None
    last_residual: float


def minimal_copies(params: WClassParams, m_max: int = DEFAULT_M_MAX) -> CopyThreshold:
    if m_max < 1:
        raise ValidationError(f"m_max must be >= 1, got {m_max}")
    res = float("nan")
    for m in range(1, m_max + 1):
        res = copies_residual(params, m).residual_m
        if res >= 0.0:
            return CopyThreshold(m, res)
    return CopyThreshold(None, res)


def f_surface(n: int, m: int) -> float:
    """
    Copy residual of the uniform ``n``-party W-class state::

        f(n, m) = ((1 + 4 sqrt(n - 1) / n)^m - (n - 1)(1 + 4 / n)^m + n - 2) / 2
    """
    if n < 3:
        raise ValidationError(f"n must be >= 3, got {n}")
    if m < 1:
        raise ValidationError(f"m must be >= 1, got {m}")
    return 0.5 * ((1.0 + 4.0 * math.sqrt(n - 1) / n) ** m - (n - 1) * (1.0 + 4.0 / n) ** m + n - 2)


def f_crossing(n: int, m_max: int = DEFAULT_M_MAX) -> int | None:
    """First ``m <= m_max`` with ``f(n, m) >= 0``."""
    for m in range(1, m_max + 1):
        if f_surface(n, m) >= 0.0:
            return m
    return None


class RegularizedSequence(NamedTuple):
    values: list[tuple[int, float]]
    diverging: bool


def regularized_from_values(copy_values: Sequence[float]) -> RegularizedSequence:
    """
    Per-copy values ``Q(rho^{(x)m}) / m`` from ``copy_values[m - 1]``.

    ``diverging`` is set when the last three per-copy values each grow
    by more than a factor 1.05.
    """
    values = [(m, float(q) / m) for m, q in enumerate(copy_values, start=1)]
    diverging = False
    if len(values) >= 3:
        a, b, c = (v for _, v in values[-3:])
        diverging = a > 0 and b > DIVERGENCE_RATIO * a and c > DIVERGENCE_RATIO * b
    return RegularizedSequence(values, diverging)


def regularized_sequence(base: float, m_max: int) -> RegularizedSequence:
    """Per-copy closed-form values ``((base^m - 1) / 2) / m`` for ``m = 1..m_max``.

    ``base`` is ``1 + 2 N`` with ``N`` the doubled single-copy value.
    """
    if base < 1.0:
        raise ValidationError(f"base must be >= 1, got {base}")
    if m_max < 2:
        raise ValidationError(f"m_max must be >= 2, got {m_max}")
    return regularized_from_values([0.5 * (base**m - 1.0) for m in range(1, m_max + 1)])


def brute_force_copy_negativity(
    psi: PureState,
    side_a: Iterable[int],
    m: int,
    conv: Convention = DEFAULT_CONVENTION,
    keep: Iterable[int] | None = None,
) -> float:
    """
    Negativity of ``m`` copies of ``psi`` straight from the trace-norm
    definition.

    Parameters
    ----------
    psi : PureState
        Single-copy state.
    side_a : iterable of int
        Original parties forming the transposed side; all their copies
        are grouped together.
    m : int
        Number of copies.
    conv : Convention
        Normalization.
    keep : iterable of int, optional
        Original parties retained before the cut is evaluated (default:
        all, i.e. a pure-state cut). ``side_a`` must be a subset.

    Notes
    -----
    A pure cut uses ``Tr sqrt`` of the m-fold tensor power of the
    single-copy reduction. Any other cut reduces the copied state vector
    to the kept copy groups and diagonalizes its partial transpose,
    which is refused above side ``FULL_PATH_MAX_SIDE``.
    """
    if m < 1:
        raise ValidationError(f"number of copies must be >= 1, got {m}")
    n = psi.n_parties
    side_a = check_subset(side_a, n)
    keep = check_subset(range(n) if keep is None else keep, n)
    if not set(side_a) <= set(keep):
        raise ValidationError(f"side {side_a} is not contained in the kept parties {keep}")
    if set(side_a) == set(keep):
        raise ValidationError("the cut needs parties on both sides")

    if len(keep) == n:
        rho_a = reduced(psi, side_a)
        check_capacity(rho_a.size**m, "m-copy reduced state")
        value = sqrt_trace(kron_power(rho_a, m)) ** 2 - 1.0
        return max(0.0, Convention(conv).scale(value))

    side = math.prod(psi.dims[j] for j in keep) ** m
    if side > FULL_PATH_MAX_SIDE:
        raise CapacityError(f"full partial-transpose path needs side {side} > {FULL_PATH_MAX_SIDE}")
    copies = tensor_copies(psi, m)
    kept_positions = expand_parties(keep, copies.groups)
    rho = reduced(copies.state, kept_positions)
    kept_dims = tuple(copies.state.dims[p] for p in kept_positions)
    side_positions = expand_parties(side_a, copies.groups)
    local_side = [kept_positions.index(p) for p in side_positions]
    return negativity(rho, kept_dims, local_side, conv)


class ModelGap(NamedTuple):
    m: int
    definitional: float
    closed_form: float
    gap: float


def copy_model_gap(single_copy: float, m: int) -> ModelGap:
    """
    Compare both m-copy models for a doubled single-copy value.

    ``definitional = (1 + N)^m - 1`` and ``closed_form = ((1 + 2N)^m - 1) / 2``;
    ``gap = closed_form - definitional``.
    """
    definitional = (1.0 + single_copy) ** m - 1.0
    closed = _closed_form(single_copy, m)
    return ModelGap(m, definitional, closed, closed - definitional)


def state_profile(psi: PureState, m: int = 1) -> CorrelationProfile:
    """
    Negativity profile of ``m`` copies of a pure state from the
    trace-norm definition, with party 0 as ``A_1``.

    Pairwise entries are negativities of mixed reductions, which bound
    the CREN only from below.
    """
    joint = brute_force_copy_negativity(psi, [0], m)
    pairs = tuple(brute_force_copy_negativity(psi, [0], m, keep=[0, s]) for s in range(1, psi.n_parties))
    return CorrelationProfile(joint, pairs)

