"""
Monogamy and polygamy of powers of a correlation measure.

Everything here works on a :class:`CorrelationProfile`, i.e. one value
across the cut ``A_1 | A_2 ... A_n`` and the pairwise values
``Q(A_1 A_j)``. The measure itself never enters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import EstimationError, PreconditionError, ValidationError

PROFILE_TOL = 1e-9
INEQUALITY_SLACK = 1e-12


@dataclass(frozen=True)
class CorrelationProfile:
    q_joint: float
    q_pairs: tuple[float, ...]

    def __post_init__(self):
        q_joint = float(self.q_joint)
        q_pairs = tuple(float(q) for q in self.q_pairs)
        if not q_pairs:
            raise ValidationError("a profile needs at least one pairwise value")
        if q_joint < 0 or any(q < 0 for q in q_pairs):
            raise ValidationError("correlation values must be nonnegative")
        if not all(math.isfinite(q) for q in (q_joint, *q_pairs)):
            raise ValidationError("correlation values must be finite")
        if q_joint < max(q_pairs) - PROFILE_TOL:
            raise ValidationError(
                f"joint value {q_joint!r} is below the largest pairwise value {max(q_pairs)!r}; "
                "a correlation measure cannot increase under partial trace"
            )
        object.__setattr__(self, "q_joint", q_joint)
        object.__setattr__(self, "q_pairs", q_pairs)

    @property
    def ratios(self) -> tuple[float, ...]:
        """Pairwise values normalized by the joint value (each clipped to 1)."""
        if self.q_joint == 0:
            raise ValidationError("ratios are undefined when the joint value is 0")
        return tuple(min(1.0, q / self.q_joint) for q in self.q_pairs)


@dataclass(frozen=True)
class PowerSolverConfig:
    tol: float = 1e-10
    gamma_cap: float = 64.0
    bisection_max_iter: int = 200

    def __post_init__(self):
        if not self.tol > 0:
            raise ValidationError(f"tol must be positive, got {self.tol}")
        if not self.gamma_cap > 1:
            raise ValidationError(f"gamma_cap must exceed 1, got {self.gamma_cap}")
        if self.bisection_max_iter < 1:
            raise ValidationError("bisection_max_iter must be >= 1")


class PowerRoot(NamedTuple):
    """Saturation exponent and how it was obtained.

    ``status`` is ``"ok"`` for a finite root, ``"degenerate"`` when every
    pairwise value is zero (value 0) and ``"unbounded"`` when no finite
    root exists (value ``gamma_cap``).
    """

    value: float
    status: str


def _power(q: float, x: float) -> float:
    # 0**0 would be 1; a zero correlation contributes nothing at any power
    return 0.0 if q == 0.0 else q**x


def residual(profile: CorrelationProfile, x: float = 1.0) -> float:
    """``Q_joint^x - sum_j Q_pair_j^x``; positive means monogamous at power ``x``."""
    if x < 0:
        raise ValidationError(f"power must be nonnegative, got {x}")
    return _power(profile.q_joint, x) - sum(_power(q, x) for q in profile.q_pairs)


def is_monogamous(profile: CorrelationProfile, x: float) -> bool:
    return residual(profile, x) >= -INEQUALITY_SLACK


def is_polygamous(profile: CorrelationProfile, y: float) -> bool:
    return residual(profile, y) <= INEQUALITY_SLACK


def _saturation_bracket(xs: Sequence[float], cfg: PowerSolverConfig) -> tuple[float, float] | None:
    """
    Bisect ``sum x_j^g = 1`` for all ``0 < x_j < 1``.

    Returns ``(lo, hi)`` with ``sum >= 1`` at ``lo`` and ``sum <= 1`` at
    ``hi``, or None if no sign change below ``gamma_cap``.
    """

    def excess(g: float) -> float:
        return sum(x**g for x in xs) - 1.0

    lo, hi = 0.0, 1.0
    while excess(hi) > 0.0:
        lo = hi
        if hi >= cfg.gamma_cap:
            return None
        hi = min(2.0 * hi, cfg.gamma_cap)
    for _ in range(cfg.bisection_max_iter):
        if hi - lo <= cfg.tol:
            break
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _classify(profile: CorrelationProfile) -> tuple[str, list[float]]:
    if profile.q_joint == 0.0:
        raise ValidationError("joint correlation is 0; every power is trivially monogamous")
    xs = [x for x in profile.ratios if x > 0.0]
    if not xs:
        return "degenerate", xs
    if any(x >= 1.0 for x in xs):
        return ("saturated" if len(xs) == 1 else "unbounded"), xs
    return "interior", xs


def critical_power(profile: CorrelationProfile, cfg: PowerSolverConfig | None = None) -> PowerRoot:
    """
    Smallest exponent ``g`` with ``sum_j (Q_pair_j / Q_joint)^g <= 1``.

    The returned value is the upper end of the final bisection bracket,
    so the profile is monogamous at the returned power.
    """
    cfg = cfg or PowerSolverConfig()
    kind, xs = _classify(profile)
    if kind == "degenerate":
        return PowerRoot(0.0, "degenerate")
    if kind == "saturated":
        # single ratio equal to 1: the sum is 1 for every power
        return PowerRoot(0.0, "ok")
    if kind == "unbounded":
        return PowerRoot(cfg.gamma_cap, "unbounded")
    bracket = _saturation_bracket(xs, cfg)
    if bracket is None:
        return PowerRoot(cfg.gamma_cap, "unbounded")
    return PowerRoot(bracket[1], "ok")


def polygamy_power(profile: CorrelationProfile, cfg: PowerSolverConfig | None = None) -> PowerRoot:
    """
    Largest exponent ``d`` with ``sum_j (Q_pair_j / Q_joint)^d >= 1``.

    Returns the lower end of the final bisection bracket, so the profile
    is polygamous at the returned power.
    """
    cfg = cfg or PowerSolverConfig()
    kind, xs = _classify(profile)
    if kind == "degenerate":
        return PowerRoot(0.0, "degenerate")
    if kind in ("saturated", "unbounded"):
        return PowerRoot(cfg.gamma_cap, "unbounded")
    bracket = _saturation_bracket(xs, cfg)
    if bracket is None:
        return PowerRoot(cfg.gamma_cap, "unbounded")
    return PowerRoot(bracket[0], "ok")


@dataclass(frozen=True)
class AlphaBetaEstimate:
    """Sampled estimates of the monogamy power (max) and polygamy power (min).

    These bound the true supremum / infimum from the inside only.
    """

    alpha_hat: float
    beta_hat: float
    n_used: int
    n_skipped: int
    n_unbounded: int


def estimate_alpha_beta(
    profiles: Iterable[CorrelationProfile], cfg: PowerSolverConfig | None = None
) -> AlphaBetaEstimate:
    cfg = cfg or PowerSolverConfig()
    alphas: list[float] = []
    betas: list[float] = []
    skipped = unbounded = 0
    for profile in profiles:
        if profile.q_joint == 0.0:
            skipped += 1
            continue
        gamma = critical_power(profile, cfg)
        delta = polygamy_power(profile, cfg)
        if gamma.status == "degenerate":
            skipped += 1
            continue
        if "unbounded" in (gamma.status, delta.status):
            unbounded += 1
        alphas.append(gamma.value)
        betas.append(delta.value)
    if not alphas:
        raise EstimationError("every profile was degenerate; nothing to estimate from")
    return AlphaBetaEstimate(max(alphas), min(betas), len(alphas), skipped, unbounded)


def lemma_gap(t: float, x: float) -> float:
    """``(1 + t)^x - 1 - (2^x - 1) t^x``, nonnegative for ``t`` in [0, 1], ``x >= 1``."""
    if not 0.0 <= t <= 1.0:
        raise ValidationError(f"t must lie in [0, 1], got {t}")
    if x < 1.0:
        raise ValidationError(f"x must be >= 1, got {x}")
    return (1.0 + t) ** x - 1.0 - (2.0**x - 1.0) * t**x


class TighterBound(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def tighter_bound_tripartite(profile: CorrelationProfile, alpha: float, s: float) -> TighterBound:
    """
    Compare ``Q_joint^t`` against ``Q_big^t + (2^s - 1) Q_small^t`` with
    ``t = s * alpha``.

    The two pairwise values are ordered internally (the larger one gets
    weight 1). Raises :class:`PreconditionError` unless the profile is
    monogamous at power ``alpha``.
    """
    if len(profile.q_pairs) != 2:
        raise ValidationError(f"tripartite bound needs exactly two pairwise values, got {len(profile.q_pairs)}")
    if s < 1.0:
        raise ValidationError(f"s must be >= 1, got {s}")
    if alpha <= 0.0:
        raise ValidationError(f"alpha must be positive, got {alpha}")
    if not is_monogamous(profile, alpha):
        raise PreconditionError(
            f"profile is not monogamous at power {alpha} (residual {residual(profile, alpha):.3e})"
        )
    big, small = sorted(profile.q_pairs, reverse=True)
    t = s * alpha
    lhs = _power(profile.q_joint, t)
    rhs = _power(big, t) + (2.0**s - 1.0) * _power(small, t)
    return TighterBound(lhs, rhs, lhs >= rhs - INEQUALITY_SLACK)


def multipartite_weights(n: int, s: float, split_m: int) -> list[float]:
    """
    Weights on ``Q(A_1 A_j)^t`` for ``j = 2..n`` in the n-party tighter bound.

    ``j = 2..m`` get ``(2^s - 1)^(j - 2)``, ``j = m+1..n-1`` get
    ``(2^s - 1)^m`` and ``j = n`` gets ``(2^s - 1)^(m - 1)``.
    """
    if n < 4:
        raise ValidationError(f"the multipartite bound needs n >= 4 parties, got {n}")
    if not 2 <= split_m <= n - 2:
        raise ValidationError(f"split index must satisfy 2 <= m <= n - 2 = {n - 2}, got {split_m}")
    if s < 1.0:
        raise ValidationError(f"s must be >= 1, got {s}")
    k = 2.0**s - 1.0
    weights = [k ** (j - 2) for j in range(2, split_m + 1)]
    weights += [k**split_m] * (n - 1 - split_m)
    weights.append(k ** (split_m - 1))
    return weights


@dataclass(frozen=True)
class MultipartiteBound:
    """Lower bound on ``Q_joint^t``.

    ``conditional`` is always True: the ordering hypotheses involve
    joint-cut values that are not part of the input and are taken on
    trust from the caller.
    """

    value: float
    t: float
    weights: tuple[float, ...]
    conditional: bool = True


def tighter_bound_multipartite(q_pairs: Sequence[float], alpha: float, s: float, split_m: int) -> MultipartiteBound:
    """
    Weighted power sum bounding ``Q(A_1 | A_2 ... A_n)^t`` from below,
    ``t = s * alpha``.

    ``q_pairs[j - 2]`` is ``Q(A_1 A_j)`` for ``j = 2..n``; ``split_m`` is
    the 1-based party label ``m`` after which the ordering hypotheses
    switch direction.
    """
    q_pairs = [float(q) for q in q_pairs]
    if any(q < 0 for q in q_pairs):
        raise ValidationError("correlation values must be nonnegative")
    if alpha <= 0.0:
        raise ValidationError(f"alpha must be positive, got {alpha}")
    n = len(q_pairs) + 1
    weights = multipartite_weights(n, s, split_m)
    t = s * alpha
    value = sum(w * _power(q, t) for w, q in zip(weights, q_pairs))
    return MultipartiteBound(value, t, tuple(weights))
