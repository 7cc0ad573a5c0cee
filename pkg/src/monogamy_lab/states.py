"""
State families: 3-qubit W, general W-class qudit states, GHZ-class
Schmidt-decomposable states, their reductions and tensor copies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import ValidationError
from .tensor import check_capacity, check_dims, check_subset

NORM_TOL = 1e-10


@dataclass(frozen=True)
class PureState:
    """State vector over parties with local dimensions ``dims``."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        dims = check_dims(self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != math.prod(dims):
            raise ValidationError(f"{amps.size} amplitudes do not match dims {dims}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValidationError(f"state is not normalized (norm^2 = {norm2!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def basis_index(self, letters: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(letters), self.dims))


@dataclass(frozen=True)
class WClassParams:
    """
    Coefficients ``a[s, i]`` of a W-class state
    ``sum_i (a[0, i] |i0..0> + ... + a[n-1, i] |0..0i>)``.

    Row ``s`` belongs to party ``s`` (0-based here); column ``i`` to the
    local letter ``i + 1``. Complex values are allowed.
    """

    a: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=complex)
        if a.ndim != 2 or a.shape[0] < 2 or a.shape[1] < 1:
            raise ValidationError(f"coefficient table must have shape (n >= 2, d - 1 >= 1), got {a.shape}")
        total = float(np.sum(np.abs(a) ** 2))
        if abs(total - 1.0) > NORM_TOL:
            raise ValidationError(f"W-class coefficients must satisfy sum |a|^2 = 1, got {total!r}")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def d(self) -> int:
        return self.a.shape[1] + 1

    def party_weight(self, s: int) -> float:
        """``sum_i |a[s, i]|^2`` for 0-based party ``s``."""
        return float(np.sum(np.abs(self.a[s]) ** 2))

    @property
    def omega1(self) -> float:
        return min(1.0, max(0.0, 1.0 - self.party_weight(0)))

    @property
    def omega2(self) -> float:
        return min(1.0, max(0.0, 1.0 - self.party_weight(0) - self.party_weight(1)))

    @classmethod
    def from_flat(cls, n: int, d: int, coefficients: Sequence[complex]) -> "WClassParams":
        coefficients = list(coefficients)
        if len(coefficients) != n * (d - 1):
            raise ValidationError(f"expected n*(d-1) = {n * (d - 1)} coefficients, got {len(coefficients)}")
        return cls(np.asarray(coefficients, dtype=complex).reshape(n, d - 1))


def w3_params() -> WClassParams:
    """The 3-qubit W state ``(|100> + |010> + |001>) / sqrt(3)``."""
    return WClassParams(np.full((3, 1), 1 / math.sqrt(3)))


def uniform_wclass(n: int, d: int = 2) -> WClassParams:
    """W-class state with every coefficient equal to ``1 / sqrt(n (d - 1))``."""
    if n < 2 or d < 2:
        raise ValidationError(f"need n >= 2 and d >= 2, got n={n}, d={d}")
    return WClassParams(np.full((n, d - 1), 1 / math.sqrt(n * (d - 1))))


def random_wclass(n: int, d: int, rng: np.random.Generator, complex_coeffs: bool = True) -> WClassParams:
    a = rng.normal(size=(n, d - 1))
    if complex_coeffs:
        a = a + 1j * rng.normal(size=(n, d - 1))
    return WClassParams(a / np.linalg.norm(a))


@dataclass(frozen=True)
class GHZClassParams:
    n: int
    local_dim: int
    schmidt: tuple[float, ...]

    def __post_init__(self):
        lam = tuple(float(x) for x in self.schmidt)
        if self.n < 2:
            raise ValidationError(f"need at least two parties, got {self.n}")
        if self.local_dim < 2:
            raise ValidationError(f"local dimension must be >= 2, got {self.local_dim}")
        if not lam:
            raise ValidationError("at least one Schmidt coefficient is required")
        if len(lam) > self.local_dim:
            raise ValidationError(f"{len(lam)} Schmidt terms exceed local dimension {self.local_dim}")
        if any(x <= 0 for x in lam):
            raise ValidationError("Schmidt coefficients must be strictly positive")
        total = sum(x * x for x in lam)
        if abs(total - 1.0) > NORM_TOL:
            raise ValidationError(f"Schmidt coefficients must satisfy sum lambda^2 = 1, got {total!r}")
        object.__setattr__(self, "schmidt", lam)


def build_wclass(params: WClassParams) -> PureState:
    n, d = params.n, params.d
    dims = (d,) * n
    amps = np.zeros(d**n, dtype=complex)
    for s in range(n):
        for i in range(1, d):
            letters = [0] * n
            letters[s] = i
            amps[np.ravel_multi_index(letters, dims)] = params.a[s, i - 1]
    return PureState(dims, amps)


def build_ghz_class(params: GHZClassParams) -> PureState:
    dims = (params.local_dim,) * params.n
    amps = np.zeros(params.local_dim**params.n, dtype=complex)
    for i, lam in enumerate(params.schmidt):
        amps[np.ravel_multi_index((i,) * params.n, dims)] = lam
    return PureState(dims, amps)


def ghz_state(n: int = 3) -> PureState:
    return build_ghz_class(GHZClassParams(n, 2, (1 / math.sqrt(2), 1 / math.sqrt(2))))


def bell_state() -> PureState:
    """``(|00> + |11>) / sqrt(2)``."""
    return ghz_state(2)


def product_state(dims: Sequence[int]) -> PureState:
    """``|0...0>``."""
    dims = check_dims(dims)
    amps = np.zeros(math.prod(dims), dtype=complex)
    amps[0] = 1.0
    return PureState(dims, amps)


def density(psi: PureState) -> np.ndarray:
    check_capacity(psi.amplitudes.size**2, "density matrix")
    return np.outer(psi.amplitudes, psi.amplitudes.conj())


def reduced(psi: PureState, keep: Iterable[int]) -> np.ndarray:
    """
    Reduced density matrix on the parties in ``keep``.

    Computed from the amplitude tensor directly, never forming the full
    projector; equal to ``partial_trace(density(psi), psi.dims, keep)``.
    """
    keep = check_subset(keep, psi.n_parties)
    rest = [i for i in range(psi.n_parties) if i not in keep]
    dk = math.prod(psi.dims[i] for i in keep)
    check_capacity(dk * dk, "reduced density matrix")
    t = psi.amplitudes.reshape(psi.dims).transpose(list(keep) + rest).reshape(dk, -1)
    return t @ t.conj().T


class TensorCopies(NamedTuple):
    """
    ``m`` copies of a state laid out copy-major: output party
    ``k * n + j`` is party ``j`` of copy ``k``. ``groups[j]`` lists the
    output positions holding original party ``j`` across all copies.
    """

    state: PureState
    groups: tuple[tuple[int, ...], ...]


def copy_groups(n_parties: int, m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(j + k * n_parties for k in range(m)) for j in range(n_parties))


def tensor_copies(psi: PureState, m: int) -> TensorCopies:
    if m < 1:
        raise ValidationError(f"number of copies must be >= 1, got {m}")
    check_capacity(psi.amplitudes.size**m, "tensor-copy state vector")
    amps = np.ones(1, dtype=complex)
    for _ in range(m):
        amps = np.kron(amps, psi.amplitudes)
    # renormalize away round-off accumulated over m products
    amps = amps / np.linalg.norm(amps)
    return TensorCopies(PureState(psi.dims * m, amps), copy_groups(psi.n_parties, m))


def expand_parties(parties: Iterable[int], groups: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Map original party indices to all of their copy positions."""
    out: list[int] = []
    for j in parties:
        out.extend(groups[j])
    return tuple(sorted(out))
