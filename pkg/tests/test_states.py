import math

import numpy as np
import pytest

from monogamy_lab.errors import CapacityError, ValidationError
from monogamy_lab.states import (
    GHZClassParams,
    PureState,
    WClassParams,
    bell_state,
    build_ghz_class,
    build_wclass,
    density,
    ghz_state,
    product_state,
    random_wclass,
    reduced,
    tensor_copies,
    uniform_wclass,
    w3_params,
)
from monogamy_lab.tensor import ELEMENT_CAP_ENV, partial_trace


def test_w3_amplitudes():
    psi = build_wclass(w3_params())
    expected = np.zeros(8)
    for letters in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        expected[psi.basis_index(letters)] = 1 / math.sqrt(3)
    np.testing.assert_allclose(psi.amplitudes, expected, atol=1e-15)
    assert psi.basis_index((1, 0, 0)) == 4  # party 0 slowest


def test_wclass_two_qutrits_has_nine_amplitudes():
    params = WClassParams([[0.6, 0.0], [0.0, 0.8j]])
    psi = build_wclass(params)
    assert psi.dims == (3, 3)
    assert psi.amplitudes.size == 9
    assert psi.amplitudes[psi.basis_index((0, 2))] == pytest.approx(0.8j)


def test_uniform_w5_norm():
    psi = build_wclass(uniform_wclass(5, 2))
    assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0, abs=1e-12)
    assert np.count_nonzero(psi.amplitudes) == 5


def test_wclass_rejects_unnormalized():
    with pytest.raises(ValidationError):
        WClassParams([[0.5], [0.5]])
    with pytest.raises(ValidationError):
        WClassParams.from_flat(3, 2, [1.0, 0.0])


def test_omegas():
    params = WClassParams(np.array([[0.5, 0.5j], [0.5, 0.0], [0.0, 0.5]]))
    assert params.omega1 == pytest.approx(0.5)
    assert params.omega2 == pytest.approx(0.25)


def test_ghz_standard():
    psi = ghz_state(3)
    expected = np.zeros(8)
    expected[[0, 7]] = 1 / math.sqrt(2)
    np.testing.assert_allclose(psi.amplitudes, expected)


def test_ghz_single_term_is_product():
    psi = build_ghz_class(GHZClassParams(2, 2, (1.0,)))
    np.testing.assert_array_equal(psi.amplitudes, product_state([2, 2]).amplitudes)


def test_ghz_qutrit_reduction():
    lam = (math.sqrt(0.5), math.sqrt(0.3), math.sqrt(0.2))
    psi = build_ghz_class(GHZClassParams(4, 3, lam))
    assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0)
    np.testing.assert_allclose(reduced(psi, [2]), np.diag([0.5, 0.3, 0.2]), atol=1e-15)


def test_ghz_rejects_bad_params():
    with pytest.raises(ValidationError):
        GHZClassParams(3, 2, (0.5, 0.5, 0.5, 0.5))
    with pytest.raises(ValidationError):
        GHZClassParams(3, 2, (1.0, 0.0))
    with pytest.raises(ValidationError):
        GHZClassParams(3, 2, (0.5, 0.5))


def test_density_examples():
    np.testing.assert_array_equal(density(PureState((2,), [1, 0])), np.diag([1, 0]))
    rho = density(build_wclass(w3_params()))
    assert rho.shape == (8, 8)
    assert np.trace(rho).real == pytest.approx(1.0)
    bell = density(bell_state())
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    np.testing.assert_allclose(bell, expected, atol=1e-15)


def test_reduced_examples():
    w3 = build_wclass(w3_params())
    np.testing.assert_allclose(reduced(w3, [0]), np.diag([2 / 3, 1 / 3]), atol=1e-15)
    ghz = ghz_state(3)
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = 0.5
    np.testing.assert_allclose(reduced(ghz, [0, 1]), expected, atol=1e-15)


def test_reduced_wclass_pair_structure():
    rng = np.random.default_rng(20)
    params = random_wclass(4, 3, rng)
    rho = reduced(build_wclass(params), [0, 1])
    assert rho[0, 0].real == pytest.approx(params.omega2, abs=1e-12)
    # support only on |00>, |i0>, |0i>
    allowed = {0} | {3 * i for i in (1, 2)} | {i for i in (1, 2)}
    for r in range(9):
        for c in range(9):
            if r not in allowed or c not in allowed:
                assert abs(rho[r, c]) < 1e-15
    # rank two: |x><x| + W2 |00><00|
    assert np.linalg.matrix_rank(rho, tol=1e-12) == 2


def test_reduced_matches_partial_trace_and_all():
    rng = np.random.default_rng(21)
    for _ in range(5):
        psi = build_wclass(random_wclass(3, 3, rng))
        rho = density(psi)
        np.testing.assert_allclose(reduced(psi, [0, 2]), partial_trace(rho, psi.dims, [0, 2]), atol=1e-14)
        np.testing.assert_allclose(reduced(psi, [0, 1, 2]), rho, atol=1e-15)


@pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3)])
def test_wclass_invariants(n, d):
    rng = np.random.default_rng(n * 10 + d)
    for _ in range(10):
        params = random_wclass(n, d, rng)
        psi = build_wclass(params)
        assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0, abs=1e-10)
        assert reduced(psi, [0])[0, 0].real == pytest.approx(params.omega1, abs=1e-12)


@pytest.mark.parametrize("n,d", [(3, 2), (4, 3), (5, 2)])
def test_ghz_pair_reductions_diagonal(n, d):
    lam = np.linspace(1, 2, d)
    lam = lam / np.linalg.norm(lam)
    psi = build_ghz_class(GHZClassParams(n, d, tuple(lam)))
    for s in range(1, n):
        rho = reduced(psi, [0, s])
        assert np.max(np.abs(rho - np.diag(np.diag(rho)))) <= 1e-12


def test_tensor_copies_basic():
    w3 = build_wclass(w3_params())
    one = tensor_copies(w3, 1)
    np.testing.assert_array_equal(one.state.amplitudes, w3.amplitudes)
    two = tensor_copies(w3, 2)
    assert two.state.amplitudes.size == 64
    assert np.linalg.norm(two.state.amplitudes) == pytest.approx(1.0)
    assert two.groups == ((0, 3), (1, 4), (2, 5))
    zero = PureState((2,), [1, 0])
    np.testing.assert_array_equal(tensor_copies(zero, 3).state.amplitudes, product_state([2, 2, 2]).amplitudes)


def test_tensor_copies_capacity(monkeypatch):
    monkeypatch.setenv(ELEMENT_CAP_ENV, "100")
    with pytest.raises(CapacityError):
        tensor_copies(build_wclass(w3_params()), 3)
    with pytest.raises(ValidationError):
        tensor_copies(bell_state(), 0)


def test_pure_state_validation():
    with pytest.raises(ValidationError):
        PureState((2, 2), [1, 0, 0])
    with pytest.raises(ValidationError):
        PureState((2,), [1, 1])
