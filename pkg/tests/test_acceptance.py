"""
Acceptance suite: one test per criterion, each printing a pass/fail line.

Criteria 1 and 6 are split so the attainable parts are reported apart
from the parts that cannot hold as stated; see the README for details.
"""

import contextlib
import csv
import io
import math

import numpy as np
import pytest

from monogamy_lab import cli
from monogamy_lab.measures import cren_wclass_one_vs_rest, cren_wclass_pair, negativity, pure_negativity
from monogamy_lab.monogamy import (
    CorrelationProfile,
    critical_power,
    lemma_gap,
    multipartite_weights,
    residual,
    tighter_bound_multipartite,
    tighter_bound_tripartite,
)
from monogamy_lab.states import (
    bell_state,
    build_wclass,
    density,
    ghz_state,
    random_wclass,
    reduced,
    uniform_wclass,
)
from monogamy_lab.superactivation import (
    brute_force_copy_negativity,
    copy_model_gap,
    f_surface,
    minimal_copies,
)
from monogamy_lab.tensor import trace_norm_hermitian

# closed-form residuals of three-qubit W copies, from tools/oracles.py
W3_RESIDUAL_ORACLE = {3: -0.18973331999907, 4: 5.52575488117439}
# the constants the criterion states for the same two residuals
W3_RESIDUAL_STATED = {3: -0.188588, 4: 5.525707}


def report(label, ok, detail):
    print(f"criterion {label}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


def csv_rows(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(argv)
    assert code == 0
    return list(csv.DictReader(io.StringIO(buf.getvalue())))


def first_monogamous(rows):
    return next(int(r["m"]) for r in rows if float(r["residual"]) >= 0)


@pytest.mark.criterion("1a")
def test_criterion_1_threshold():
    rows = csv_rows(["--command", "fig1", "--m-max", "8"])
    m_star = first_monogamous(rows)
    assert report("1a", m_star == 4, f"fig1 first nonnegative residual at m={m_star}")


@pytest.mark.criterion("1b")
def test_criterion_1_residuals_vs_exact_closed_form():
    rows = {int(r["m"]): float(r["residual"]) for r in csv_rows(["--command", "fig1", "--m-max", "8"])}
    errs = {m: abs(rows[m] - v) for m, v in W3_RESIDUAL_ORACLE.items()}
    ok = all(e <= 1e-5 for e in errs.values())
    assert report("1b", ok, f"residuals {rows[3]:.6f}, {rows[4]:.6f} vs high-precision oracle, errors {errs}")


@pytest.mark.criterion("1c")
def test_criterion_1_residuals_vs_stated_constants():
    # the stated constants are not the values of the closed form they are
    # derived from (off by 1.1e-3 and 4.8e-5); kept as stated, expected red
    rows = {int(r["m"]): float(r["residual"]) for r in csv_rows(["--command", "fig1", "--m-max", "8"])}
    errs = {m: abs(rows[m] - v) for m, v in W3_RESIDUAL_STATED.items()}
    ok = all(e <= 1e-5 for e in errs.values())
    assert report("1c", ok, f"residuals {rows[3]:.6f}, {rows[4]:.6f} vs stated -0.188588, 5.525707, errors {errs}")


@pytest.mark.criterion("2")
def test_criterion_2():
    params = uniform_wclass(5)
    th = minimal_copies(params)
    joint = cren_wclass_one_vs_rest(params)
    pairs = [cren_wclass_pair(params, s) for s in range(2, 6)]
    rows = csv_rows(["--command", "fig2", "--m-max", "8"])
    ok = (
        th.m_star == 4
        and first_monogamous(rows) == 4
        and abs(joint - 0.8) <= 1e-12
        and all(abs(q - 0.4) <= 1e-12 for q in pairs)
    )
    assert report("2", ok, f"m*={th.m_star}, joint={joint!r}, pairs={pairs}")


@pytest.mark.criterion("3")
def test_criterion_3():
    rng = np.random.default_rng(2024)
    worst_gamma = worst_res = 0.0
    for _ in range(100):
        params = random_wclass(3, int(rng.integers(2, 4)), rng)
        profile = CorrelationProfile(cren_wclass_one_vs_rest(params), (cren_wclass_pair(params, 2), cren_wclass_pair(params, 3)))
        worst_gamma = max(worst_gamma, abs(critical_power(profile).value - 2.0))
        worst_res = max(worst_res, abs(residual(profile, 2.0)))
    ok = worst_gamma <= 1e-6 and worst_res <= 1e-10
    assert report("3", ok, f"max |gamma* - 2| = {worst_gamma:.2e}, max |residual(2)| = {worst_res:.2e}")


@pytest.mark.criterion("4")
def test_criterion_4():
    crossings = {}
    ok = True
    for n in range(3, 13):
        values = [f_surface(n, m) for m in range(1, 65)]
        ok &= values[0] <= 0
        m_star = next((m for m, v in enumerate(values, start=1) if v >= 0), None)
        crossings[n] = m_star
        if m_star is None:
            ok = False
            continue
        ok &= all(v < 0 for v in values[: m_star - 1])
        ok &= all(v >= 0 for v in values[m_star - 1 :])
    seq = list(crossings.values())
    ok &= all(b >= a for a, b in zip(seq, seq[1:]))
    assert report("4", ok, f"crossings m*(n) = {crossings}")


@pytest.mark.criterion("5")
def test_criterion_5():
    w3 = build_wclass(uniform_wclass(3))
    n_w3 = negativity(density(w3), w3.dims, [0])
    n_bell = negativity(density(bell_state()), [2, 2], [0])
    ghz = ghz_state(3)
    n_ghz = [negativity(reduced(ghz, [0, s]), [2, 2], [0]) for s in (1, 2)]
    n_ghz.append(negativity(reduced(ghz, [1, 2]), [2, 2], [0]))
    ok = abs(n_w3 - 2 * math.sqrt(2) / 3) <= 1e-9 and abs(n_bell - 1) <= 1e-12 and all(abs(v) <= 1e-9 for v in n_ghz)
    assert report("5", ok, f"W3 {n_w3!r}, Bell {n_bell!r}, GHZ pairs {n_ghz}")


def _random_wclass_batch(seed, count=50):
    rng = np.random.default_rng(seed)
    return [random_wclass(int(rng.integers(2, 5)), int(rng.integers(2, 4)), rng) for _ in range(count)]


@pytest.mark.criterion("6a")
def test_criterion_6_one_vs_rest():
    worst = 0.0
    for params in _random_wclass_batch(606):
        worst = max(worst, abs(pure_negativity(build_wclass(params), [0]) - cren_wclass_one_vs_rest(params)))
    assert report("6a", worst <= 1e-10, f"max one-vs-rest deviation {worst:.2e}")


@pytest.mark.criterion("6b")
def test_criterion_6_pair_reduction():
    # the negativity of a mixed reduction only bounds its convex roof from
    # below; for W3 it is (sqrt 5 - 1) / 3 against 2 / 3, so expected red
    worst, count = 0.0, 0
    for params in _random_wclass_batch(607):
        psi = build_wclass(params)
        for s in range(2, params.n + 1):
            neg = negativity(reduced(psi, [0, s - 1]), [params.d] * 2, [0])
            worst = max(worst, abs(neg - cren_wclass_pair(params, s)))
            count += 1
    assert report("6b", worst <= 1e-8, f"max pair deviation {worst:.3e} over {count} reductions")


@pytest.mark.criterion("7")
def test_criterion_7():
    rng = np.random.default_rng(707)
    worst_tn = 0.0
    for _ in range(50):
        k = int(rng.integers(1, 10))
        a = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
        x = a + a.conj().T
        tn = trace_norm_hermitian(x)
        worst_tn = max(worst_tn, abs(trace_norm_hermitian(np.kron(x, x)) - tn**2) / tn**2)

    worst_bf, min_gap = 0.0, math.inf
    for params in _random_wclass_batch(708, count=10):
        if params.d ** params.n > 8:
            continue
        psi = build_wclass(params)
        cuts = [None] + [[0, s] for s in range(1, params.n)]
        for keep in cuts:
            n1 = brute_force_copy_negativity(psi, [0], 1, keep=keep)
            n2 = brute_force_copy_negativity(psi, [0], 2, keep=keep)
            worst_bf = max(worst_bf, abs(n2 - ((1 + n1) ** 2 - 1)))
            if n1 > 1e-6:
                min_gap = min(min_gap, copy_model_gap(n1, 2).gap)
    rows = csv_rows(["--command", "oracle", "--m-max", "2"])
    reported_gap = max(abs(float(r["model_gap"])) for r in rows if r["m"] == "2")
    ok = worst_tn <= 1e-8 and worst_bf <= 1e-7 and min_gap > 0 and reported_gap > 0.1
    assert report(
        "7",
        ok,
        f"trace-norm rel err {worst_tn:.2e}, copy oracle err {worst_bf:.2e}, "
        f"min model gap {min_gap:.3e}, oracle report gap {reported_gap:.6f}",
    )


@pytest.mark.criterion("8")
def test_criterion_8():
    worst_lemma = min(lemma_gap(t, x) for t in np.linspace(0, 1, 200) for x in np.linspace(1, 10, 200))
    rng = np.random.default_rng(808)
    failures = checked = 0
    for _ in range(10_000):
        scale = rng.uniform(0.05, 1.0)
        profile = CorrelationProfile(scale, tuple(scale * rng.uniform(0.0, 1.0, size=2)))
        root = critical_power(profile)
        if root.status != "ok" or root.value <= 0:
            continue
        for s in (1.0, 1.5, 2.0, 3.0):
            checked += 1
            failures += not tighter_bound_tripartite(profile, root.value, s).holds
    w3 = CorrelationProfile(2 * math.sqrt(2) / 3, (2 / 3, 2 / 3))
    b = tighter_bound_tripartite(w3, 2.0, 2.0)
    w3_err = abs(b.lhs - b.rhs)
    ok = worst_lemma >= -1e-12 and failures == 0 and checked >= 39_000 and w3_err <= 1e-12 and abs(b.lhs - 64 / 81) <= 1e-12
    assert report("8", ok, f"min lemma gap {worst_lemma:.2e}, {failures}/{checked} bound failures, W3 |lhs-rhs| {w3_err:.1e}")


@pytest.mark.criterion("9")
def test_criterion_9():
    rng = np.random.default_rng(909)
    worst = 0.0
    for _ in range(300):
        n = int(rng.choice([4, 5, 6]))
        q = rng.uniform(0, 1, size=n - 1)
        alpha = rng.uniform(0.5, 4.0)
        plain = math.fsum(q**alpha)
        for split in range(2, n - 1):
            worst = max(worst, abs(tighter_bound_multipartite(q, alpha, 1.0, split).value - plain))
    weights_ok = all(
        min(multipartite_weights(n, s, split)) >= 1.0
        for n in (4, 5, 6, 9)
        for s in (1.0, 1.25, 2.0, 3.5)
        for split in range(2, n - 1)
    )
    ok = worst <= 1e-12 and weights_ok
    assert report("9", ok, f"max s=1 deviation {worst:.2e}, weights >= 1: {weights_ok}")


@pytest.mark.criterion("10")
def test_criterion_10():
    print("criterion 10: SKIP - excluded by design")
    pytest.skip(
        "exact suprema/infima over all states and definitional CREN of m-copy mixed "
        "reductions are out of reach; covered by criteria 3 and 7"
    )
