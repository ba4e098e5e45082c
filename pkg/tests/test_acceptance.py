"""Acceptance criteria, one test per criterion at its stated tolerance.

``pytest tests/test_acceptance.py`` prints a PASS/FAIL line per criterion in
the terminal summary.
"""

import math
import time

import numpy as np
import pytest

from renyi_qubit import qubit_algebra as qa
from renyi_qubit.bound_engine import (
    SQRT1_2,
    Overlap,
    alpha_dagger,
    alpha_star,
    diagonal_bound,
    reference_bounds,
    suboptimal_bound,
    tight_bound,
)
from renyi_qubit.cli import TABLE1_C, TABLE1_PUBLISHED, main
from renyi_qubit.entropy_core import LOG2, QUARTER_PI, curvature_k, delta_gap, entropy_sum_profile
from renyi_qubit.oracle import verify_phase_optimality
from renyi_qubit.verification import random_triples, run_verification

criterion = pytest.mark.criterion


@pytest.fixture(scope="session")
def verification():
    start = time.perf_counter()
    report = run_verification(200, seed=42)
    return report, time.perf_counter() - start


@pytest.fixture(scope="session")
def triples():
    return [(a, b, t, qa.overlap_of(t)) for a, b, t in random_triples(200, 42)]


def unitary_with_overlap(rng, c):
    ov = Overlap.from_c(c)
    u, v = rng.uniform(-math.pi, math.pi, 2), rng.uniform(-math.pi, math.pi)
    gamma_t = ov.gamma if rng.random() < 0.5 else math.pi / 2 - ov.gamma
    return qa.phase_diag(u) @ qa.rotation(gamma_t) @ qa.phase_diag([0, v])


@criterion(1, "transition-index table within 0.002 of published values, under 30 s")
def test_table1(capsys):
    start = time.perf_counter()
    code = main(["table1"])
    elapsed = time.perf_counter() - start
    lines = capsys.readouterr().out.splitlines()[1:]
    assert code == 0 and len(lines) == 15
    got = [float(line.split(",")[1]) for line in lines]
    diffs = np.abs(np.array(got) - TABLE1_PUBLISHED)
    print(f"max |alpha* - published| = {diffs.max():.2e}, {elapsed:.2f} s")
    assert [float(line.split(",")[0]) for line in lines] == list(TABLE1_C)
    assert np.all(diffs <= 0.002)
    assert elapsed < 30


@criterion(2, "alpha-dagger in [1.425, 1.435] with residual below 1e-9")
def test_alpha_dagger():
    a = alpha_dagger()
    p = (2 + math.sqrt(2)) / 4
    residual = (2 / (1 - a)) * math.log(p**a + (1 - p) ** a) - LOG2
    assert 1.425 <= a <= 1.435
    assert abs(residual) < 1e-9


@criterion(3, "closed-form equivalences to 1e-9 over 50 random overlaps")
def test_closed_forms():
    rng = np.random.default_rng(3)
    cs = rng.uniform(SQRT1_2, 1.0, 50)
    for c in cs:
        rastegin = math.log(1 + math.sqrt(4 * c * c * (1 - c * c)))
        assert abs(tight_bound(0.5, 0.5, c).value - rastegin) <= 1e-9
        collision = -2 * math.log((1 + c * c) / 2)
        assert abs(tight_bound(2, 2, c).value - collision) <= 1e-9
    for _ in range(50):
        alpha = rng.uniform(0.5, 6.0)
        beta = rng.uniform(0, alpha / (2 * alpha - 1))
        assert abs(tight_bound(alpha, beta, SQRT1_2).value - LOG2) <= 1e-9
        assert abs(tight_bound(beta, alpha, SQRT1_2).value - LOG2) <= 1e-9
    for a, b in rng.uniform(0, 6, (50, 2)):
        assert tight_bound(a, b, 1.0).value == 0.0


@criterion(4, "oracle agreement below 1e-6 on 200 random triples, under 5 min")
def test_oracle_agreement(verification):
    report, elapsed = verification
    suite = report["suites"]["oracle_agreement"]
    print(f"worst |oracle - bound| = {suite['worst']:.2e}, {elapsed:.1f} s")
    assert len(report["triples"]) == 200
    assert suite["passed"] and suite["worst"] < 1e-6
    assert elapsed < 300


@criterion(5, "universality: 1e5 random states never below the bound by 1e-9")
def test_universality():
    rng = np.random.default_rng(5)
    psis = qa.random_states(rng, 100_000)
    grid = np.linspace(0.0, 4.0, 5)
    worst = math.inf
    for c in (SQRT1_2, 0.85, 0.99):
        t = unitary_with_overlap(rng, c)
        ov = qa.overlap_of(t)
        for a in grid:
            for b in grid:
                sums = qa.entropy_sum_of_state(psis, t, a, b)
                worst = min(worst, float(np.min(sums)) - tight_bound(a, b, ov).value)
    print(f"smallest margin = {worst:.2e}")
    assert worst >= -1e-9


@criterion(6, "minimizer states attain the bound and saturate Landau-Pollak to 1e-9")
def test_attainment(verification, triples):
    report, _ = verification
    assert report["suites"]["attainment"]["passed"]
    assert report["suites"]["landau_pollak"]["passed"]
    cases = [(a, b, t) for a, b, t, _ in triples]
    rng = np.random.default_rng(6)
    for c in (SQRT1_2, 0.75, 0.9, 1.0):
        for a, b in [(0, 0), (0.5, 0.5), (0.3, 0.1), (1, 1), (2, 2), (alpha_dagger(), alpha_dagger()),
                     (3, 0.7), (0.7, 3), (1, 0)]:
            cases.append((a, b, unitary_with_overlap(rng, c)))
    worst_attain = worst_lp = 0.0
    for a, b, t in cases:
        bound = tight_bound(a, b, qa.overlap_of(t))
        psis = np.array([s.psi for s in qa.minimizer_states(t, bound).states])
        worst_attain = max(worst_attain, float(np.max(np.abs(qa.entropy_sum_of_state(psis, t, a, b) - bound.value))))
        worst_lp = max(worst_lp, float(np.max(np.abs(qa.landau_pollak_residual(psis, t)))))
    print(f"worst attainment gap {worst_attain:.2e}, worst residual {worst_lp:.2e}")
    assert worst_attain <= 1e-9
    assert worst_lp < 1e-9


@criterion(7, "sign theorems: curvature, delta gap, monotone tail, phase optimality")
def test_sign_theorems():
    theta = np.linspace(1e-3, math.pi / 2 - 1e-3, 500)
    for lam in np.linspace(0.01, 0.5, 50):
        assert np.all(curvature_k(lam, theta) < 0)
    g = np.linspace(0, QUARTER_PI, 101)
    th, ga = np.meshgrid(g, g)
    for beta in (0.3, 0.7, 2.0, 5.0):
        assert np.all(delta_gap(beta, th, ga) >= -1e-13)
    for a in (0.2, 0.5, 1.0, 2.0, 4.0):
        for b in (0.3, 1.0, 3.0):
            for gamma in np.linspace(0.05, QUARTER_PI, 8):
                tail = entropy_sum_profile(a, b, gamma, np.linspace(gamma, QUARTER_PI, 200))
                assert np.all(np.diff(tail) >= -1e-12)
    worst = 0.0
    for beta in np.linspace(0.05, 5, 20):
        for gamma in np.linspace(0.02, QUARTER_PI, 20):
            for t in np.linspace(0, gamma, 20):
                worst = min(worst, verify_phase_optimality(beta, gamma, t))
    assert worst >= -1e-9


@criterion(8, "optimal angle curve: nondecreasing, 0 up to 1/2, gamma/2 past alpha* + 0.01")
def test_optimal_angle_curve():
    for c in (0.8, 0.9):
        ov = Overlap.from_c(c)
        a_star = alpha_star(ov)
        alphas = np.linspace(0.0, 3.0, 601)
        th = np.array([min(diagonal_bound(a, ov).theta_opt) for a in alphas])
        assert np.all(np.diff(th) >= -1e-12)
        assert np.all(th[alphas <= 0.5] == 0.0)
        past = alphas >= a_star + 0.01
        assert past.any()
        assert np.all(np.abs(th[past] - ov.gamma / 2) <= 1e-12)


@criterion(9, "factorization round trip below 1e-10 on 1000 random unitaries")
def test_factorization():
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(1000):
        t = qa.haar_unitary(rng)
        worst = max(worst, float(np.max(np.abs(qa.factorize(t).matrix() - t))))
    assert worst < 1e-10


@criterion(10, "Deutsch <= suboptimal <= tight, all zero at c = 1")
def test_deutsch_dominance(triples):
    rng = np.random.default_rng(10)
    cases = [(a, b, ov) for a, b, _, ov in triples]
    cases += [(a, b, Overlap.from_c(c)) for a, b, c in
              zip(rng.uniform(0, 6, 300), rng.uniform(0, 6, 300), rng.uniform(SQRT1_2, 1, 300))]
    for a, b, ov in cases:
        deutsch = reference_bounds(a, b, ov)["deutsch"].value
        sub = suboptimal_bound(a, b, ov)
        tight = tight_bound(a, b, ov).value
        assert deutsch <= sub + 1e-12 and sub <= tight + 1e-12
    for a, b in rng.uniform(0, 6, (30, 2)):
        vals = (reference_bounds(a, b, 1.0)["deutsch"].value, suboptimal_bound(a, b, 1.0),
                tight_bound(a, b, 1.0).value)
        assert vals == (0.0, 0.0, 0.0)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
