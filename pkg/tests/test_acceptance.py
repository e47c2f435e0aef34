"""Acceptance suite: one test per release criterion.

Each test checks a headline guarantee of the library end to end, at the
tolerance promised in the README. The conftest hook prints one PASS/FAIL
line per criterion after the run.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from symprot import (
    CertificationConfig,
    ScatterSampler,
    Verdict,
    certify,
    direct_sum,
    enumerate_basis,
    find_protected,
    h0,
    hm,
    lift,
    lift_jz,
    lift_mirror,
    mirror_fock,
    named_state,
    pair_expansion_coefficients,
    pair_power,
    permanent_naive,
    permanent_ryser,
    slater_report,
    takagi,
    time_bin_qudit,
    transmit,
    two_photon_matrix,
    drift_experiment,
    erasure_capacity,
    verify_pair_uniqueness,
)


def test_criterion_1_two_photon_catalog():
    """The two-photon axial mirror and its protected eigenvectors."""
    basis = enumerate_basis(h0(), 2)
    M = lift_mirror(basis).matrix
    order = [basis.index((1, 1)), basis.index((2, 0)), basis.index((0, 2))]
    displayed = M[np.ix_(order, order)].real
    assert np.array_equal(displayed, np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]]))

    values, vectors = np.linalg.eigh(M.real)
    assert np.allclose(np.sort(values), [-1.0, 1.0, 1.0], atol=1e-12, rtol=0)
    plus = vectors[:, values > 0]
    minus = vectors[:, values < 0]
    P_plus = plus @ plus.T
    P_minus = minus @ minus.T
    for name, P in (("phi1", P_plus), ("phi2", P_plus), ("phi3", P_minus)):
        amps = named_state(name).amplitudes.real
        assert np.linalg.norm(P @ amps) > 1 - 1e-12


def test_criterion_2_protection_verdicts():
    """Catalog verdicts over 100 random subunitary symmetric channels."""
    # documented seed: ~1-2% of generic samples sit within 1e-3 of an
    # eigenvector by chance; this stream was measured to keep that below
    # one sample per state.
    cfg = CertificationConfig(n_samples=100, seed=1, unitary=False)
    for name in ("phi3", "s1", "s2", "psi4"):
        report = certify(named_state(name), cfg)
        assert report.verdict is Verdict.PROTECTED, name
        assert report.worst_residual < 1e-10, name
    for name in ("phi1", "phi2", "psi1", "psi2", "psi3"):
        report = certify(named_state(name), cfg)
        assert report.verdict is Verdict.NOT_PROTECTED, name
        big = sum(1 for r in report.residuals if r > 1e-3)
        assert big >= 99, (name, big)


def test_criterion_3_eigenvalue_identities():
    """Certified eigenvalues match their closed forms within 1e-9."""
    cfg = CertificationConfig(n_samples=32, seed=0, unitary=False)

    def stream(space):
        sampler = ScatterSampler(
            seed=cfg.seed, unitary=cfg.unitary, genericity_floor=cfg.genericity_floor
        )
        while True:
            yield sampler.sample(space)

    closed_forms = {
        "phi3": lambda S: S[0, 0] ** 2 - S[0, 1] ** 2,
        "s1": lambda S: (S[0, 0] + S[0, 1]) ** 2,
        "s2": lambda S: (S[0, 0] - S[0, 1]) ** 2,
    }
    for name, form in closed_forms.items():
        report = certify(named_state(name), cfg)
        for lam, s in zip(report.eigenvalues, stream(h0())):
            assert abs(lam - form(s.matrix)) < 1e-9, name

    report = certify(named_state("psi4"), cfg)
    for lam, s in zip(report.eigenvalues, stream(hm(1))):
        Sm = s.block(0)
        eta_gamma_minus_zeta_eps = Sm[0, 0] * Sm[1, 1] - Sm[0, 1] * Sm[1, 0]
        assert abs(lam - eta_gamma_minus_zeta_eps) < 1e-9

    for pairs in (2, 3):
        report = certify(pair_power(1, pairs), cfg)
        for lam, s in zip(report.eigenvalues, stream(hm(1))):
            assert abs(lam - np.linalg.det(s.block(0)) ** pairs) < 1e-9


def test_criterion_4_axial_ray_counting():
    """Exactly N + 1 protected rays on the axial pair, split by parity."""
    cfg = CertificationConfig(n_samples=16, seed=0)
    for n in range(1, 7):
        result = find_protected(h0(), n, cfg)
        assert result.verdict is Verdict.PROTECTED, n
        assert len(result.rays) == n + 1, n
        even = sum(1 for r in result.rays if r.mirror_tau == +1)
        odd = sum(1 for r in result.rays if r.mirror_tau == -1)
        assert even == n // 2 + 1, n
        assert odd == (n + 1) // 2, n
        expected = [mirror_fock(n - k, k) for k in range(n + 1)]
        for ray in result.rays:
            scores = [abs(ray.state.overlap(e)) for e in expected]
            k = int(np.argmax(scores))
            assert scores[k] > 1 - 1e-9, (n, k)
            assert ray.mirror_tau == (-1) ** k, (n, k)


def test_criterion_5_rotating_pair_uniqueness():
    """One protected ray per even photon number on rotating pairs, none odd."""
    cfg = CertificationConfig(n_samples=16, seed=0)
    for m in (1, 2):
        for n in (2, 4, 6):
            result = find_protected(hm(m), n, cfg)
            assert len(result.rays) == 1, (m, n)
            ray = result.rays[0]
            target = pair_power(m, n // 2)
            assert abs(ray.state.overlap(target)) > 1 - 1e-9, (m, n)
        for n in (1, 3, 5):
            result = find_protected(hm(m), n, cfg)
            assert result.rays == (), (m, n)
            assert result.verdict is Verdict.PROTECTED, (m, n)
    for pairs in (1, 2, 3):
        coeffs = pair_expansion_coefficients(pairs)
        assert coeffs == [(-1) ** l * math.comb(pairs, l) for l in range(pairs + 1)]
        assert all(type(c) is int for c in coeffs)
        report = verify_pair_uniqueness(1, pairs, cfg)
        assert report.ok and report.coefficients_ok, pairs


def test_criterion_6_lift_correctness():
    """Multiplicativity, permanent agreement, and symmetry inheritance."""
    rng = np.random.default_rng(0)

    def random_contraction(m):
        # spectral norm slightly below 1 keeps every lifted product bounded,
        # so the Frobenius budget is meaningful at any photon number
        G = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        return G / (1.05 * np.linalg.norm(G, 2))

    for space in (h0(), hm(1)):
        m = len(space)
        for n in range(1, 6):
            basis = enumerate_basis(space, n)
            for _ in range(200):
                A = random_contraction(m)
                B = random_contraction(m)
                lhs = lift(A @ B, basis).matrix
                rhs = lift(A, basis).matrix @ lift(B, basis).matrix
                assert np.linalg.norm(lhs - rhs) < 1e-10, (space.kind, n)

    for _ in range(500):
        k = int(rng.integers(1, 7))
        M = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
        r = permanent_ryser(M)
        v = permanent_naive(M)
        assert abs(r - v) <= 1e-10 * max(1.0, abs(v))

    sampler = ScatterSampler(seed=1, unitary=False)
    unitary_sampler = ScatterSampler(seed=1, unitary=True)
    for space, n in ((h0(), 3), (hm(1), 2), (hm(2), 2), (direct_sum(h0(), hm(1)), 2)):
        basis = enumerate_basis(space, n)
        Jz = lift_jz(basis).matrix
        My = lift_mirror(basis).matrix
        for src in (sampler, unitary_sampler):
            for _ in range(5):
                L = lift(src.sample(space).matrix, basis).matrix
                assert np.linalg.norm(L @ Jz - Jz @ L) < 1e-10
                assert np.linalg.norm(L @ My - My @ L) < 1e-10


def test_criterion_7_entanglement_structure():
    """Slater ranks of the catalog and Takagi invariance."""
    phi3 = slater_report(named_state("phi3"))
    assert phi3.rank == 2 and phi3.is_single_product
    psi4 = slater_report(named_state("psi4"))
    assert psi4.rank == 4 and not psi4.is_single_product

    rng = np.random.default_rng(7)
    matrices = [two_photon_matrix(named_state(n)).matrix for n in ("phi3", "psi4", "s1")]
    for _ in range(10):
        A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        matrices.append((A + A.T) / 2)
    for C in matrices:
        values, W = takagi(C)
        n = C.shape[0]
        assert np.linalg.norm(W @ np.diag(values) @ W.T - C) < 1e-10
        assert np.linalg.norm(W.conj().T @ W - np.eye(n)) < 1e-10

    C = matrices[-1]
    base = takagi(C)[0]
    for _ in range(100):
        Z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        Q, R = np.linalg.qr(Z)
        V = Q * (np.diag(R) / np.abs(np.diag(R)))
        rotated = takagi(V.T @ C @ V)[0]
        assert np.max(np.abs(rotated - base)) < 1e-10


def test_criterion_8_decoherence_free_transmission():
    """Perfect static-channel fidelity, loss accounting, drift, capacities."""
    cfg = CertificationConfig(n_samples=16, seed=0)
    carriers = {
        "mirror+": mirror_fock(1, 0),
        "mirror-": mirror_fock(0, 1),
        "psi4": named_state("psi4"),
        "pair4": pair_power(1, 2),
    }
    rng = np.random.default_rng(0)
    for name, carrier in carriers.items():
        certified = certify(carrier, cfg)
        assert certified.verdict is Verdict.PROTECTED, name
        space = carrier.basis.space
        sampler = ScatterSampler(seed=11, unitary=False)
        for d in range(2, 6):
            for _ in range(100):
                coeffs = rng.normal(size=d) + 1j * rng.normal(size=d)
                qudit = time_bin_qudit(coeffs, carrier, cfg=None)
                out = transmit(qudit, sampler.sample(space))
                assert abs(out.fidelity - 1.0) < 1e-12, (name, d)

    s = ScatterSampler(seed=2, unitary=False).sample(hm(1))
    probs = []
    for _ in range(20):
        coeffs = rng.normal(size=3) + 1j * rng.normal(size=3)
        qudit = time_bin_qudit(coeffs, carriers["psi4"], cfg=None)
        probs.append(transmit(qudit, s).success_probability)
    assert np.ptp(probs) < 1e-12

    qubit = time_bin_qudit([1.0, 1.0], carriers["psi4"], cfg=None)
    below = 0
    for seed in range(87, 187):  # documented seed window, see test_dfs
        sampler = ScatterSampler(seed=seed, unitary=True)
        fidelity = drift_experiment(qubit, sampler.sample(hm(1)), sampler.sample(hm(1)))
        if fidelity < 1.0 - 1e-12:
            below += 1
    assert below >= 99

    for eps in np.linspace(0.0, 1.0, 21):
        assert erasure_capacity(eps) == max(0.0, 1.0 - 2.0 * eps)
        assert erasure_capacity(eps, two_way=True) == 1.0 - eps


def test_criterion_9_cli_determinism(tmp_path):
    """Every CLI command is byte-identical when re-run with the same seed."""
    matrix_path = tmp_path / "matrix.json"
    matrix_path.write_text(
        json.dumps([[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]])
    )
    commands = [
        ("certify", "--state", "psi4", "--space", "hm:1", "--samples", "8", "--seed", "4"),
        ("search", "--space", "h0", "--n", "3", "--samples", "8", "--seed", "4"),
        ("catalog",),
        ("entangle", "--state", "phi3"),
        ("dfs", "--carrier", "pair:m=1,N=4", "--d", "3", "--loss", "0.1",
         "--samples", "8", "--seed", "4"),
        ("capacity", "--eps", "0.25", "--two-way", "false"),
        ("validate", "--space", "h0", "--matrix", str(matrix_path)),
    ]
    for args in commands:
        runs = [
            subprocess.run(
                [sys.executable, "-m", "symprot.cli", *args],
                capture_output=True,
                text=True,
            )
            for _ in range(2)
        ]
        assert runs[0].returncode == 0, (args, runs[0].stderr)
        assert runs[0].stdout == runs[1].stdout, args
        json.loads(runs[0].stdout)  # well-formed canonical JSON
