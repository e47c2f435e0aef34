"""Certification of protected states and the exhaustive ray search."""

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
    mirror_fock,
    named_state,
    pair_power,
    product_state,
    state_from_amplitudes,
    verify_pair_uniqueness,
)

CFG = CertificationConfig(n_samples=24, seed=0)


def certification_stream(cfg):
    """The sampler certify() draws from, rebuilt from the config fields."""
    return ScatterSampler(
        seed=cfg.seed, unitary=cfg.unitary, genericity_floor=cfg.genericity_floor
    )


def test_singlet_certifies_protected():
    report = certify(named_state("psi4"), CFG)
    assert report.verdict is Verdict.PROTECTED
    assert report.worst_residual < 1e-10
    assert report.witness_sample_index is None
    assert len(report.residuals) == CFG.n_samples


def test_singlet_eigenvalues_track_the_block_determinant():
    report = certify(named_state("psi4"), CFG)
    sampler = certification_stream(CFG)
    for lam in report.eigenvalues:
        s = sampler.sample(hm(1))
        assert abs(lam - np.linalg.det(s.block(0))) < 1e-12


def test_mirror_odd_pair_certifies_protected():
    report = certify(named_state("phi3"), CFG)
    assert report.verdict is Verdict.PROTECTED
    sampler = certification_stream(CFG)
    for lam in report.eigenvalues:
        S = sampler.sample(h0()).matrix
        alpha, beta = S[0, 0], S[0, 1]
        assert abs(lam - (alpha**2 - beta**2)) < 1e-12


def test_twin_beam_residual_is_known_in_closed_form():
    """|1,1> fails with residual exactly 2 |alpha beta| every sample."""
    report = certify(named_state("phi1"), CFG)
    assert report.verdict is Verdict.NOT_PROTECTED
    sampler = certification_stream(CFG)
    for res in report.residuals:
        S = sampler.sample(h0()).matrix
        assert abs(res - 2 * abs(S[0, 0] * S[0, 1])) < 1e-12
    # the witness is the worst sample
    w = report.witness_sample_index
    assert report.residuals[w] == max(report.residuals)
    assert report.worst_residual == report.residuals[w]


def test_certify_requires_normalized_states():
    basis = enumerate_basis(h0(), 2)
    bad = state_from_amplitudes(basis, {(2, 0): 2.0})
    with pytest.raises(ValueError):
        certify(bad, CFG)


def test_config_validation():
    with pytest.raises(ValueError):
        CertificationConfig(n_samples=2)
    with pytest.raises(ValueError):
        CertificationConfig(residual_tol=0.0)
    with pytest.raises(ValueError):
        CertificationConfig(cluster_tol=1.5)


def test_residuals_are_basis_covariant():
    """Conjugating both state and scattering by a symmetric unitary changes nothing."""
    psi = named_state("phi3")
    basis = psi.basis
    U2 = ScatterSampler(seed=99, unitary=True).sample(h0()).matrix
    sampler = ScatterSampler(seed=5, unitary=False)
    lifted_U = lift(U2, basis).matrix
    for _ in range(5):
        S = sampler.sample(h0()).matrix
        L = lift(S, basis).matrix
        Lc = lift(U2.conj().T @ S @ U2, basis).matrix
        phi = L @ psi.amplitudes
        lam = np.vdot(psi.amplitudes, phi)
        r1 = np.linalg.norm(phi - lam * psi.amplitudes)
        rot = lifted_U.conj().T @ psi.amplitudes
        phi2 = Lc @ rot
        lam2 = np.vdot(rot, phi2)
        r2 = np.linalg.norm(phi2 - lam2 * rot)
        assert abs(lam - lam2) < 1e-10
        assert abs(r1 - r2) < 1e-10


# ---------------------------------------------------------------------------
# search


def test_search_h0_three_photons():
    result = find_protected(h0(), 3, CFG)
    assert result.verdict is Verdict.PROTECTED
    assert len(result.rays) == 4
    assert not result.subspaces
    taus = sorted(ray.mirror_tau for ray in result.rays)
    assert taus == [-1, -1, 1, 1]
    expected = [mirror_fock(3 - k, k) for k in range(4)]
    for ray in result.rays:
        assert ray.m_tot == 0
        best = max(abs(ray.state.overlap(e)) for e in expected)
        assert best > 1 - 1e-9
        assert ray.report.verdict is Verdict.PROTECTED


def test_search_rotating_pair_sector():
    result = find_protected(hm(1), 2, CFG)
    assert len(result.rays) == 1
    ray = result.rays[0]
    assert ray.m_tot == 0
    assert ray.mirror_tau == -1
    assert abs(ray.state.overlap(named_state("psi4"))) > 1 - 1e-9


def test_search_rotating_odd_photon_number_is_empty():
    result = find_protected(hm(1), 3, CFG)
    assert result.verdict is Verdict.PROTECTED
    assert result.rays == ()
    assert not result.subspaces


def test_search_is_seed_robust():
    a = find_protected(h0(), 4, CertificationConfig(n_samples=12, seed=0))
    b = find_protected(h0(), 4, CertificationConfig(n_samples=12, seed=1))
    assert len(a.rays) == len(b.rays) == 5
    for ray in a.rays:
        best = max(abs(ray.state.overlap(other.state)) for other in b.rays)
        assert best > 1 - 1e-8


def test_search_rays_are_phase_fixed():
    result = find_protected(h0(), 2, CFG)
    for ray in result.rays:
        lead = ray.state.amplitudes[np.flatnonzero(np.abs(ray.state.amplitudes) > 1e-10)[0]]
        assert lead.imag == pytest.approx(0.0, abs=1e-12)
        assert lead.real > 0


def test_search_sector_restriction():
    full = find_protected(hm(1), 2, CFG)
    zero = find_protected(hm(1), 2, CFG, sector=0)
    assert len(zero.rays) == len(full.rays) == 1
    top = find_protected(hm(1), 2, CFG, sector=2)
    assert top.rays == ()
    with pytest.raises(ValueError):
        find_protected(hm(1), 2, CFG, sector=5)


def test_search_reports_inconclusive_when_starved():
    result = find_protected(h0(), 2, CFG, max_samples=2)
    assert result.verdict is Verdict.INCONCLUSIVE
    assert result.samples_used == 2


def test_product_of_protected_rays_is_protected():
    """phi3 x psi4 carries the product eigenvalue (alpha^2 - beta^2) det(S_m)."""
    state = product_state([named_state("phi3"), named_state("psi4")])
    cfg = CertificationConfig(n_samples=12, seed=2)
    report = certify(state, cfg)
    assert report.verdict is Verdict.PROTECTED
    assert report.worst_residual < 1e-10
    space = direct_sum(h0(), hm(1))
    sampler = certification_stream(cfg)
    for lam in report.eigenvalues:
        S = sampler.sample(space).matrix
        alpha, beta = S[0, 0], S[0, 1]
        det_m = np.linalg.det(S[2:4, 2:4])
        assert abs(lam - (alpha**2 - beta**2) * det_m) < 1e-12


# ---------------------------------------------------------------------------
# pair uniqueness


@pytest.mark.parametrize("m,pairs", [(1, 1), (1, 2), (2, 1)])
def test_pair_uniqueness_holds(m, pairs):
    report = verify_pair_uniqueness(m, pairs, CFG)
    assert report.ok
    assert report.ray_count == 1
    assert report.overlap > 1 - 1e-9
    assert report.coefficients_ok
    assert report.samples_used >= 3


def test_pair_uniqueness_rejects_zero_pairs():
    with pytest.raises(ValueError):
        verify_pair_uniqueness(1, 0, CFG)
