"""Certification and discovery of scattering-protected states.

A state is protected when every scattering matrix of the symmetric family
maps it to a scalar multiple of itself. ``certify`` tests a given state
against a stream of generic random samples; ``find_protected`` discovers all
protected rays (and any higher-dimensional protected subspaces) of an
N-photon space by intersecting eigenspaces of independently sampled lifts,
sector by sector in total angular momentum.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .fock import FockBasis, FockState, enumerate_basis, lift, lift_mirror, sector_split
from .modes import ModeSpace, hm
from .scatter import ScatterSampler
from .states import pair_expansion_coefficients, pair_power

__all__ = [
    "Verdict",
    "CertificationConfig",
    "ProtectionReport",
    "ProtectedRay",
    "ProtectedSubspace",
    "SearchResult",
    "UniquenessReport",
    "certify",
    "find_protected",
    "verify_pair_uniqueness",
]

# candidate profile must repeat this many times before a sector is settled
_STABLE_ROUNDS = 2
_MIN_SAMPLES = 3


class Verdict(enum.Enum):
    PROTECTED = "protected"
    NOT_PROTECTED = "not_protected"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CertificationConfig:
    """Sampling and tolerance knobs shared by certify and find_protected."""

    n_samples: int = 64
    residual_tol: float = 1e-10
    cluster_tol: float = 1e-8
    seed: int = 0
    unitary: bool = False  # sampling class used for certification draws
    genericity_floor: float = 1e-3

    def __post_init__(self):
        if self.n_samples < 3:
            raise ValueError("n_samples must be at least 3")
        if not 0 < self.residual_tol < 1:
            raise ValueError("residual_tol must lie in (0, 1)")
        if not 0 < self.cluster_tol < 1:
            raise ValueError("cluster_tol must lie in (0, 1)")


@dataclass(frozen=True)
class ProtectionReport:
    """Outcome of certifying one state against n_samples random lifts."""

    verdict: Verdict
    worst_residual: float
    eigenvalues: np.ndarray  # <psi| lift(S_i) |psi> per sample
    residuals: np.ndarray
    witness_sample_index: int | None  # sample with residual >= tol, if any

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", np.asarray(self.eigenvalues, dtype=complex))
        object.__setattr__(self, "residuals", np.asarray(self.residuals, dtype=float))


def certify(state: FockState, cfg: CertificationConfig = CertificationConfig()) -> ProtectionReport:
    """Test a normalized state against cfg.n_samples generic scattering lifts.

    Sample i is the i-th draw of ScatterSampler(seed=cfg.seed,
    unitary=cfg.unitary, genericity_floor=cfg.genericity_floor) on the
    state's mode space; this correspondence is part of the contract so
    callers can regenerate the stream and inspect individual samples.
    """
    if not state.is_normalized():
        raise ValueError(f"state must be normalized (norm {state.norm:.3e})")
    sampler = ScatterSampler(
        seed=cfg.seed, unitary=cfg.unitary, genericity_floor=cfg.genericity_floor
    )
    basis = state.basis
    psi = state.amplitudes
    eigenvalues = np.empty(cfg.n_samples, dtype=complex)
    residuals = np.empty(cfg.n_samples, dtype=float)
    for i in range(cfg.n_samples):
        scattering = sampler.sample(basis.space)
        phi = lift(scattering.matrix, basis).matrix @ psi
        lam = np.vdot(psi, phi)
        eigenvalues[i] = lam
        residuals[i] = float(np.linalg.norm(phi - lam * psi))
    worst = int(np.argmax(residuals))
    protected = residuals[worst] < cfg.residual_tol
    return ProtectionReport(
        verdict=Verdict.PROTECTED if protected else Verdict.NOT_PROTECTED,
        worst_residual=float(residuals[worst]),
        eigenvalues=eigenvalues,
        residuals=residuals,
        witness_sample_index=None if protected else worst,
    )


@dataclass(frozen=True)
class ProtectedRay:
    """A certified one-dimensional protected subspace."""

    state: FockState  # phase-fixed: first significant amplitude real positive
    m_tot: int
    mirror_tau: int | None  # mirror parity; defined on the m_tot = 0 sector
    report: ProtectionReport


@dataclass(frozen=True)
class ProtectedSubspace:
    """A certified protected subspace of dimension > 1 (scalar action)."""

    basis: FockBasis
    vectors: np.ndarray  # (dim, d) orthonormal columns
    m_tot: int
    worst_residual: float

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class SearchResult:
    rays: tuple[ProtectedRay, ...]
    subspaces: tuple[ProtectedSubspace, ...]
    verdict: Verdict  # PROTECTED-search complete vs INCONCLUSIVE
    samples_used: int
    sectors: tuple[int, ...]


def _cluster_eigenspaces(block: np.ndarray, tol: float):
    """Orthonormal bases of the eigenvalue clusters of a square matrix.

    Returns None when an eigenvector cluster is rank deficient (defective or
    ill-conditioned draw; the caller resamples).
    """
    evals, evecs = np.linalg.eig(block)
    n = evals.size
    scale = max(1.0, float(np.max(np.abs(evals))))
    cut = tol * scale
    # connected components of the eigenvalue proximity graph
    unassigned = set(range(n))
    groups: list[list[int]] = []
    while unassigned:
        seed_idx = min(unassigned)
        comp = {seed_idx}
        frontier = [seed_idx]
        while frontier:
            i = frontier.pop()
            near = [j for j in unassigned - comp if abs(evals[i] - evals[j]) <= cut]
            comp.update(near)
            frontier.extend(near)
        unassigned -= comp
        groups.append(sorted(comp))
    spaces = []
    for comp in groups:
        v = evecs[:, comp]
        sv = np.linalg.svd(v, compute_uv=False)
        if sv[-1] < 1e-8:
            return None
        q, _ = np.linalg.qr(v)
        spaces.append(q)
    return spaces


def _intersect(a: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray | None:
    """Intersection of two subspaces via principal angles (None if trivial)."""
    m = a.conj().T @ b
    u, s, _ = np.linalg.svd(m)
    k = int(np.sum(s > 1.0 - tol))
    if k == 0:
        return None
    q, _ = np.linalg.qr(a @ u[:, :k])
    return q


def _ray_sort_key(state: FockState, m_tot: int):
    amps = state.amplitudes
    return (-m_tot,) + tuple(np.round(amps.real, 9)) + tuple(np.round(amps.imag, 9))


def find_protected(
    space: ModeSpace,
    n_photons: int,
    cfg: CertificationConfig = CertificationConfig(),
    sector: int | None = None,
    max_samples: int = 32,
) -> SearchResult:
    """All protected rays (and subspaces) of the N-photon space.

    Search phase: sample Haar-unitary members of the symmetric family, lift,
    restrict to each total-angular-momentum sector, eigendecompose, and
    intersect eigenspace candidates across samples until the candidate
    dimension profile is stable; sectors that fail to stabilize within
    max_samples render the search INCONCLUSIVE. Certification phase: each
    surviving candidate is certified against cfg's sampling class; rays are
    phase-fixed and carry their mirror parity on the m_tot = 0 sector.
    """
    basis = enumerate_basis(space, n_photons)
    sectors = sector_split(basis)
    if sector is not None:
        if sector not in sectors:
            raise ValueError(f"no m_tot = {sector} sector at N = {n_photons}")
        sectors = {sector: sectors[sector]}

    sampler = ScatterSampler(
        seed=cfg.seed, unitary=True, genericity_floor=cfg.genericity_floor
    )
    state_by_sector = {
        m: {"candidates": None, "profile": None, "stable": 0, "done": False}
        for m in sectors
    }
    samples_used = 0
    while samples_used < max_samples and not all(st["done"] for st in state_by_sector.values()):
        scattering = sampler.sample(space)
        lifted = lift(scattering.matrix, basis).matrix
        samples_used += 1
        for m, idx in sectors.items():
            st = state_by_sector[m]
            if st["done"]:
                continue
            block = lifted[np.ix_(idx, idx)]
            spaces = _cluster_eigenspaces(block, cfg.cluster_tol)
            if spaces is None:
                continue  # defective draw for this sector; use the next sample
            if st["candidates"] is None:
                st["candidates"] = spaces
                st["profile"] = sorted(s.shape[1] for s in spaces)
                continue
            survivors = []
            for cand in st["candidates"]:
                for eig_space in spaces:
                    inter = _intersect(cand, eig_space, cfg.cluster_tol)
                    if inter is not None:
                        survivors.append(inter)
            st["candidates"] = survivors
            profile = sorted(s.shape[1] for s in survivors)
            st["stable"] = st["stable"] + 1 if profile == st["profile"] else 0
            st["profile"] = profile
            if not survivors or (st["stable"] >= _STABLE_ROUNDS and samples_used >= _MIN_SAMPLES):
                st["done"] = True

    inconclusive = any(not st["done"] for st in state_by_sector.values())

    rays: list[ProtectedRay] = []
    subspaces: list[ProtectedSubspace] = []
    mirror_full = lift_mirror(basis).matrix
    dim = len(basis)
    for m, idx in sectors.items():
        st = state_by_sector[m]
        if not st["candidates"]:
            continue
        for cand in st["candidates"]:
            if cand.shape[1] == 1:
                amps = np.zeros(dim, dtype=complex)
                amps[idx] = cand[:, 0]
                state = FockState(basis, amps).normalized().phase_fixed()
                report = certify(state, cfg)
                if report.verdict is not Verdict.PROTECTED:
                    continue
                tau = _mirror_parity_of(state, mirror_full) if m == 0 else None
                rays.append(ProtectedRay(state=state, m_tot=m, mirror_tau=tau, report=report))
            else:
                sub = _certify_subspace(basis, idx, cand, m, cfg)
                if sub is not None:
                    subspaces.append(sub)
    rays.sort(key=lambda r: _ray_sort_key(r.state, r.m_tot))
    subspaces.sort(key=lambda s: (-s.m_tot, -s.dimension))
    return SearchResult(
        rays=tuple(rays),
        subspaces=tuple(subspaces),
        verdict=Verdict.INCONCLUSIVE if inconclusive else Verdict.PROTECTED,
        samples_used=samples_used,
        sectors=tuple(sectors),
    )


def _mirror_parity_of(state: FockState, mirror_matrix: np.ndarray, tol: float = 1e-10) -> int | None:
    image = mirror_matrix @ state.amplitudes
    if np.linalg.norm(image - state.amplitudes) < tol:
        return 1
    if np.linalg.norm(image + state.amplitudes) < tol:
        return -1
    return None


def _certify_subspace(basis, idx, cand, m_tot, cfg) -> ProtectedSubspace | None:
    """Scalar-action test of a d > 1 candidate against fresh generic samples."""
    dim = len(basis)
    d = cand.shape[1]
    vectors = np.zeros((dim, d), dtype=complex)
    vectors[idx, :] = cand
    sampler = ScatterSampler(
        seed=cfg.seed, unitary=cfg.unitary, genericity_floor=cfg.genericity_floor
    )
    worst = 0.0
    for _ in range(cfg.n_samples):
        scattering = sampler.sample(basis.space)
        image = lift(scattering.matrix, basis).matrix @ vectors
        lam = np.trace(vectors.conj().T @ image) / d
        worst = max(worst, float(np.linalg.norm(image - lam * vectors)))
        if worst >= cfg.residual_tol:
            return None
    return ProtectedSubspace(basis=basis, vectors=vectors, m_tot=m_tot, worst_residual=worst)


@dataclass(frozen=True)
class UniquenessReport:
    """Search-based uniqueness check of the pair-power ray at even N."""

    ok: bool
    ray_count: int
    overlap: float  # |<found ray | closed-form pair state>|
    coefficients_ok: bool
    samples_used: int


def _expand_pair_operator(pairs: int) -> dict[tuple[int, int, int, int], int]:
    """Integer expansion of (a b - c d)^K by repeated polynomial multiplication.

    Independent oracle for the closed-form coefficients: monomials are
    occupation tuples over the four modes, coefficients exact ints.
    """
    poly: dict[tuple[int, int, int, int], int] = {(0, 0, 0, 0): 1}
    base = {(1, 0, 1, 0): 1, (0, 1, 0, 1): -1}
    for _ in range(pairs):
        out: dict[tuple[int, int, int, int], int] = {}
        for occ1, c1 in poly.items():
            for occ2, c2 in base.items():
                occ = tuple(a + b for a, b in zip(occ1, occ2))
                out[occ] = out.get(occ, 0) + c1 * c2
        poly = out
    return poly


def verify_pair_uniqueness(
    m: int,
    pairs: int,
    cfg: CertificationConfig = CertificationConfig(),
    overlap_tol: float = 1e-9,
) -> UniquenessReport:
    """Check that the zero-angular-momentum sector of hm(m) at N = 2K has
    exactly one protected ray, that it coincides with the closed-form
    pair-power state, and that the closed-form integer coefficients agree
    with a direct polynomial expansion of the pair operator power."""
    if pairs < 1:
        raise ValueError("uniqueness check needs at least one pair")
    result = find_protected(hm(m), 2 * pairs, cfg, sector=0)
    expected = pair_power(m, pairs)
    ray_count = len(result.rays)
    overlap = 0.0
    if ray_count == 1:
        overlap = abs(result.rays[0].state.overlap(expected))

    coeffs = pair_expansion_coefficients(pairs)
    expanded = _expand_pair_operator(pairs)
    coefficients_ok = len(expanded) == pairs + 1 and all(
        expanded.get((pairs - l, l, pairs - l, l), 0) == coeffs[l]
        for l in range(pairs + 1)
    )
    ok = (
        result.verdict is Verdict.PROTECTED
        and ray_count == 1
        and overlap > 1.0 - overlap_tol
        and not result.subspaces
        and coefficients_ok
    )
    return UniquenessReport(
        ok=ok,
        ray_count=ray_count,
        overlap=overlap,
        coefficients_ok=coefficients_ok,
        samples_used=result.samples_used,
    )
