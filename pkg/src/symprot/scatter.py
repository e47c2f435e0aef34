"""Scattering matrices compatible with the cylindrical symmetry.

A matrix commutes with the rotation generator and the mirror iff it has the
block shape

* on the m = 0 doublet:  [[a, b], [b, a]];
* on a four-mode family: block-diag(S_m, S_-m) with S_-m = X S_m X, where X
  swaps the two helicities within a block;
* on a direct sum: one such block per component.

``ScatterSampler`` draws random members of the family (Haar-unitary or
subunitary) with a genericity floor on the block determinant and on the
eigenvalue gap, so that downstream eigenspace searches see well-separated
spectra. Streams are deterministic in the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .modes import ModeSpace

__all__ = [
    "SymmetricScattering",
    "ScatterSampler",
    "ValidationReport",
    "GenericityError",
    "validate_scattering",
    "eigen_modes",
    "EigenMode",
]


class GenericityError(RuntimeError):
    """Raised when the sampler cannot reach the genericity floor."""


@dataclass(frozen=True)
class SymmetricScattering:
    """A scattering matrix together with its mode space and unitarity class."""

    space: ModeSpace
    matrix: np.ndarray
    unitary: bool

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        m = len(self.space)
        if mat.shape != (m, m):
            raise ValueError(f"matrix must be {m}x{m}, got {mat.shape}")
        object.__setattr__(self, "matrix", mat)

    def block(self, component: int = 0) -> np.ndarray:
        """The 2x2 positive-m block of a component (the full matrix on h0)."""
        offset = 0
        comps = self.space.components if self.space.kind == "sum" else (self.space,)
        for i, sp in enumerate(comps):
            if i == component:
                # full matrix on h0; top-left (positive-m) 2x2 block on hm
                return self.matrix[offset : offset + 2, offset : offset + 2]
            offset += len(sp)
        raise ValueError(f"no component {component}")


def _commutant_projection(matrix: np.ndarray, space: ModeSpace) -> np.ndarray:
    """Orthogonal projection onto matrices commuting with Jz and the mirror."""
    jz = np.diag(space.jz)
    mask = jz[:, None] == jz[None, :]
    masked = np.where(mask, matrix, 0.0)
    mir = space.mirror
    return 0.5 * (masked + mir @ masked @ mir)


@dataclass(frozen=True)
class ValidationReport:
    """Frobenius-norm diagnostics of symmetry compliance."""

    jz_commutator: float
    mirror_commutator: float
    shape_residual: float
    sigma_excess: float
    tol: float

    @property
    def ok(self) -> bool:
        return (
            self.jz_commutator < self.tol
            and self.mirror_commutator < self.tol
            and self.shape_residual < self.tol
            and self.sigma_excess <= self.tol
        )


def validate_scattering(matrix: np.ndarray, space: ModeSpace, tol: float = 1e-12) -> ValidationReport:
    """Check a matrix against the symmetric family on a mode space."""
    a = np.asarray(matrix, dtype=complex)
    m = len(space)
    if a.shape != (m, m):
        raise ValueError(f"matrix must be {m}x{m}, got {a.shape}")
    jz, mir = space.jz, space.mirror
    jz_comm = float(np.linalg.norm(a @ jz - jz @ a))
    mir_comm = float(np.linalg.norm(a @ mir - mir @ a))
    shape_res = float(np.linalg.norm(a - _commutant_projection(a, space)))
    sigma_excess = float(np.linalg.norm(a, 2) - 1.0)
    return ValidationReport(jz_comm, mir_comm, shape_res, sigma_excess, tol)


@dataclass
class ScatterSampler:
    """Seeded random source of symmetric scattering matrices.

    Two samplers built from the same seed produce identical streams; repeated
    ``sample`` calls on one sampler walk the stream. Draws failing the
    genericity floor (block determinant or eigenvalue gap too small) are
    rejected and redrawn, up to ``max_attempts``.
    """

    seed: int = 0
    unitary: bool = True
    genericity_floor: float = 1e-3
    max_attempts: int = 100
    _rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if not 0.0 < self.genericity_floor < 1.0:
            raise ValueError("genericity_floor must lie in (0, 1)")
        self._rng = np.random.default_rng(self.seed)

    def clone(self, seed: int) -> "ScatterSampler":
        """Independent sampler with a different seed, same configuration."""
        return ScatterSampler(
            seed=seed,
            unitary=self.unitary,
            genericity_floor=self.genericity_floor,
            max_attempts=self.max_attempts,
        )

    def sample(self, space: ModeSpace) -> SymmetricScattering:
        """Draw one generic member of the symmetric family on ``space``."""
        comps = space.components if space.kind == "sum" else (space,)
        blocks = [self._sample_block(sp) for sp in comps]
        mat = _assemble(space, comps, blocks)
        return SymmetricScattering(space=space, matrix=mat, unitary=self.unitary)

    # -- internals ---------------------------------------------------------

    def _sample_block(self, space: ModeSpace) -> np.ndarray:
        floor = self.genericity_floor
        for _ in range(self.max_attempts):
            if space.kind == "h0":
                if self.unitary:
                    th1, th2 = self._rng.uniform(0.0, 2.0 * math.pi, size=2)
                    s_plus, s_minus = np.exp(1j * th1), np.exp(1j * th2)
                    alpha, beta = (s_plus + s_minus) / 2.0, (s_plus - s_minus) / 2.0
                else:
                    alpha, beta = self._gaussian(2)
                block = np.array([[alpha, beta], [beta, alpha]])
            else:
                if self.unitary:
                    block = self._haar_2x2()
                else:
                    block = self._gaussian(4).reshape(2, 2)
            if not self.unitary:
                smax = float(np.linalg.norm(block, 2))
                r = self._rng.uniform(floor, 1.0)
                block = block * (r / smax)
            evals = np.linalg.eigvals(block)
            if abs(np.linalg.det(block)) > floor and abs(evals[0] - evals[1]) > floor:
                return block
        raise GenericityError(
            f"no generic sample within {self.max_attempts} attempts (floor {floor})"
        )

    def _gaussian(self, n: int) -> np.ndarray:
        z = self._rng.standard_normal(2 * n)
        return (z[:n] + 1j * z[n:]) / math.sqrt(2.0)

    def _haar_2x2(self) -> np.ndarray:
        z = self._gaussian(4).reshape(2, 2)
        q, r = np.linalg.qr(z)
        # fix the QR phase ambiguity so q is Haar distributed
        return q * (np.diag(r) / np.abs(np.diag(r)))[None, :]


_FLIP = np.array([[0.0, 1.0], [1.0, 0.0]])


def _assemble(space: ModeSpace, comps, blocks) -> np.ndarray:
    m = len(space)
    mat = np.zeros((m, m), dtype=complex)
    offset = 0
    for sp, block in zip(comps, blocks):
        if sp.kind == "h0":
            mat[offset : offset + 2, offset : offset + 2] = block
            offset += 2
        else:
            mat[offset : offset + 2, offset : offset + 2] = block
            mat[offset + 2 : offset + 4, offset + 2 : offset + 4] = _FLIP @ block @ _FLIP
            offset += 4
    return mat


@dataclass(frozen=True)
class EigenMode:
    """One eigenvalue of the symmetric family with its single-particle eigenvectors."""

    value: complex
    vectors: np.ndarray  # (M, k) orthonormal columns in the full mode space
    mirror_tau: int | None = None  # mirror parity, m = 0 family only


def eigen_modes(scattering: SymmetricScattering, gap_floor: float = 1e-12) -> list[EigenMode]:
    """Eigenvalues and eigenvectors of a symmetric scattering matrix.

    On the m = 0 doublet the eigenvectors are the fixed mirror eigenvectors
    (1, 1)/sqrt(2) and (1, -1)/sqrt(2) with eigenvalues a + b and a - b. On a
    four-mode family each eigenvalue of the positive-m block appears twice,
    with the negative-m eigenvector obtained by swapping helicities. Entries
    are sorted by descending real part, then descending imaginary part.
    """
    space = scattering.space
    if space.kind == "sum":
        raise ValueError("eigen_modes acts on a single h0/hm family")
    a = scattering.matrix
    if space.kind == "h0":
        alpha, beta = a[0, 0], a[0, 1]
        if abs(2.0 * beta) <= gap_floor:
            raise ValueError("degenerate eigenvalues: |s+ - s-| below the gap floor")
        inv = 1.0 / math.sqrt(2.0)
        modes = [
            EigenMode(alpha + beta, np.array([[inv], [inv]], dtype=complex), mirror_tau=1),
            EigenMode(alpha - beta, np.array([[inv], [-inv]], dtype=complex), mirror_tau=-1),
        ]
    else:
        block = a[:2, :2]
        evals, evecs = np.linalg.eig(block)
        if abs(evals[0] - evals[1]) <= gap_floor:
            raise ValueError("degenerate eigenvalues: |nu+ - nu-| below the gap floor")
        modes = []
        for k in range(2):
            v = evecs[:, k] / np.linalg.norm(evecs[:, k])
            up = np.zeros((4, 1), dtype=complex)
            up[:2, 0] = v
            down = np.zeros((4, 1), dtype=complex)
            down[2:, 0] = _FLIP @ v  # helicity-swapped partner in the -m block
            modes.append(EigenMode(evals[k], np.hstack([up, down])))
    modes.sort(key=lambda em: (-em.value.real, -em.value.imag))
    return modes
