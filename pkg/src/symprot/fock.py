"""Fixed-photon-number Fock bases and second-quantized lifts.

The N-photon basis over M modes is the set of occupation vectors summing to
N, listed in lexicographically decreasing order; the order is part of the
serialization contract (see schemas/fock_state.schema.json). Lifting a
single-particle matrix S to the N-photon space uses the permanent formula

    <n'| lift(S) |n> = Per(S[n', n]) / sqrt(prod_i n_i! * prod_j n'_j!)

where S[n', n] repeats column j of S n_j times and row i n'_i times.
Permanents are evaluated with Ryser's formula in Gray-code order; the subset
sum is accumulated sequentially per permanent, with vectorization only across
independent matrix elements.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .modes import ModeSpace

__all__ = [
    "DEFAULT_N_MAX",
    "max_photons",
    "FockBasis",
    "FockState",
    "LiftedOperator",
    "enumerate_basis",
    "sector_split",
    "state_from_amplitudes",
    "permanent_ryser",
    "permanent_naive",
    "lift",
    "lift_jz",
    "lift_mirror",
    "postselect_projector",
]

DEFAULT_N_MAX = 10
_N_MAX_ENV = "SYMPROT_NMAX"


def max_photons() -> int:
    """Photon-number cap for basis enumeration; SYMPROT_NMAX overrides."""
    raw = os.environ.get(_N_MAX_ENV)
    if raw is None:
        return DEFAULT_N_MAX
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_N_MAX_ENV} must be an integer, got {raw!r}") from exc
    if value < 0:
        raise ValueError(f"{_N_MAX_ENV} must be non-negative, got {value}")
    return value


def _occupations(modes: int, total: int):
    """Occupation vectors of `total` photons in `modes` modes, lexicographically decreasing."""
    if modes == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _occupations(modes - 1, total - first):
            yield (first,) + rest


@dataclass(frozen=True, eq=False)
class FockBasis:
    """Ordered N-photon occupation basis over a mode space."""

    space: ModeSpace
    n_photons: int
    states: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.states)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FockBasis)
            and self.space == other.space
            and self.n_photons == other.n_photons
        )

    def __hash__(self) -> int:
        return hash((self.space, self.n_photons))

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {occ: i for i, occ in enumerate(self.states)}

    def index(self, occupation) -> int:
        """Position of an occupation vector in the basis order."""
        occ = tuple(int(k) for k in occupation)
        try:
            return self._index[occ]
        except KeyError:
            raise ValueError(f"{occ} is not a {self.n_photons}-photon occupation of this space") from None

    @cached_property
    def m_totals(self) -> np.ndarray:
        """Total angular momentum sum_i n_i m_i per basis state (integers)."""
        ms = np.array([lab.m for lab in self.space.labels])
        return np.array([int(np.dot(occ, ms)) for occ in self.states])

    @cached_property
    def _norms(self) -> np.ndarray:
        # sqrt(prod_i n_i!) per basis state
        return np.array(
            [math.sqrt(math.prod(math.factorial(k) for k in occ)) for occ in self.states]
        )

    def ket(self, i: int) -> str:
        """Render basis state i in ket notation, e.g. ``|1,0,0,1>``."""
        return "|" + ",".join(str(k) for k in self.states[i]) + ">"


def enumerate_basis(space: ModeSpace, n_photons: int) -> FockBasis:
    """The N-photon basis of a mode space in the canonical order."""
    cap = max_photons()
    if not 0 <= n_photons <= cap:
        raise ValueError(f"n_photons must lie in [0, {cap}], got {n_photons}")
    states = tuple(_occupations(len(space), n_photons))
    return FockBasis(space=space, n_photons=n_photons, states=states)


def sector_split(basis: FockBasis) -> dict[int, list[int]]:
    """Basis indices grouped by total angular momentum, descending in m_tot."""
    out: dict[int, list[int]] = {}
    for i, m in enumerate(basis.m_totals):
        out.setdefault(int(m), []).append(i)
    return {m: out[m] for m in sorted(out, reverse=True)}


@dataclass
class FockState:
    """Amplitude vector over a Fock basis."""

    basis: FockBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (len(self.basis),):
            raise ValueError(
                f"amplitudes must have shape ({len(self.basis)},), got {amp.shape}"
            )
        self.amplitudes = amp

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self.norm - 1.0) <= tol

    def normalized(self) -> "FockState":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize the zero state")
        return FockState(self.basis, self.amplitudes / n)

    def overlap(self, other: "FockState") -> complex:
        """Inner product <self|other> (conjugate-linear in self)."""
        if self.basis != other.basis:
            raise ValueError("states live on different bases")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def phase_fixed(self, threshold: float = 1e-10) -> "FockState":
        """Rotate the global phase so the first significant amplitude is real positive."""
        idx = np.flatnonzero(np.abs(self.amplitudes) > threshold)
        if idx.size == 0:
            return FockState(self.basis, self.amplitudes.copy())
        lead = self.amplitudes[idx[0]]
        return FockState(self.basis, self.amplitudes * (abs(lead) / lead))


def state_from_amplitudes(basis: FockBasis, mapping) -> FockState:
    """Build a state from an {occupation: amplitude} mapping (unlisted entries are 0)."""
    amp = np.zeros(len(basis), dtype=complex)
    for occ, value in mapping.items():
        amp[basis.index(occ)] = value
    return FockState(basis, amp)


def permanent_ryser(matrix: np.ndarray) -> complex:
    """Permanent of a square matrix via Ryser's formula with Gray-code updates.

    O(2^n * n); subset terms are accumulated in Gray-code order, which is the
    reference summation order for reproducibility.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    row_sums = np.zeros(n, dtype=complex)
    total = 0.0 + 0.0j
    gray = 0
    popcount = 0
    for k in range(1, 1 << n):
        bit = k & -k
        j = bit.bit_length() - 1
        if gray & bit:
            row_sums -= a[:, j]
            popcount -= 1
        else:
            row_sums += a[:, j]
            popcount += 1
        gray ^= bit
        term = complex(np.prod(row_sums))
        total += term if (n - popcount) % 2 == 0 else -term
    return total


def permanent_naive(matrix: np.ndarray) -> complex:
    """Permanent by the Leibniz sum over permutations; oracle for small n."""
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    total = 0.0 + 0.0j
    rows = range(n)
    for perm in itertools.permutations(range(n)):
        prod = 1.0 + 0.0j
        for i in rows:
            prod *= a[i, perm[i]]
        total += prod
    return total


def _ryser_batch(batch: np.ndarray) -> np.ndarray:
    """Permanents of a stack of same-size square matrices, shape (P, n, n).

    Same Gray-code term order as permanent_ryser within each permanent; the
    batch dimension only evaluates independent permanents side by side.
    """
    p, n, _ = batch.shape
    if n == 0:
        return np.ones(p, dtype=complex)
    row_sums = np.zeros((p, n), dtype=complex)
    total = np.zeros(p, dtype=complex)
    gray = 0
    popcount = 0
    for k in range(1, 1 << n):
        bit = k & -k
        j = bit.bit_length() - 1
        if gray & bit:
            row_sums -= batch[:, :, j]
            popcount -= 1
        else:
            row_sums += batch[:, :, j]
            popcount += 1
        gray ^= bit
        term = np.prod(row_sums, axis=1)
        if (n - popcount) % 2 == 0:
            total += term
        else:
            total -= term
    return total


@dataclass(frozen=True)
class LiftedOperator:
    """A single-particle matrix lifted to an N-photon basis."""

    basis: FockBasis
    matrix: np.ndarray

    def apply(self, state: FockState) -> FockState:
        if state.basis != self.basis:
            raise ValueError("state and operator bases differ")
        return FockState(self.basis, self.matrix @ state.amplitudes)


# cap on the temporary (rows x cols_chunk, N, N) submatrix stack, in complex entries
_LIFT_CHUNK_ENTRIES = 1 << 21


def lift(matrix: np.ndarray, basis: FockBasis) -> LiftedOperator:
    """Second-quantize a single-particle matrix on the given N-photon basis.

    Works for arbitrary complex M x M matrices (no symmetry or unitarity
    assumed); lift(A @ B) = lift(A) @ lift(B) and lift(I) = I.
    """
    a = np.asarray(matrix, dtype=complex)
    m = len(basis.space)
    if a.shape != (m, m):
        raise ValueError(f"matrix must be {m}x{m} for this space, got {a.shape}")
    dim = len(basis)
    n = basis.n_photons
    if n == 0:
        return LiftedOperator(basis, np.ones((1, 1), dtype=complex))

    # reps[i] lists each mode index occ[j] times; row/column repetition pattern
    reps = np.array(
        [np.repeat(np.arange(m), occ) for occ in basis.states], dtype=np.intp
    )
    norms = basis._norms
    out = np.empty((dim, dim), dtype=complex)
    chunk = max(1, _LIFT_CHUNK_ENTRIES // (dim * n * n))
    for start in range(0, dim, chunk):
        cols = np.arange(start, min(start + chunk, dim))
        # sub[r, c, i, j] = a[reps[r][i], reps[col][j]]
        sub = a[reps[:, None, :, None], reps[cols][None, :, None, :]]
        perms = _ryser_batch(sub.reshape(-1, n, n)).reshape(dim, cols.size)
        out[:, cols] = perms / (norms[:, None] * norms[cols][None, :])
    return LiftedOperator(basis, out)


def lift_jz(basis: FockBasis) -> LiftedOperator:
    """Lift of the rotation generator: diagonal of total angular momenta."""
    return LiftedOperator(basis, np.diag(basis.m_totals.astype(complex)))


def lift_mirror(basis: FockBasis) -> LiftedOperator:
    """Lift of the mirror: the exact 0/1 permutation of occupation vectors."""
    perm = basis.space.mirror_permutation
    dim = len(basis)
    out = np.zeros((dim, dim), dtype=complex)
    for col, occ in enumerate(basis.states):
        image = [0] * len(occ)
        for j, cnt in enumerate(occ):
            image[perm[j]] = cnt
        out[basis.index(image), col] = 1.0
    return LiftedOperator(basis, out)


def postselect_projector(basis: FockBasis, keep, n_photons: int | None = None) -> LiftedOperator:
    """Diagonal projector onto occupation vectors with ``n_photons`` in ``keep``.

    With the default n_photons = basis.n_photons this keeps exactly the states
    fully supported on the kept modes.
    """
    keep_set = {int(i) for i in keep}
    if not keep_set and basis.n_photons > 0:
        raise ValueError("empty mode set cannot hold photons")
    if not all(0 <= i < len(basis.space) for i in keep_set):
        raise ValueError(f"mode indices must lie in [0, {len(basis.space)})")
    if n_photons is None:
        n_photons = basis.n_photons
    diag = np.array(
        [1.0 if sum(occ[i] for i in keep_set) == n_photons else 0.0 for occ in basis.states],
        dtype=complex,
    )
    return LiftedOperator(basis, np.diag(diag))
