"""
Mode spaces and the symmetric scattering family
===============================================

A cylindrically symmetric scatterer couples photon modes only in very
restricted patterns: the axial pair (m = 0) mixes its two mirror images
through a single (alpha, beta) pair, and each rotating quadruplet
(+-m, +-helicity) splits into two 2x2 blocks that are mirror copies of
each other.  This script builds the spaces, samples matrices from the
family, and checks them against the symmetry generators.
"""

import numpy as np

from symprot import (
    ScatterSampler,
    direct_sum,
    eigen_modes,
    h0,
    hm,
    validate_scattering,
)

np.set_printoptions(precision=4, suppress=True, linewidth=100)

# ---------------------------------------------------------------------------
# the two kinds of building block

axial = h0()
print("axial space:", axial.labels)
print("J_z:\n", axial.jz)
print("mirror:\n", axial.mirror)

rotating = hm(1)
print("\nrotating space (m=1):", rotating.labels)
print("J_z diagonal:", np.diag(rotating.jz))
print("mirror (swaps (m,h) with (-m,-h)):\n", rotating.mirror)

# spaces compose by direct sum as long as the |m| sectors stay distinct
both = direct_sum(axial, rotating)
print("\ncombined space has", len(both), "modes")

# ---------------------------------------------------------------------------
# sampling the symmetric family

sampler = ScatterSampler(seed=7, unitary=True)
S = sampler.sample(axial)
print("\na unitary axial sample (note the equal diagonal / equal off-diagonal):")
print(S.matrix)

report = validate_scattering(S.matrix, axial)
print("commutes with J_z and the mirror?", report.ok)

S4 = ScatterSampler(seed=7, unitary=False).sample(rotating)
print("\na subunitary rotating sample is block diagonal:")
print(np.abs(S4.matrix))
print("the -m block is the flip of the +m block:",
      np.allclose(S4.matrix[2:, 2:], S4.matrix[:2, :2][::-1, ::-1]))

# a matrix outside the family is flagged immediately
bad = np.array([[0.6, 0.3], [-0.3, 0.6]])
print("\nantisymmetric off-diagonal entries violate the mirror:",
      not validate_scattering(bad, axial).ok)

# ---------------------------------------------------------------------------
# eigenmodes

modes = eigen_modes(S)
print("\naxial eigenvalues are alpha +- beta:")
for mode in modes:
    print(f"  tau={mode.mirror_tau:+d}  value={mode.value:.4f}")

modes4 = eigen_modes(S4)
prod = modes4[0].value * modes4[1].value
print("\nrotating eigenvalues multiply to det(S_m):",
      np.isclose(prod, np.linalg.det(S4.block(0))))
