"""
Counting protected rays at higher photon number
===============================================

On the axial pair the protected rays are exactly the mirror-eigenmode
Fock states - N+1 of them at photon number N.  On a rotating quadruplet
the structure is much more rigid: only the "pair" state built from the
determinant-like two-photon singlet survives, and only at even N.
This script runs the exhaustive search and checks both patterns.
"""

import numpy as np

from symprot import (
    CertificationConfig,
    count_mirror_fock,
    count_pair_states,
    find_protected,
    h0,
    hm,
    pair_expansion_coefficients,
    pair_power,
)

cfg = CertificationConfig(n_samples=16, seed=0)

print("axial pair: protected rays by photon number")
print(" N   found   expected (even tau, odd tau)")
for n in range(1, 6):
    result = find_protected(h0(), n, cfg)
    even = sum(1 for r in result.rays if r.mirror_tau == +1)
    odd = sum(1 for r in result.rays if r.mirror_tau == -1)
    exp_even, exp_odd, exp_total = count_mirror_fock(n)
    print(f"  {n}    {len(result.rays)}       {exp_total} ({exp_even}, {exp_odd})"
          f"   match={len(result.rays) == exp_total and even == exp_even}")

print("\nrotating quadruplet (m=1): the search finds")
for n in range(1, 7):
    result = find_protected(hm(1), n, cfg)
    print(f"  N={n}: {len(result.rays)} ray(s)   predicted {count_pair_states(n)}")

# ---------------------------------------------------------------------------
# the unique even-N ray is the K-th power of the two-photon singlet

print("\npair-state expansion coefficients are signed binomials:")
for pairs in range(4):
    print(f"  K={pairs}:", pair_expansion_coefficients(pairs))

state = pair_power(1, 2)
print("\nK=2 amplitudes on the helicity basis (only three terms):")
for occ, amp in zip(state.basis.states, state.amplitudes):
    if abs(amp) > 1e-12:
        print(f"  {occ}: {amp.real:+.6f}")

result = find_protected(hm(1), 4, cfg)
print("\nsearch at N=4 recovers it with overlap",
      f"{abs(result.rays[0].state.overlap(state)):.12f}")
