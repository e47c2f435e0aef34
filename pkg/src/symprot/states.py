"""Named multiphoton states and the protected-state families.

Two closed-form families matter:

* mirror Fock states |n_s, n_a>' on the m = 0 doublet, built by applying the
  symmetric/antisymmetric mode operators (a+ +- a-)/sqrt(2) to the vacuum;
  mirror parity (-1)^n_a;
* pair-power states on a four-mode family, the K-th power of
  (a_{m,+} a_{-m,+} - a_{m,-} a_{-m,-}) applied to the vacuum (photon number
  N = 2K, total angular momentum 0, mirror parity (-1)^K).

Both constructions carry exact integer coefficients up to the final
normalization. A small named catalog covers the two-photon states used
throughout (phi1..phi3, s1, s2 on the doublet; psi1..psi4 on a four-mode
family).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .fock import FockState, enumerate_basis, state_from_amplitudes
from .modes import ModeSpace, direct_sum, h0, hm

__all__ = [
    "StateRecipe",
    "mirror_fock",
    "pair_power",
    "pair_expansion_coefficients",
    "named_state",
    "product_state",
    "build_state",
    "parse_recipe",
    "mirror_parity",
    "count_mirror_fock",
    "count_pair_states",
    "CATALOG",
]

_SQRT2 = math.sqrt(2.0)

# name -> (family, amplitude map, mirror parity); occupations use the
# canonical mode order of h0 / hm
_H0_CATALOG = {
    "phi1": ({(1, 1): 1.0}, 1),
    "phi2": ({(2, 0): 1 / _SQRT2, (0, 2): 1 / _SQRT2}, 1),
    "phi3": ({(2, 0): 1 / _SQRT2, (0, 2): -1 / _SQRT2}, -1),
    "s1": ({(2, 0): 0.5, (1, 1): 1 / _SQRT2, (0, 2): 0.5}, 1),
    "s2": ({(2, 0): 0.5, (1, 1): -1 / _SQRT2, (0, 2): 0.5}, 1),
}
_HM_CATALOG = {
    "psi1": ({(1, 0, 0, 1): 1.0}, 1),
    "psi2": ({(0, 1, 1, 0): 1.0}, 1),
    "psi3": ({(1, 0, 1, 0): 1 / _SQRT2, (0, 1, 0, 1): 1 / _SQRT2}, 1),
    "psi4": ({(1, 0, 1, 0): 1 / _SQRT2, (0, 1, 0, 1): -1 / _SQRT2}, -1),
}
CATALOG = tuple(_H0_CATALOG) + tuple(_HM_CATALOG)


def mirror_fock(n_sym: int, n_anti: int) -> FockState:
    """Mirror Fock state |n_s, n_a>' on the m = 0 doublet.

    Coefficients are expanded in exact integer arithmetic; floats enter only
    at the final normalization. Mirror parity is (-1)^n_anti.
    """
    if n_sym < 0 or n_anti < 0:
        raise ValueError("occupation numbers must be non-negative")
    n = n_sym + n_anti
    basis = enumerate_basis(h0(), n)
    amp = np.zeros(len(basis), dtype=complex)
    for p in range(n + 1):
        # coefficient of (a+)^p (a-)^(n-p) in (a+ + a-)^n_sym (a+ - a-)^n_anti
        g = sum(
            math.comb(n_sym, p - j) * math.comb(n_anti, j) * (-1) ** (n_anti - j)
            for j in range(max(0, p - n_sym), min(n_anti, p) + 1)
        )
        amp[basis.index((p, n - p))] = g * math.sqrt(
            math.factorial(p) * math.factorial(n - p)
        )
    return FockState(basis, amp).normalized()


def pair_expansion_coefficients(pairs: int) -> list[int]:
    """Integer coefficients x_l = (-1)^l C(K, l) of the pair-power expansion.

    x_l multiplies the operator monomial with l photons in each of the two
    negative-helicity modes, K - l in each positive-helicity mode.
    """
    if pairs < 0:
        raise ValueError("pairs must be non-negative")
    return [(-1) ** l * math.comb(pairs, l) for l in range(pairs + 1)]


def pair_power(m: int, pairs: int) -> FockState:
    """K-th power of the helicity-paired two-photon operator on hm(m).

    The state (a_{m,+} a_{-m,+} - a_{m,-} a_{-m,-})^K |0>, normalized; photon
    number 2K, total angular momentum 0, mirror parity (-1)^K. Fock
    amplitudes are uniform in magnitude with alternating sign.
    """
    if pairs < 0:
        raise ValueError("pairs must be non-negative")
    basis = enumerate_basis(hm(m), 2 * pairs)
    coeffs = pair_expansion_coefficients(pairs)
    amp = np.zeros(len(basis), dtype=complex)
    for l, x_l in enumerate(coeffs):
        k = pairs - l
        # exact integer amplitude x_l * (K-l)! * l! = (-1)^l K!
        amp[basis.index((k, l, k, l))] = x_l * math.factorial(k) * math.factorial(l)
    return FockState(basis, amp).normalized()


def named_state(name: str, m: int = 1) -> FockState:
    """A catalog state by name; psi states take the angular momentum ``m``."""
    if name in _H0_CATALOG:
        mapping, _ = _H0_CATALOG[name]
        return state_from_amplitudes(enumerate_basis(h0(), 2), mapping)
    if name in _HM_CATALOG:
        mapping, _ = _HM_CATALOG[name]
        return state_from_amplitudes(enumerate_basis(hm(m), 2), mapping)
    raise ValueError(f"unknown state name {name!r}; catalog: {', '.join(CATALOG)}")


def product_state(factors) -> FockState:
    """Product of states on disjoint families, on their direct-sum space.

    The amplitude of a concatenated occupation vector is the product of the
    factor amplitudes; occupations that split photons differently across the
    factors vanish.
    """
    factors = list(factors)
    if not factors:
        raise ValueError("product_state needs at least one factor")
    if len(factors) == 1:
        return FockState(factors[0].basis, factors[0].amplitudes.copy())
    space = direct_sum(*(f.basis.space for f in factors))
    n = sum(f.basis.n_photons for f in factors)
    basis = enumerate_basis(space, n)
    amp = np.zeros(len(basis), dtype=complex)
    supports = [np.flatnonzero(np.abs(f.amplitudes) > 0.0) for f in factors]
    for combo in itertools.product(*supports):
        occ = tuple(
            k
            for f, i in zip(factors, combo)
            for k in f.basis.states[i]
        )
        value = math.prod((f.amplitudes[i] for f, i in zip(factors, combo)), start=1.0 + 0j)
        amp[basis.index(occ)] = value
    return FockState(basis, amp)


@dataclass(frozen=True)
class StateRecipe:
    """A declarative description of a catalog or family state."""

    kind: str  # "mirrorfock" | "pair" | "named" | "product"
    n_sym: int = 0
    n_anti: int = 0
    m: int = 1
    pairs: int = 0
    name: str = ""
    factors: tuple["StateRecipe", ...] = ()

    @classmethod
    def mirror_fock(cls, n_sym: int, n_anti: int) -> "StateRecipe":
        return cls(kind="mirrorfock", n_sym=n_sym, n_anti=n_anti)

    @classmethod
    def pair_power(cls, m: int, pairs: int) -> "StateRecipe":
        return cls(kind="pair", m=m, pairs=pairs)

    @classmethod
    def named(cls, name: str, m: int = 1) -> "StateRecipe":
        return cls(kind="named", name=name, m=m)

    @classmethod
    def product(cls, *factors: "StateRecipe") -> "StateRecipe":
        return cls(kind="product", factors=tuple(factors))


def build_state(recipe: StateRecipe) -> FockState:
    """Materialize a recipe as a normalized Fock state."""
    if recipe.kind == "mirrorfock":
        return mirror_fock(recipe.n_sym, recipe.n_anti)
    if recipe.kind == "pair":
        return pair_power(recipe.m, recipe.pairs)
    if recipe.kind == "named":
        return named_state(recipe.name, recipe.m)
    if recipe.kind == "product":
        return product_state([build_state(f) for f in recipe.factors])
    raise ValueError(f"unknown recipe kind {recipe.kind!r}")


def mirror_parity(recipe: StateRecipe) -> int:
    """Mirror eigenvalue of the recipe's state: +1 or -1."""
    if recipe.kind == "mirrorfock":
        return -1 if recipe.n_anti % 2 else 1
    if recipe.kind == "pair":
        return -1 if recipe.pairs % 2 else 1
    if recipe.kind == "named":
        for catalog in (_H0_CATALOG, _HM_CATALOG):
            if recipe.name in catalog:
                return catalog[recipe.name][1]
        raise ValueError(f"unknown state name {recipe.name!r}")
    if recipe.kind == "product":
        return math.prod(mirror_parity(f) for f in recipe.factors)
    raise ValueError(f"unknown recipe kind {recipe.kind!r}")


def count_mirror_fock(n: int) -> tuple[int, int, int]:
    """(symmetric, antisymmetric, total) protected-ray counts on the doublet.

    For N photons there are N + 1 mirror Fock rays; n_anti even gives parity
    +1, so the split is (N//2 + 1, (N+1)//2, N+1).
    """
    if n < 0:
        raise ValueError("photon number must be non-negative")
    return (n // 2 + 1, (n + 1) // 2, n + 1)


def count_pair_states(n: int) -> int:
    """Protected-ray count on a four-mode family: 1 for even N, else 0."""
    if n < 0:
        raise ValueError("photon number must be non-negative")
    return 1 if n % 2 == 0 else 0


def parse_recipe(text: str) -> StateRecipe:
    """Parse CLI state syntax: ``phi3``, ``pair:m=1,N=4``, ``mirrorfock:ns=2,na=1``."""
    head, _, tail = text.partition(":")
    head = head.strip().lower()
    params: dict[str, int] = {}
    if tail:
        for part in tail.split(","):
            key, eq, value = part.partition("=")
            if not eq:
                raise ValueError(f"malformed recipe parameter {part!r} in {text!r}")
            try:
                params[key.strip().lower()] = int(value)
            except ValueError:
                raise ValueError(f"recipe parameter {key!r} must be an integer") from None
    if head == "pair":
        if set(params) != {"m", "n"}:
            raise ValueError("pair recipe needs m and N, e.g. pair:m=1,N=4")
        if params["n"] % 2 or params["n"] < 0:
            raise ValueError(f"pair recipe needs even N >= 0, got N={params['n']}")
        return StateRecipe.pair_power(params["m"], params["n"] // 2)
    if head == "mirrorfock":
        if set(params) != {"ns", "na"}:
            raise ValueError("mirrorfock recipe needs ns and na, e.g. mirrorfock:ns=2,na=1")
        return StateRecipe.mirror_fock(params["ns"], params["na"])
    if head in CATALOG:
        if set(params) - {"m"}:
            raise ValueError(f"named state {head!r} accepts only an m parameter")
        return StateRecipe.named(head, params.get("m", 1))
    raise ValueError(f"unknown state {text!r}; names: {', '.join(CATALOG)}, pair:..., mirrorfock:...")
