"""Command-line interface.

Subcommands: certify, search, catalog, entangle, dfs, capacity, validate.
Output is canonical JSON (sorted keys, 2-space indent) by default, so runs
with identical arguments are byte-identical; ``--output pretty`` renders a
human-readable summary instead. Seeds default to 0. Exit codes: 0 on
success, 1 when ``--expect protected`` is not met (or a dfs carrier is
refused), 2 on usage errors. The SYMPROT_NMAX environment variable
overrides the photon-number cap.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import serialize
from .dfs import CarrierNotProtectedError, erasure_capacity, time_bin_qudit, transmit
from .entangle import slater_report
from .fock import FockState, enumerate_basis
from .modes import ModeSpace
from .protect import CertificationConfig, Verdict, certify, find_protected
from .scatter import ScatterSampler, SymmetricScattering, validate_scattering
from .states import (
    CATALOG,
    StateRecipe,
    build_state,
    mirror_parity,
    parse_recipe,
)

__all__ = ["main"]


class UsageError(ValueError):
    pass


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _resolve_state(state_arg: str, space_arg: str | None) -> tuple[FockState, str]:
    """A state from a catalog/family name or a JSON file, against an optional space."""
    space = serialize.parse_space(space_arg) if space_arg else None
    if state_arg.startswith("@") or os.path.isfile(state_arg):
        path = state_arg[1:] if state_arg.startswith("@") else state_arg
        try:
            state = serialize.load_state_file(path)
        except FileNotFoundError:
            raise UsageError(f"state file not found: {path}") from None
        except (KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"malformed state file {path}: {exc}") from None
        label = path
    else:
        recipe = parse_recipe(state_arg)
        if recipe.kind == "named" and space is not None and space.kind == "hm":
            recipe = StateRecipe.named(recipe.name, space.m)
        state = build_state(recipe)
        label = state_arg
    if space is not None and state.basis.space != space:
        raise UsageError(
            f"state {label!r} lives on {serialize.space_to_json(state.basis.space)}, "
            f"not on the requested space"
        )
    return state, label


def _emit(payload: dict, pretty_lines, output: str) -> None:
    if output == "json":
        sys.stdout.write(serialize.dumps(payload))
    else:
        sys.stdout.write("\n".join(pretty_lines) + "\n")


def _config_json(cfg: CertificationConfig) -> dict:
    return {
        "n_samples": cfg.n_samples,
        "residual_tol": cfg.residual_tol,
        "cluster_tol": cfg.cluster_tol,
        "seed": cfg.seed,
        "unitary": cfg.unitary,
    }


def _cmd_certify(args) -> int:
    state, label = _resolve_state(args.state, args.space)
    if not state.is_normalized():
        state = state.normalized()
    cfg = CertificationConfig(
        n_samples=args.samples,
        residual_tol=args.tol,
        seed=args.seed,
        unitary=args.unitary,
    )
    report = certify(state, cfg)
    payload = {
        "schema": serialize.SCHEMA_TAG,
        "command": "certify",
        "space": serialize.space_to_json(state.basis.space),
        "n": state.basis.n_photons,
        "state": label,
        "verdict": report.verdict.value,
        "worst_residual": report.worst_residual,
        "eigenvalues": serialize.vector_to_json(report.eigenvalues),
        "witness_sample_index": report.witness_sample_index,
        "config": _config_json(cfg),
    }
    lines = [
        f"state {label}: {report.verdict.value}",
        f"  worst residual over {cfg.n_samples} samples: {report.worst_residual:.3e}",
    ]
    if report.witness_sample_index is not None:
        lines.append(f"  witness sample: {report.witness_sample_index}")
    _emit(payload, lines, args.output)
    if args.expect == "protected" and report.verdict is not Verdict.PROTECTED:
        return 1
    return 0


def _cmd_search(args) -> int:
    space = serialize.parse_space(args.space)
    cfg = CertificationConfig(n_samples=args.samples, seed=args.seed)
    result = find_protected(
        space, args.n, cfg, sector=args.sector, max_samples=args.max_samples
    )
    payload = {
        "schema": serialize.SCHEMA_TAG,
        "command": "search",
        "space": serialize.space_to_json(space),
        "n": args.n,
        "verdict": "inconclusive" if result.verdict is Verdict.INCONCLUSIVE else "protected",
        "samples_used": result.samples_used,
        "sectors": list(result.sectors),
        "rays": [
            {
                "m_tot": ray.m_tot,
                "mirror_tau": ray.mirror_tau,
                "amplitudes": serialize.vector_to_json(ray.state.amplitudes),
                "worst_residual": ray.report.worst_residual,
            }
            for ray in result.rays
        ],
        "subspaces": [
            {"m_tot": sub.m_tot, "dimension": sub.dimension} for sub in result.subspaces
        ],
        "config": _config_json(cfg),
    }
    basis = enumerate_basis(space, args.n)
    lines = [f"{len(result.rays)} protected ray(s) at N = {args.n}"]
    for ray in result.rays:
        tau = "" if ray.mirror_tau is None else f", tau = {ray.mirror_tau:+d}"
        lines.append(f"  m_tot = {ray.m_tot}{tau}:")
        for i, amp in enumerate(ray.state.amplitudes):
            if abs(amp) > 1e-9:
                lines.append(f"    {amp.real:+.6f}{amp.imag:+.6f}j  {basis.ket(i)}")
    for sub in result.subspaces:
        lines.append(f"  subspace dim {sub.dimension} at m_tot = {sub.m_tot}")
    if result.verdict is Verdict.INCONCLUSIVE:
        lines.append(f"inconclusive after {result.samples_used} samples")
    _emit(payload, lines, args.output)
    return 0


def _cmd_catalog(args) -> int:
    names = [args.state] if args.state else list(CATALOG)
    entries = []
    lines = []
    for name in names:
        recipe = StateRecipe.named(name, args.m)
        state = build_state(recipe)
        basis = state.basis
        entries.append(
            {
                "name": name,
                "space": serialize.space_to_json(basis.space),
                "n": basis.n_photons,
                "mirror_tau": mirror_parity(recipe),
                "kets": [basis.ket(i) for i in range(len(basis))],
                "amplitudes": serialize.vector_to_json(state.amplitudes),
            }
        )
        terms = " ".join(
            f"{amp.real:+.4f}{amp.imag:+.4f}j {basis.ket(i)}"
            for i, amp in enumerate(state.amplitudes)
            if abs(amp) > 1e-12
        )
        lines.append(f"{name}  (tau {mirror_parity(recipe):+d}):  {terms}")
    payload = {"schema": serialize.SCHEMA_TAG, "command": "catalog", "states": entries}
    _emit(payload, lines, args.output)
    return 0


def _cmd_entangle(args) -> int:
    state, label = _resolve_state(args.state, args.space)
    if not state.is_normalized():
        state = state.normalized()
    report = slater_report(state, rank_tol=args.rank_tol)
    payload = {
        "schema": serialize.SCHEMA_TAG,
        "command": "entangle",
        "space": serialize.space_to_json(state.basis.space),
        "state": label,
        "takagi_values": [float(v) for v in report.values],
        "slater_rank": report.rank,
        "is_single_product": report.is_single_product,
        "rank_tol": report.rank_tol,
    }
    lines = [
        f"state {label}: slater rank {report.rank}"
        + (" (single two-mode product)" if report.is_single_product else ""),
        "  takagi values: " + ", ".join(f"{v:.6f}" for v in report.values),
    ]
    _emit(payload, lines, args.output)
    return 0


def _cmd_dfs(args) -> int:
    if not 0.0 <= args.loss <= 1.0:
        raise UsageError(f"--loss must lie in [0, 1], got {args.loss}")
    if args.d < 1:
        raise UsageError(f"--d must be at least 1, got {args.d}")
    carrier, label = _resolve_state(args.carrier, None)
    if not carrier.is_normalized():
        carrier = carrier.normalized()
    cfg = CertificationConfig(n_samples=args.samples, seed=args.seed)
    qudit = time_bin_qudit(np.full(args.d, 1.0 / np.sqrt(args.d)), carrier, cfg)
    # one static channel: a unitary symmetric draw scaled so the carrier's
    # success probability is exactly 1 - loss
    sampler = ScatterSampler(seed=args.seed, unitary=True)
    drawn = sampler.sample(carrier.basis.space)
    n = carrier.basis.n_photons
    scale = (1.0 - args.loss) ** (1.0 / (2.0 * n)) if n else 1.0
    channel = SymmetricScattering(
        space=drawn.space, matrix=drawn.matrix * scale, unitary=args.loss == 0.0
    )
    outcome = transmit(qudit, channel)
    csv_path = args.csv
    if csv_path:
        rows = ["epsilon,one_way,two_way"]
        for k in range(101):
            eps = k / 100.0
            rows.append(
                f"{eps:.2f},{erasure_capacity(eps, False)!r},{erasure_capacity(eps, True)!r}"
            )
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(rows) + "\n")
    payload = {
        "schema": serialize.SCHEMA_TAG,
        "command": "dfs",
        "carrier": label,
        "d": args.d,
        "loss": args.loss,
        "seed": args.seed,
        "fidelity": outcome.fidelity,
        "success_probability": outcome.success_probability,
        "eigenvalues": serialize.vector_to_json(outcome.eigenvalues),
        "csv": csv_path,
    }
    lines = [
        f"carrier {label} over {args.d} bins, loss {args.loss}:",
        f"  fidelity            {outcome.fidelity:.12f}",
        f"  success probability {outcome.success_probability:.12f}",
    ]
    if csv_path:
        lines.append(f"  capacity curve written to {csv_path}")
    _emit(payload, lines, args.output)
    return 0


def _cmd_capacity(args) -> int:
    if not 0.0 <= args.eps <= 1.0:
        raise UsageError(f"--eps must lie in [0, 1], got {args.eps}")
    value = erasure_capacity(args.eps, args.two_way)
    payload = {
        "schema": serialize.SCHEMA_TAG,
        "command": "capacity",
        "epsilon": args.eps,
        "two_way": args.two_way,
        "capacity": value,
    }
    _emit(payload, [f"capacity: {value!r}"], args.output)
    return 0


def _cmd_validate(args) -> int:
    space = serialize.parse_space(args.space)
    try:
        with open(args.matrix, encoding="utf-8") as fh:
            import json

            matrix = serialize.matrix_from_json(json.load(fh))
    except FileNotFoundError:
        raise UsageError(f"matrix file not found: {args.matrix}") from None
    except (ValueError, TypeError) as exc:
        raise UsageError(f"malformed matrix file {args.matrix}: {exc}") from None
    try:
        report = validate_scattering(matrix, space, tol=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {
        "schema": serialize.SCHEMA_TAG,
        "command": "validate",
        "space": serialize.space_to_json(space),
        "ok": report.ok,
        "jz_commutator": report.jz_commutator,
        "mirror_commutator": report.mirror_commutator,
        "shape_residual": report.shape_residual,
        "sigma_excess": report.sigma_excess,
        "tol": report.tol,
    }
    lines = [
        f"symmetry compliance: {'ok' if report.ok else 'VIOLATION'}",
        f"  |[S, Jz]|       {report.jz_commutator:.3e}",
        f"  |[S, mirror]|   {report.mirror_commutator:.3e}",
        f"  shape residual  {report.shape_residual:.3e}",
        f"  sigma_max - 1   {report.sigma_excess:.3e}",
    ]
    _emit(payload, lines, args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symprot",
        description="Scattering-protected photonic states: certify, search, and apply them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--output", choices=("json", "pretty"), default="json")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")

    p = sub.add_parser("certify", help="test a state against random symmetric scatterers")
    p.add_argument("--state", required=True, help="catalog name, pair:m=..,N=.., mirrorfock:ns=..,na=.., or a JSON file")
    p.add_argument("--space", help="h0 or hm:<m>; fixes m for named psi states")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-10, help="residual tolerance")
    p.add_argument("--unitary", action="store_true", help="sample unitary instead of subunitary scatterers")
    p.add_argument("--expect", choices=("protected",), help="exit 1 unless this verdict holds")
    common(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("search", help="find all protected rays of an N-photon space")
    p.add_argument("--space", required=True, help="h0, hm:<m>, or a sum like h0+hm:1")
    p.add_argument("--n", type=int, required=True, help="photon number")
    p.add_argument("--sector", type=int, help="restrict to one total-angular-momentum sector")
    p.add_argument("--samples", type=int, default=64, help="certification samples per ray")
    p.add_argument("--max-samples", type=int, default=32, help="search sample cap")
    common(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("catalog", help="list the named two-photon states")
    p.add_argument("--state", choices=CATALOG, help="show a single state")
    p.add_argument("--m", type=int, default=1, help="angular momentum for psi states")
    common(p, seed=False)
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("entangle", help="Takagi values and Slater rank of a two-photon state")
    p.add_argument("--state", required=True)
    p.add_argument("--space", help="h0 or hm:<m>")
    p.add_argument("--rank-tol", type=float, default=1e-10)
    common(p, seed=False)
    p.set_defaults(func=_cmd_entangle)

    p = sub.add_parser("dfs", help="transmit a time-bin qudit through a lossy static scatterer")
    p.add_argument("--carrier", required=True, help="carrier state (name, family recipe, or file)")
    p.add_argument("--d", type=int, default=2, help="number of time bins")
    p.add_argument("--loss", type=float, default=0.0, help="carrier success probability is 1 - loss")
    p.add_argument("--samples", type=int, default=64, help="carrier certification samples")
    p.add_argument("--csv", help="also write the erasure capacity curve (eps 0..1 step 0.01)")
    common(p)
    p.set_defaults(func=_cmd_dfs)

    p = sub.add_parser("capacity", help="erasure channel capacity")
    p.add_argument("--eps", type=float, required=True, help="erasure probability")
    p.add_argument("--two-way", type=_parse_bool, default=False, metavar="BOOL",
                   help="true for two-way classical assistance (default false)")
    common(p, seed=False)
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("validate", help="check a matrix against the symmetric family")
    p.add_argument("--space", required=True)
    p.add_argument("--matrix", required=True, help="JSON file: row-major nested [re, im] pairs")
    p.add_argument("--tol", type=float, default=1e-12)
    common(p, seed=False)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"symprot: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"symprot: {exc}", file=sys.stderr)
        return 2
    except CarrierNotProtectedError as exc:
        print(f"symprot: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
