"""Command-line interface: measures, sweep, twirl, verify.

All commands are deterministic for fixed flags; commands that need
randomness take --seed, falling back to the BINEG_SEED environment variable
and then to a built-in default.  CSV and report output use '.' decimals,
12 significant digits, and LF line endings.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import verify as verify_mod
from .channels import KINDS, SIDEDNESS, ChannelConfig, closed_form_report
from .measures import (
    PPTError,
    binegativity_closed,
    binegativity_spectral,
    concurrence,
    negative_eigvec_state,
    negativity,
)
from .qmat import NEGATIVE_EIG_CUTOFF, ValidationError, hermitian_eigvals, partial_transpose
from .states import load_state_file
from .twirl import monotonicity_experiment

CSV_HEADER = "p,eta,C,N,N2,C_oracle,N_oracle,N2_oracle"


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("BINEG_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValidationError(f"BINEG_SEED must be an integer, got {env!r}") from None
    return verify_mod.DEFAULT_SEED


@dataclass
class SweepGrid:
    """Closed-form and oracle measures over a Cartesian (p, eta) grid."""

    kind: str
    sided: str
    alpha: complex
    p_values: list[float]
    eta_values: list[float]
    paper_literal: bool = False
    rows: list[tuple[float, ...]] = field(default_factory=list)

    @property
    def max_measure_deviation(self) -> float:
        if not self.rows:
            return 0.0
        return max(
            max(abs(row[2] - row[5]), abs(row[3] - row[6]), abs(row[4] - row[7]))
            for row in self.rows
        )


def build_sweep(
    kind: str,
    sided: str,
    alpha: complex,
    p_values,
    eta_values,
    *,
    paper_literal: bool = False,
) -> SweepGrid:
    """Evaluate closed forms and oracle on every grid cell, ordered by (p, eta)."""
    grid = SweepGrid(
        kind=kind,
        sided=sided,
        alpha=complex(alpha),
        p_values=[float(p) for p in p_values],
        eta_values=[float(e) for e in eta_values],
        paper_literal=paper_literal,
    )
    for p in grid.p_values:
        for eta in grid.eta_values:
            report = closed_form_report(
                ChannelConfig(kind, sided, eta), p, grid.alpha, paper_literal=paper_literal
            )
            grid.rows.append(
                (
                    p,
                    eta,
                    report.measures.concurrence,
                    report.measures.negativity,
                    report.measures.binegativity,
                    report.oracle_measures.concurrence,
                    report.oracle_measures.negativity,
                    report.oracle_measures.binegativity,
                )
            )
    return grid


def write_sweep_csv(grid: SweepGrid, path: str | Path) -> None:
    lines = [CSV_HEADER]
    lines.extend(",".join(_fmt(v) for v in row) for row in grid.rows)
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


def cmd_measures(args) -> int:
    rho = load_state_file(args.state_file)
    conc = concurrence(rho, validate=False)
    neg = negativity(rho, validate=False)
    n2_spec = binegativity_spectral(rho, validate=False)
    n2_closed = binegativity_closed(rho, validate=False)
    w = hermitian_eigvals(partial_transpose(rho))
    n_negative = int((w < NEGATIVE_EIG_CUTOFF).sum())
    print(f"state                    = {args.state_file}")
    print(f"concurrence              = {_fmt(conc)}")
    print(f"negativity               = {_fmt(neg)}")
    print(f"binegativity_spectral    = {_fmt(n2_spec)}")
    print(f"binegativity_closed      = {_fmt(n2_closed)}")
    print(f"ppt                      = {'yes' if n_negative == 0 else 'no'}")
    print(f"negative_pt_eigenvalues  = {n_negative}")
    if n_negative > 0:
        psi = negative_eigvec_state(rho, validate=False)
        n_psi = negativity(psi.state, validate=False)
        print(f"negativity_of_rho_psi    = {_fmt(n_psi)}")
        print(f"negative_eigenvalue      = {_fmt(-psi.negative_eigenvalue_magnitude)}")
    else:
        print("negativity_of_rho_psi    = n/a (PPT state)")
    return 0


def cmd_sweep(args) -> int:
    points = np.linspace(0.0, 1.0, args.grid)
    try:
        alpha = complex(args.alpha)
    except ValueError:
        raise ValidationError(f"cannot parse --alpha {args.alpha!r} as a complex number") from None
    grid = build_sweep(
        args.channel, args.sided, alpha, points, points, paper_literal=args.paper_literal
    )
    try:
        write_sweep_csv(grid, args.out)
    except OSError as exc:
        raise ValidationError(f"cannot write {args.out}: {exc}") from None
    print(
        f"wrote {len(grid.rows)} rows to {args.out} "
        f"(max closed-vs-oracle measure deviation {grid.max_measure_deviation:.3e})"
    )
    return 0


def cmd_twirl(args) -> int:
    seed = _resolve_seed(args.seed)
    rng = np.random.default_rng(seed)
    report = monotonicity_experiment(args.states, args.samples, rng)
    print(f"states               = {report.n_states}")
    print(f"ensemble             = {report.ensemble}")
    print(f"samples_per_state    = {args.samples}")
    print(f"seed                 = {seed}")
    print(f"violations           = {report.violations}")
    print(f"worst_margin         = {_fmt(report.worst_margin)}")
    print(f"mc_checked_states    = {len(report.mc_results)}")
    print(f"max_mc_deviation     = {_fmt(report.max_mc_deviation)}")
    return 0 if report.violations == 0 else 1


def cmd_verify(args) -> int:
    seed = _resolve_seed(args.seed)
    return verify_mod.run_verification(
        paper_literal=args.paper_literal, fault=args.inject_fault, seed=seed
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bineg",
        description="Concurrence, negativity, and binegativity of two-qubit states under noise.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_measures = sub.add_parser("measures", help="measures of a state file (JSON)")
    p_measures.add_argument("state_file", help="path to a JSON state file")
    p_measures.set_defaults(func=cmd_measures)

    p_sweep = sub.add_parser("sweep", help="channel sweep over a (p, eta) grid, CSV output")
    p_sweep.add_argument("--channel", required=True, choices=KINDS)
    p_sweep.add_argument("--sided", required=True, choices=SIDEDNESS)
    p_sweep.add_argument("--alpha", default="0.4", help="complex amplitude of |00> (default 0.4)")
    p_sweep.add_argument("--grid", type=int, default=51, help="points per axis (default 51)")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument(
        "--paper-literal",
        action="store_true",
        help="evaluate the published expressions verbatim (misprints included)",
    )
    p_sweep.set_defaults(func=cmd_sweep)

    p_twirl = sub.add_parser("twirl", help="twirling monotonicity experiment")
    p_twirl.add_argument("--states", type=int, required=True, help="number of random states")
    p_twirl.add_argument("--samples", type=int, required=True, help="Monte-Carlo samples per state")
    p_twirl.add_argument("--seed", type=int, default=None, help="RNG seed (default: BINEG_SEED)")
    p_twirl.set_defaults(func=cmd_twirl)

    p_verify = sub.add_parser("verify", help="run every invariant suite")
    p_verify.add_argument("--paper-literal", action="store_true")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument(
        "--inject-fault",
        choices=verify_mod.FAULTS,
        default=None,
        help="test hook: corrupt one suite so verification must fail",
    )
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
