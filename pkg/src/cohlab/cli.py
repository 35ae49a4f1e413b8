"""Command-line surface: monotone reports, Grover sweeps, conversion, verify.

Four subcommands over the library with a stable exit-code contract: 0 on
success, 1 when a verification suite reports violations, 2 for usage or IO
errors. All randomness flows from --seed, so identical invocations produce
byte-identical output files; files are written to a temp path and moved into
place with os.replace so readers never observe a partial write.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .coherence import coherence_report
from .conversion import conversion_unitary, theorem2_chain, theorem3_verify
from .convex_roof import RoofOptions
from .entanglement import concurrence_roof_profile, maclaurin_chain
from .errors import ArgumentError, ValidationError
from .grover import (
    GroverParams,
    dense_trajectory,
    statevector_deviation,
    trajectory,
    trajectory_csv_text,
)
from .states import PureState, as_density, incoherent_channel, load_state
from .suites import run_suite

ESTIMATE_FLAG = "estimate (upper bound)"
EXACT_FLAG = "exact"


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as f:
        f.write(text)
    os.replace(tmp, path)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _cli_options(seed: int) -> RoofOptions:
    # moderate search budget: deterministic, snappy on d <= 4 inputs
    return RoofOptions(restarts=4, explore_steps=150, polish_iters=80, seed=seed)


def _square_side(dim: int) -> int | None:
    side = int(round(math.sqrt(dim)))
    return side if side >= 2 and side * side == dim else None


def cmd_monotones(args) -> int:
    state = load_state(args.state_file)
    report = coherence_report(state, options=_cli_options(args.seed))
    coh = report.to_json()
    coh["flags"] = {
        k: (ESTIMATE_FLAG if v else EXACT_FLAG)
        for k, v in report.is_estimate.items()
    }
    if args.log2:
        coh["log2_rank_or_number"] = math.log2(report.rank_or_number)
    payload = {"coherence": coh, "concurrence": None}
    side = _square_side(report.dim)
    if side is None:
        payload["concurrence_note"] = (
            "dimension is not a perfect square; no bipartite split"
        )
    else:
        pure_vec = None
        if isinstance(state, PureState):
            pure_vec = state.amplitudes
        else:
            w, v = np.linalg.eigh(as_density(state).matrix)
            if float(np.sum(np.abs(w[:-1]))) <= 1e-10:
                pure_vec = v[:, -1]
        if pure_vec is not None:
            rep = maclaurin_chain(pure_vec)
            payload["concurrence"] = {**rep.to_json(), "flag": EXACT_FLAG}
        else:
            prof = concurrence_roof_profile(
                as_density(state), d=side, options=_cli_options(args.seed))
            payload["concurrence"] = {
                "k_values": {str(k): prof[k].value for k in sorted(prof)},
                "flag": ESTIMATE_FLAG,
            }
    _write_output(_json_text(payload), args.out)
    return 0


def cmd_grover(args) -> int:
    params = GroverParams(args.N, args.m)
    points = (dense_trajectory(params, 200) if args.dense
              else trajectory(params, args.r_max))
    extras = []
    if args.statevector_check:
        n_qubits = args.N.bit_length() - 1
        if args.N != 1 << n_qubits or args.N > 4096:
            raise ArgumentError(
                "--statevector-check needs N = 2^n with N <= 4096")
        targets = list(range(args.m))
        devs = [
            statevector_deviation(n_qubits, targets, int(pt.r))
            if float(pt.r).is_integer() else None
            for pt in points
        ]
        extras.append(("statevector_dev", devs))
    if args.format == "json":
        rows = [
            {
                "r": pt.r, "alpha_r": pt.alpha_r, "P": pt.P,
                "coherence_number": pt.coherence_number, "ccN": pt.ccN,
                "l1": pt.l1, "rel_entropy": pt.rel_entropy, "w": pt.w,
                **{name: values[i] for name, values in extras},
            }
            for i, pt in enumerate(points)
        ]
        text = _json_text({"N": args.N, "m": args.m, "points": rows})
    else:
        text = trajectory_csv_text(points, extras)
    _write_output(text, args.csv or args.out)
    return 0


def cmd_convert(args) -> int:
    state = load_state(args.state_file)
    rho = as_density(state)
    d = rho.dim
    channel = incoherent_channel([conversion_unitary(d)])
    opts = _cli_options(args.seed)
    outcome = theorem2_chain(rho, channel, options=opts)
    payload = outcome.to_json()
    payload["theorem3"] = {
        str(k): theorem3_verify(rho, k, options=opts) for k in range(2, d + 1)
    }
    _write_output(_json_text(payload), args.out)
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, cases=args.cases,
                       tol=args.tol)
    if args.format == "csv":
        lines = ["case,residual,ok"]
        lines += [f"{c.index},{c.residual:.12g},{int(c.ok)}"
                  for c in report.results]
        text = "\n".join(lines) + "\n"
    else:
        text = _json_text(report.to_json())
    _write_output(text, args.out)
    return 0 if report.ok else 1


def _common_flags(sub, format_default=None):
    sub.add_argument("--seed", type=int, default=0, help="root RNG seed")
    sub.add_argument("--tol", type=float, default=None,
                     help="override the default tolerance")
    sub.add_argument("--cases", type=int, default=None,
                     help="override the corpus size")
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    if format_default is not None:
        sub.add_argument("--format", choices=("json", "csv"),
                         default=format_default)
    sub.add_argument("--log2", action="store_true",
                     help="also report log2 of the coherence rank or number")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohlab",
        description="Coherence and entanglement monotone toolkit",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    mono = subs.add_parser("monotones", help="full monotone report of a state")
    mono.add_argument("state_file")
    _common_flags(mono)
    mono.set_defaults(fn=cmd_monotones)

    gro = subs.add_parser("grover", help="search-iteration trajectory sweep")
    gro.add_argument("N", type=int)
    gro.add_argument("m", type=int)
    gro.add_argument("r_max", type=int)
    gro.add_argument("--csv", default=None, help="write CSV to this path")
    gro.add_argument("--dense", action="store_true",
                     help="200 real-r samples in [0, r*] instead of integers")
    gro.add_argument("--statevector-check", action="store_true",
                     help="append per-row simulator deviation (N = 2^n <= 4096)")
    _common_flags(gro, format_default="csv")
    gro.set_defaults(fn=cmd_grover)

    conv = subs.add_parser("convert", help="coherence-to-entanglement conversion")
    conv.add_argument("state_file")
    _common_flags(conv)
    conv.set_defaults(fn=cmd_convert)

    ver = subs.add_parser("verify", help="run a named verification suite")
    ver.add_argument("suite", choices=(
        "cauchy-binet", "maclaurin", "theorem1", "theorem2", "theorem3",
        "theorem4", "lemma1", "grover-consistency"))
    _common_flags(ver, format_default="json")
    ver.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol is not None and args.tol <= 0:
        parser.exit(2, "error: tolerance must be positive\n")
    if args.cases is not None and args.cases < 1:
        parser.exit(2, "error: corpus size must be at least 1\n")
    try:
        return args.fn(args)
    except (ArgumentError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
