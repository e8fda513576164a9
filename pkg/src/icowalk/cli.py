"""Command-line interface.

Subcommands
-----------
definite   run the processes of a config file in listed order, emit the
           position distribution
switch2    run two processes under the 2-switch, emit one branch distribution
nswitch    run N processes under the cyclic N-switch, emit one branch
uniform    emit the success-conditioned uniform distribution for (N, σ)
verify     run the numerical check suites, emit a machine-readable report
figure1    emit classical / balanced-coin / switch-walk comparison data files

Exit codes: 0 success, 1 a verification check failed, 2 usage or config error.

All numeric output uses 17-significant-digit decimal (round-trip exact for
binary64), so identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .baselines import classical_rw_distribution, hadamard_walk_distribution
from .checks import (
    check_corollary1,
    check_corollary2,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_theorem1,
    check_theorem2,
    check_theorem3,
    ico_uniform_distribution,
)
from .coins import load_process_specs
from .errors import IcoWalkError
from .measure import Distribution, distribution, make_distribution, project_coin, project_order
from .oracle import verify_expansion_against_engine
from .report import CheckReport
from .state import Chirality, make_initial_state
from .switch import apply_nswitch
from .engine import evolve_composition

_COIN_WORDS = {"right": Chirality.FORWARD, "left": Chirality.BACKWARD}
_COIN_NAMES = {Chirality.FORWARD: "right", Chirality.BACKWARD: "left"}


def _fmt(x: float) -> str:
    """17-significant-digit decimal; JSON-compatible spellings for non-finite."""
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return f"{x:.17g}"


def _json_str(s: str) -> str:
    escaped = s.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def distribution_json(
    dist: Distribution,
    order_outcome: int | None,
    coin_outcome: Chirality | None,
) -> str:
    positions = ", ".join(str(int(p)) for p in dist.positions)
    probabilities = ", ".join(_fmt(float(p)) for p in dist.probabilities)
    order_s = "null" if order_outcome is None else str(order_outcome)
    coin_s = "null" if coin_outcome is None else _json_str(_COIN_NAMES[coin_outcome])
    return (
        "{"
        f'"origin": {dist.origin}, '
        f'"positions": [{positions}], '
        f'"probabilities": [{probabilities}], '
        f'"normalized": {"true" if dist.normalized else "false"}, '
        f'"branch": {{"order_outcome": {order_s}, "coin_outcome": {coin_s}}}, '
        f'"branch_probability": {_fmt(dist.total_mass)}'
        "}\n"
    )


def distribution_csv(dist: Distribution) -> str:
    lines = ["position,probability"]
    for site, prob in zip(dist.positions, dist.probabilities):
        lines.append(f"{int(site)},{_fmt(float(prob))}")
    return "\n".join(lines) + "\n"


def reports_json(reports: list[CheckReport]) -> str:
    entries = []
    for r in reports:
        entries.append(
            "  {"
            f'"check": {_json_str(r.check_name)}, '
            f'"seed": {r.seed}, '
            f'"trials": {r.trials}, '
            f'"passed": {"true" if r.passed else "false"}, '
            f'"max_deviation": {_fmt(r.max_deviation)}, '
            f'"tolerance": {_fmt(r.tolerance)}'
            "}"
        )
    return "[\n" + ",\n".join(entries) + "\n]\n"


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _emit_distribution(dist, order_outcome, coin_outcome, fmt: str, out: str | None) -> None:
    if fmt == "csv":
        _write(distribution_csv(dist), out)
    else:
        _write(distribution_json(dist, order_outcome, coin_outcome), out)


def _load_config(path: str):
    return load_process_specs(Path(path))


def _selected_distribution(state, order_outcome, coin_outcome) -> Distribution:
    """Distribution of the requested branch, normalized; None means marginal."""
    if order_outcome is not None:
        cond = project_order(state, order_outcome)
        if coin_outcome is not None:
            cond = project_coin(cond, coin_outcome)
        return distribution(cond, normalize=True)
    amps = state.amps
    if coin_outcome is not None:
        amps = amps[:, int(coin_outcome) : int(coin_outcome) + 1, :]
    values = np.sum(np.abs(amps) ** 2, axis=(0, 1))
    mass = float(values.sum())
    if mass <= 0.0:
        raise IcoWalkError("selected branch has zero weight")
    return make_distribution(
        state.lattice.sites(), values / mass, origin=state.origin,
        normalized=True, total_mass=mass,
    )


def _cmd_definite(args) -> int:
    processes = _load_config(args.config)
    total = sum(p.sigma for p in processes)
    initial = make_initial_state(1, [1.0], args.initial_pos, args.initial_coin, total)
    evolved = evolve_composition(initial, processes, 0)
    dist = _selected_distribution(evolved, None, args.coin_outcome)
    _emit_distribution(dist, None, args.coin_outcome, args.format, args.out)
    return 0


def _cmd_switch(args, expected: int | None) -> int:
    processes = _load_config(args.config)
    if expected is not None and len(processes) != expected:
        raise IcoWalkError(
            f"config declares {len(processes)} processes, this command needs {expected}"
        )
    if len(processes) < 2:
        raise IcoWalkError("switch needs at least 2 processes in the config")
    n = len(processes)
    total = sum(p.sigma for p in processes)
    control = np.full(n, 1.0 / math.sqrt(n))
    initial = make_initial_state(n, control, args.initial_pos, args.initial_coin, total)
    evolved = apply_nswitch(initial, processes)
    if args.order_outcome is not None and not 0 <= args.order_outcome < n:
        raise IcoWalkError(f"--order-outcome must be in [0, {n})")
    dist = _selected_distribution(evolved, args.order_outcome, args.coin_outcome)
    _emit_distribution(dist, args.order_outcome, args.coin_outcome, args.format, args.out)
    return 0


def _cmd_uniform(args) -> int:
    dist, _ = ico_uniform_distribution(
        args.n, args.sigma, n0=args.initial_pos, phi0=args.initial_coin
    )
    _emit_distribution(dist, None, args.initial_coin.opposite, args.format, args.out)
    return 0


_SUITES = (
    "theorem1",
    "lemma1",
    "corollary1",
    "lemma2",
    "corollary2",
    "lemma3",
    "theorem2",
    "theorem3",
    "oracle",
)


def run_suite(suite: str, seed: int, trials: int) -> list[CheckReport]:
    reports: list[CheckReport] = []
    if suite in ("all", "theorem1"):
        reports.append(check_theorem1(seed, trials, sigma_max=5))
    if suite in ("all", "lemma1"):
        reports.append(check_lemma1(seed, trials))
    if suite in ("all", "corollary1"):
        reports.append(check_corollary1(seed, trials))
    if suite in ("all", "lemma2"):
        reports.append(check_lemma2(seed, trials))
    if suite in ("all", "corollary2"):
        reports.append(check_corollary2(seed, trials))
    if suite in ("all", "lemma3"):
        reports.append(check_lemma3(seed, trials))
    if suite in ("all", "theorem2"):
        reports.append(check_theorem2(seed, trials, n_max=5))
    if suite in ("all", "theorem3"):
        reports.append(check_theorem3(2, 2))
        reports.append(check_theorem3(3, 2))
        reports.append(check_theorem3(2, 4))
    if suite in ("all", "oracle"):
        reports.append(verify_expansion_against_engine(trials=trials, seed=seed))
    return reports


def _cmd_verify(args) -> int:
    reports = run_suite(args.suite, args.seed, args.trials)
    _write(reports_json(reports), args.out)
    return 0 if all(r.passed for r in reports) else 1


def emit_figure1(steps: list[int], out_dir: str | Path) -> list[Path]:
    """Comparison data files (classical, balanced-coin, switch walk) per step count.

    Each step count T must be even and ≥ 2; the switch walk uses N = T/2
    two-step processes, so its success-conditioned distribution is exactly
    uniform over T sites.
    """
    for t in steps:
        if t < 2 or t % 2:
            raise IcoWalkError(f"step count {t} unsupported: must be even and >= 2")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for t in steps:
        files = {
            f"classical_T{t}.csv": classical_rw_distribution(t),
            f"hadamard_T{t}.csv": hadamard_walk_distribution(t),
            f"ico_T{t}.csv": ico_uniform_distribution(t // 2, 2)[0],
        }
        for name, dist in files.items():
            path = out / name
            with open(path, "w", newline="\n") as fh:
                fh.write(distribution_csv(dist))
            written.append(path)
    return written


def _cmd_figure1(args) -> int:
    try:
        steps = [int(s) for s in args.steps.split(",") if s.strip()]
    except ValueError:
        raise IcoWalkError(f"--steps must be a comma-separated integer list, got {args.steps!r}")
    if not steps:
        raise IcoWalkError("--steps is empty")
    written = emit_figure1(steps, args.out)
    sys.stderr.write(f"wrote {len(written)} files to {args.out}\n")
    return 0


def _coin_word(word: str) -> Chirality:
    return _COIN_WORDS[word]


def _add_common_walk_flags(sub: argparse.ArgumentParser, with_config: bool = True) -> None:
    if with_config:
        sub.add_argument("--config", required=True, help="process-spec JSON file")
    sub.add_argument("--initial-pos", type=int, default=0, help="walker start site")
    sub.add_argument(
        "--initial-coin", type=_coin_word, choices=list(_COIN_WORDS.values()),
        default=Chirality.FORWARD, metavar="right|left", help="initial chirality",
    )
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icowalk",
        description="coined quantum walks with order-controlled coin tossing",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("definite", help="run processes in listed order")
    _add_common_walk_flags(p)
    p.add_argument(
        "--coin-outcome", type=_coin_word, choices=list(_COIN_WORDS.values()),
        default=None, metavar="right|left", help="project the coin before reading out",
    )

    for name, helptext in (
        ("switch2", "two-process switch walk"),
        ("nswitch", "cyclic N-process switch walk"),
    ):
        p = subs.add_parser(name, help=helptext)
        _add_common_walk_flags(p)
        p.add_argument(
            "--order-outcome", type=int, default=None,
            help="Fourier outcome of the order register (default: marginal)",
        )
        p.add_argument(
            "--coin-outcome", type=_coin_word, choices=list(_COIN_WORDS.values()),
            default=None, metavar="right|left",
        )

    p = subs.add_parser("uniform", help="success-conditioned uniform distribution")
    p.add_argument("--n", type=int, required=True, help="number of processes (>= 2)")
    p.add_argument("--sigma", type=int, required=True, help="steps per process (2 or 4)")
    _add_common_walk_flags(p, with_config=False)

    p = subs.add_parser("verify", help="run numerical check suites")
    p.add_argument("--suite", choices=("all",) + _SUITES, default="all")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--out", default=None)

    p = subs.add_parser("figure1", help="emit comparison data files")
    p.add_argument(
        "--steps", default="16,32,64,100,200,300",
        help="comma-separated even step counts",
    )
    p.add_argument("--out", default="figure1-data", help="output directory")
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "definite":
            return _cmd_definite(args)
        if args.command == "switch2":
            return _cmd_switch(args, expected=2)
        if args.command == "nswitch":
            return _cmd_switch(args, expected=None)
        if args.command == "uniform":
            return _cmd_uniform(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "figure1":
            return _cmd_figure1(args)
        raise AssertionError(f"unhandled command {args.command}")
    except (IcoWalkError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
