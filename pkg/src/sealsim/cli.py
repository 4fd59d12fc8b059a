"""Command-line front end.

Subcommands: ``sweep`` writes curve data for the damping family to CSV,
``simulate`` runs the seeded Monte Carlo and prints empirical statistics next
to the analytic predictions, ``validate-channel`` checks a channel document.

Exit codes are part of the interface: 0 success, 1 channel failed
validation, 2 bad arguments or unparseable channel file, 3 output I/O
failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass

from sealsim import analysis, protocol
from sealsim.channel_file import ChannelFormatError, load_channel
from sealsim.qubit import (
    KrausChannel,
    dephasing_channel,
    depolarizing_channel,
    identity_channel,
    seal_channel,
    validate_channel,
)

DEFAULT_N = 119
DEFAULT_PA = 0.05
DEFAULT_TAIL_TOL = 1e-12
DEFAULT_GRID_STEP = 0.05

_BUILTIN_CHANNELS = ("identity", "seal", "depolarizing", "dephasing")


@dataclass(frozen=True)
class SweepConfig:
    x_grid: tuple[float, ...]
    n_shots: int
    p_announce: float
    tail_tol: float
    output_path: str

    def __post_init__(self):
        grid = tuple(float(x) for x in self.x_grid)
        if not grid or any(not 0.0 <= x <= 1.0 for x in grid) or list(grid) != sorted(grid):
            raise ValueError("grid must be sorted values within [0, 1]")
        object.__setattr__(self, "x_grid", grid)


def _default_grid(step: float) -> tuple[float, ...]:
    if not 0.0 < step <= 1.0:
        raise ValueError(f"grid step must lie in (0, 1], got {step}")
    values = []
    i = 0
    while i * step < 1.0 - 1e-12:
        values.append(i * step)
        i += 1
    values.append(1.0)
    return tuple(values)


def _fmt(value: float) -> str:
    return format(value, ".12g")


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sealsim-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_sweep(config: SweepConfig) -> int:
    rows = []
    for x in config.x_grid:
        mi = analysis.seal_expected_mutual_information(
            x, config.n_shots, config.p_announce, config.tail_tol
        )
        mm = analysis.mismatch_probability(seal_channel(x))
        rows.append(
            f"{_fmt(x)},{_fmt(mi.mi_bits)},{_fmt(mm.matched_basis_conditional)},"
            f"{_fmt(mm.per_shot)},{_fmt(mi.truncation_mass)}"
        )
    header = [
        "# sealsim sweep",
        f"# n_shots = {config.n_shots}",
        f"# p_announce = {_fmt(config.p_announce)}",
        f"# tail_tol = {_fmt(config.tail_tol)}",
        "x,mi_bits,mismatch_conditional,mismatch_per_shot,truncation_mass",
    ]
    try:
        _write_atomic(config.output_path, "\n".join(header + rows) + "\n")
    except OSError as exc:
        print(f"error: cannot write {config.output_path}: {exc}", file=sys.stderr)
        return 3
    return 0


def _build_builtin(name: str, parameter: float | None, parser: argparse.ArgumentParser):
    if name in ("seal", "depolarizing"):
        if parameter is None:
            parser.error(f"--channel {name} requires --x")
        try:
            return seal_channel(parameter) if name == "seal" else depolarizing_channel(parameter)
        except ValueError as exc:
            parser.error(str(exc))
    if name == "identity":
        return identity_channel()
    return dephasing_channel()


def _report_line(name: str, empirical: float, err: float, analytic: float | None) -> str:
    right = f"{analytic:.6f}" if analytic is not None else "n/a"
    return f"{name:<24} {empirical:>12.6f} {err:>12.6f} {right:>12}"


def cmd_simulate(
    params: protocol.ProtocolParams,
    channel: KrausChannel,
    trials: int,
    transcript_path: str | None,
) -> int:
    report = validate_channel(channel)
    if not report.passes:
        print(
            f"error: channel {channel.label!r} fails completeness "
            f"(deviation {report.deviation:.6e})",
            file=sys.stderr,
        )
        return 1

    stats = protocol.monte_carlo(params, channel, trials)
    dist = analysis.bit_announcement_probs(channel)
    predicted = dist.probs_given_b[params.message_bit]
    mismatch = analysis.mismatch_probability(channel)
    decode_baseline = analysis.decode_success_probability(params.n_shots, params.p_announce)

    lines = [
        "# sealsim simulate",
        f"# channel = {channel.label}",
        f"# n_shots = {params.n_shots}",
        f"# p_announce = {_fmt(params.p_announce)}",
        f"# message_bit = {params.message_bit}",
        f"# seed = {params.seed}",
        f"# trials = {trials}",
        f"# shots = {stats.shots}",
        f"# bit_announcements = {stats.bit_announcement_total}",
        f"# matched_result_announcements = {stats.matched_result_announcements}",
        "# analytic decode_success is the undisturbed-channel baseline",
        f"{'statistic':<24} {'empirical':>12} {'std_err':>12} {'analytic':>12}",
        _report_line(
            "decode_success", stats.decode_success_rate, stats.decode_success_err, decode_baseline
        ),
        _report_line(
            "decode_correct|success", stats.decode_correct_rate, stats.decode_correct_err, None
        ),
        _report_line(
            "mismatch_conditional",
            stats.mismatch_rate,
            stats.mismatch_rate_err,
            mismatch.matched_basis_conditional,
        ),
    ]
    labels = ("freq(sigma1,c=0)", "freq(sigma1,c=1)", "freq(sigma3,c=0)", "freq(sigma3,c=1)")
    for label, freq, err, want in zip(
        labels, stats.bit_announcement_freqs, stats.bit_announcement_errs, predicted
    ):
        lines.append(_report_line(label, freq, err, want))
    print("\n".join(lines))

    if transcript_path is not None:
        shots, _, _ = protocol.run_protocol(params, channel, stream=0)
        comments = (
            "sealsim transcript (stream 0)",
            f"channel = {channel.label}",
            f"n_shots = {params.n_shots}",
            f"p_announce = {_fmt(params.p_announce)}",
            f"message_bit = {params.message_bit}",
            f"seed = {params.seed}",
        )
        try:
            protocol.export_transcript(shots, transcript_path, public=False, comments=comments)
            protocol.export_transcript(
                shots, transcript_path + ".public", public=True, comments=comments
            )
        except OSError as exc:
            print(f"error: cannot write transcript: {exc}", file=sys.stderr)
            return 3
    return 0


def cmd_validate_channel(path: str, n_shots: int, p_announce: float) -> int:
    try:
        channel = load_channel(path)
    except ChannelFormatError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return 2

    report = validate_channel(channel)
    lines = [
        "# sealsim validate-channel",
        f"# file = {path}",
        f"label = {channel.label}",
        f"operators = {len(channel.operators)}",
        f"completeness_deviation = {report.deviation:.6e}",
        f"verdict = {'PASS' if report.passes else 'FAIL'}",
    ]
    if report.passes:
        bloch = report.chaotic_image
        lines.append(f"chaotic_image_lambda = {_fmt(bloch.lam)}")
        lines.append(
            "chaotic_image_v = "
            f"({_fmt(bloch.v[0])}, {_fmt(bloch.v[1])}, {_fmt(bloch.v[2])})"
        )
        lines.append(f"unital = {'yes' if report.unital else 'no'}")
        mi = analysis.expected_mutual_information(
            analysis.bit_announcement_probs(channel), n_shots, p_announce
        )
        mismatch = analysis.mismatch_probability(channel)
        lines.append(f"expected_mi_bits = {_fmt(mi.mi_bits)} (n_shots={n_shots}, p_announce={_fmt(p_announce)})")
        lines.append(f"mi_truncation_mass = {mi.truncation_mass:.3e}")
        lines.append(f"mismatch_per_shot = {_fmt(mismatch.per_shot)}")
        lines.append(f"mismatch_matched_basis = {_fmt(mismatch.matched_basis_conditional)}")
    print("\n".join(lines))
    return 0 if report.passes else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sealsim",
        description="Sealed-message protocol simulator and eavesdropping analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="write damping-family curve data to CSV")
    sweep.add_argument("--n", type=int, default=DEFAULT_N, help="shots per run")
    sweep.add_argument("--pa", type=float, default=DEFAULT_PA, help="bit-announcement probability")
    sweep.add_argument("--grid-step", type=float, default=DEFAULT_GRID_STEP)
    sweep.add_argument("--tail-tol", type=float, default=DEFAULT_TAIL_TOL)
    sweep.add_argument("--out", required=True, help="output CSV path")

    sim = sub.add_parser("simulate", help="run the seeded Monte Carlo against a channel")
    source = sim.add_mutually_exclusive_group(required=True)
    source.add_argument("--channel", choices=_BUILTIN_CHANNELS)
    source.add_argument("--channel-file", help="JSON channel document")
    sim.add_argument("--x", type=float, default=None, help="builtin channel parameter")
    sim.add_argument("--n", type=int, default=DEFAULT_N)
    sim.add_argument("--pa", type=float, default=DEFAULT_PA)
    sim.add_argument("--bit", type=int, choices=(0, 1), default=0, help="message bit")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--trials", type=int, default=1000)
    sim.add_argument("--transcript", default=None, help="also export stream-0 transcript files")

    val = sub.add_parser("validate-channel", help="check a channel document")
    val.add_argument("file")
    val.add_argument("--n", type=int, default=DEFAULT_N)
    val.add_argument("--pa", type=float, default=DEFAULT_PA)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "sweep":
        try:
            if args.n < 1:
                raise ValueError("need at least one shot")
            if not 0.0 <= args.pa <= 1.0:
                raise ValueError(f"announcement probability must lie in [0, 1], got {args.pa}")
            if not 0.0 < args.tail_tol <= 1e-6:
                raise ValueError(f"tail tolerance must lie in (0, 1e-6], got {args.tail_tol}")
            config = SweepConfig(
                x_grid=_default_grid(args.grid_step),
                n_shots=args.n,
                p_announce=args.pa,
                tail_tol=args.tail_tol,
                output_path=args.out,
            )
        except ValueError as exc:
            parser.error(str(exc))
        return cmd_sweep(config)

    if args.command == "simulate":
        try:
            params = protocol.ProtocolParams(
                n_shots=args.n, p_announce=args.pa, message_bit=args.bit, seed=args.seed
            )
            if args.trials < 1:
                raise ValueError("need at least one trial")
        except ValueError as exc:
            parser.error(str(exc))
        if args.channel_file is not None:
            try:
                channel = load_channel(args.channel_file)
            except ChannelFormatError as exc:
                print(f"error: {args.channel_file}: {exc}", file=sys.stderr)
                return 2
            except OSError as exc:
                print(f"error: cannot read {args.channel_file}: {exc}", file=sys.stderr)
                return 2
        else:
            channel = _build_builtin(args.channel, args.x, parser)
        return cmd_simulate(params, channel, args.trials, args.transcript)

    return cmd_validate_channel(args.file, args.n, args.pa)


if __name__ == "__main__":
    sys.exit(main())
