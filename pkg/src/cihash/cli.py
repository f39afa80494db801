"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 on runtime or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report
from .ciprng import GeneratorKind, GeneratorSpec, StreamState, ciprng_next, raw_bits
from .core import BitVector, StrategySequence, StrategySubset, SystemPoint, point_distance
from .harness import TrialConfig, collision_test, default_message, diffusion_test, distribution_dump
from .keyed_hash import HashKey, InnerDigest, chaotic_hash, hexdigest

EXIT_USAGE = 1
EXIT_RUNTIME = 2

DIGESTS = [d.algorithm for d in InnerDigest]
PRNGS = [g.value for g in GeneratorKind]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_key_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k1", type=_non_negative, default=50, help="generator seed (default 50)")
    p.add_argument("--k2", type=_positive, default=2, help="strategy length (default 2)")
    p.add_argument("--k3", type=_non_negative, default=50, help="premix key (default 50)")
    p.add_argument("--digest", choices=DIGESTS, default="md5")
    p.add_argument("--prng", choices=PRNGS, default="bbs")
    p.add_argument("--input", default=None, help="message file, '-' for stdin (default: bundled poem)")


def _add_eval_args(p: argparse.ArgumentParser, default_trials: int) -> None:
    _add_key_args(p)
    p.add_argument("--trials", type=_positive, default=default_trials)
    p.add_argument("--eval-seed", type=_non_negative, default=0)
    p.add_argument("--format", choices=report.FORMATS, default="text")
    p.add_argument("--baseline", action="store_true", help="evaluate the plain inner digest")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cihash", description="Chaotic-iterations keyed hash and evaluation harness")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hash", help="print the keyed hash of the input")
    _add_key_args(p)

    p = sub.add_parser("eval-diffusion", help="single-bit-flip diffusion statistics")
    _add_eval_args(p, 1000)
    p.add_argument("--b-values", default=None, help="also write per-trial changed-bit counts as CSV")

    p = sub.add_parser("eval-collision", help="single-bit-flip collision statistics")
    _add_eval_args(p, 2048)

    p = sub.add_parser("prng-stream", help="dump XOR CIPRNG vectors (or raw bits) in hex")
    p.add_argument("--k1", type=_non_negative, default=50, help="generator seed")
    p.add_argument("--prng", choices=PRNGS, default="bbs")
    p.add_argument("--count", type=_non_negative, default=8)
    p.add_argument("--width", type=_positive, default=128)
    p.add_argument("--raw", action="store_true", help="raw generator bits, no XOR folding")

    p = sub.add_parser("distance", help="distance between two (strategy, state) points")
    p.add_argument("state_a", help="state as hex, cell 1 first")
    p.add_argument("state_b")
    p.add_argument("--strategy-a", required=True, help="file of hex masks, one per line")
    p.add_argument("--strategy-b", required=True)
    p.add_argument("--terms", type=_positive, default=None, help="strategy terms (default min(16, available))")

    p = sub.add_parser("dump", help="message byte / digest nibble records for plotting")
    _add_key_args(p)
    p.add_argument("--format", choices=report.FORMATS, default="csv")
    p.add_argument("--out", default=None)
    return parser


def _read_input(path: str | None) -> bytes:
    if path is None:
        return default_message()
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _key(args) -> HashKey:
    return HashKey(args.k1, args.k2, args.k3)


def _trial_config(args) -> TrialConfig:
    return TrialConfig(
        trials=args.trials,
        eval_seed=args.eval_seed,
        key=_key(args),
        digest=InnerDigest.parse(args.digest),
        generator=GeneratorKind.parse(args.prng),
        message=_read_input(args.input),
        baseline=args.baseline,
    )


def cmd_hash(args) -> None:
    h = chaotic_hash(_key(args), _read_input(args.input), args.digest, args.prng)
    print(hexdigest(h))


def cmd_eval_diffusion(args) -> None:
    if args.trials < 2:
        raise UsageError("--trials must be at least 2")
    cfg = _trial_config(args)
    stats = diffusion_test(cfg)
    _emit(report.render_diffusion(cfg, stats, args.format), args.out)
    if args.b_values:
        Path(args.b_values).write_text(report.render_b_values(stats))


def cmd_eval_collision(args) -> None:
    if args.trials < 2:
        raise UsageError("--trials must be at least 2")
    cfg = _trial_config(args)
    _emit(report.render_collision(cfg, collision_test(cfg), args.format), args.out)


def cmd_prng_stream(args) -> None:
    if args.width % 4:
        raise UsageError("--width must be a multiple of 4 for hex output")
    stream = StreamState(GeneratorSpec(GeneratorKind.parse(args.prng), args.k1), args.width)
    digits = args.width // 4
    for _ in range(args.count):
        if args.raw:
            value = int(raw_bits(stream, args.width), 2)
        else:
            value = ciprng_next(stream).value
        print(format(value, f"0{digits}X"))


def _read_strategy(path: str, width: int) -> StrategySequence:
    terms = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        vec = BitVector.from_hex(line)
        if vec.width != width:
            raise ValueError(f"{path}: mask {line!r} is {vec.width} bits, expected {width}")
        terms.append(StrategySubset.from_vector(vec))
    return StrategySequence(width, tuple(terms))


def cmd_distance(args) -> None:
    try:
        a, b = BitVector.from_hex(args.state_a), BitVector.from_hex(args.state_b)
    except ValueError as exc:
        raise UsageError(f"bad state: {exc}") from None
    if a.width != b.width:
        raise UsageError("states must have the same number of hex digits")
    sa = _read_strategy(args.strategy_a, a.width)
    sb = _read_strategy(args.strategy_b, a.width)
    terms = args.terms if args.terms is not None else min(16, len(sa), len(sb))
    if terms < 1:
        raise ValueError("strategy files contain no masks")
    print(repr(point_distance(SystemPoint(sa, a), SystemPoint(sb, b), terms)))


def cmd_dump(args) -> None:
    message = _read_input(args.input)
    h = chaotic_hash(_key(args), message, args.digest, args.prng)
    _emit(report.render_dump(distribution_dump(message, h), args.format), args.out)


COMMANDS = {
    "hash": cmd_hash,
    "eval-diffusion": cmd_eval_diffusion,
    "eval-collision": cmd_eval_collision,
    "prng-stream": cmd_prng_stream,
    "distance": cmd_distance,
    "dump": cmd_dump,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cihash: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"cihash: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return 0


if __name__ == "__main__":
    sys.exit(main())
