"""Command-line surface: compress, decompress, analyze, bench.

Exit statuses: 0 success, 1 usage, 2 I/O, 3 format/corruption, 4 failed
redundancy self-check.
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction

from . import additive, container, distribution, multiplicative, report
from .distribution import Distribution
from .errors import (
    BoundViolationError,
    CorruptStreamError,
    EmptyDistributionError,
    FormatError,
    InfeasibleLimitError,
    KraftViolationError,
    ParameterError,
)
from .huffman import huffman_lengths, weighted_length

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_FORMAT = 3
EXIT_BOUND = 4

DEFAULT_EPSILONS = "31/64,1/10,1/100"
DEFAULT_CS = "3/2,2,3"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_rational(text: str) -> Fraction:
    """Exact rationals only: 'num/den' or a bare integer."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _rational_list(text: str) -> list:
    return [parse_rational(t) for t in text.split(",") if t.strip()]


def _fmt_rational(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _measure_ns(codec, width: int, seed: int = 0, samples: int = 4000) -> tuple:
    """(encode_ns, decode_ns) per symbol over the codec's own alphabet."""
    rng = random.Random(seed)
    syms = [rng.choice(codec.symbol_map) for _ in range(samples)]
    windows = []
    for s in syms:
        cw = codec.encode_symbol(s)
        windows.append(cw.bits << (width - cw.len))
    encode = codec.encode_symbol
    decode = codec.decode_symbol
    for s in syms[:64]:  # warm-up
        encode(s)
    t0 = time.perf_counter_ns()
    for s in syms:
        encode(s)
    enc_ns = (time.perf_counter_ns() - t0) / samples
    for w in windows[:64]:
        decode(w, width)
    t0 = time.perf_counter_ns()
    for w in windows:
        decode(w, width)
    dec_ns = (time.perf_counter_ns() - t0) / samples
    return enc_ns, dec_ns


def _bound_int(mode: str, param: Fraction, d: Distribution, optimal: int) -> int:
    if mode == "additive":
        return -(-param.numerator * d.total // param.denominator)  # ceil
    return param.numerator * optimal // param.denominator  # floor


def _self_check(mode: str, param: Fraction, d, optimal: int, codec_w: int) -> None:
    if mode == "additive":
        if codec_w - optimal > _bound_int(mode, param, d, optimal):
            raise BoundViolationError(
                "additive redundancy exceeds ceil(epsilon * total)"
            )
    else:
        if codec_w * param.denominator > param.numerator * optimal:
            raise BoundViolationError("weighted length exceeds c * optimal")


def _make_report(
    command: str,
    mode: str,
    family: str,
    d: Distribution,
    param: Fraction,
    codec,
    model_bits: int,
    payload_bits,
    seed: int = 0,
) -> report.RunReport:
    optimal = weighted_length(huffman_lengths(d), d)
    codec_w = codec.weighted(d)
    _self_check(mode, param, d, optimal, codec_w)
    width = codec.max_len if mode == "additive" else codec.code_width
    enc_ns, dec_ns = _measure_ns(codec, width, seed=seed)
    return report.RunReport(
        command=command,
        mode=mode,
        family=family,
        n=d.n,
        param=_fmt_rational(param),
        entropy_bits=distribution.entropy_bits(d),
        optimal_weighted=optimal,
        codec_weighted=codec_w,
        bound=_bound_int(mode, param, d, optimal),
        model_bits=model_bits,
        payload_bits=payload_bits if payload_bits is not None else codec_w,
        encode_ns_per_symbol=enc_ns,
        decode_ns_per_symbol=dec_ns,
    )


def _mode_param(args) -> tuple:
    if args.mode == "additive":
        if args.epsilon is None:
            raise ParameterError("--epsilon is required for additive mode")
        eps = parse_rational(args.epsilon)
        if not (0 < eps < Fraction(1, 2)):
            raise ParameterError("epsilon out of range (0, 1/2)")
        return container.MODE_ADDITIVE, eps
    if args.c is None:
        raise ParameterError("--c is required for multiplicative mode")
    c = parse_rational(args.c)
    if c <= 1:
        raise ParameterError("c must be > 1")
    return container.MODE_MULTIPLICATIVE, c


def cmd_compress(args) -> int:
    mode_byte, param = _mode_param(args)
    data = _read(args.input)
    result = container.compress_stream_details(
        mode_byte, param, data, alphabet=args.alphabet
    )
    _write(args.output, result.blob)
    rep = _make_report(
        "compress",
        args.mode,
        "file",
        result.distribution,
        param,
        result.codec,
        result.model_bits,
        result.payload_bits,
        seed=args.seed,
    )
    print(rep.json_line())
    return EXIT_OK


def cmd_decompress(args) -> int:
    blob = _read(args.input)
    data = container.decompress_stream(blob)
    _write(args.output, data)
    return EXIT_OK


def _histogram(data: bytes, alphabet: str) -> Distribution:
    if alphabet == "u16":
        return distribution.from_u16le(data)
    return distribution.from_bytes(data)


def cmd_analyze(args) -> int:
    data = _read(args.input)
    d = _histogram(data, args.alphabet)
    huff = huffman_lengths(d)
    optimal = weighted_length(huff, d)
    print(
        f'{{"entropy_bits": {distribution.entropy_bits(d)}, '
        f'"optimal_weighted": {optimal}, "max_huffman_len": {huff.max_len}}}'
    )
    rows = []
    for eps in _rational_list(args.epsilon or DEFAULT_EPSILONS):
        codec = additive.build(d, eps)
        bits = 8 * len(container.serialize_additive_model(codec))
        rows.append(
            _make_report("analyze", "additive", "file", d, eps, codec, bits,
                         None, seed=args.seed)
        )
        print(rows[-1].json_line())
    for c in _rational_list(args.c or DEFAULT_CS):
        codec = multiplicative.build(d, c)
        bits = 8 * len(container.serialize_multiplicative_model(codec))
        rows.append(
            _make_report("analyze", "multiplicative", "file", d, c, codec,
                         bits, None, seed=args.seed)
        )
        print(rows[-1].json_line())
    if args.report_dir:
        for p in report.render_report_dir(rows, args.report_dir, stem="analyze"):
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def _gen_family(family: str, n: int) -> Distribution:
    if family == "dyadic":
        return distribution.gen_dyadic(n)
    if family == "zipf":
        return distribution.gen_zipf(n, 1.0)
    if family == "uniform":
        return distribution.gen_uniform(n)
    raise ParameterError(f"unknown family {family!r}")


def cmd_bench(args) -> int:
    families = [f for f in args.family.split(",") if f]
    ns = []
    n = args.nmin
    while n <= args.nmax:
        ns.append(n)
        n *= 2
    if not ns:
        raise ParameterError("empty n range")
    grid = []
    if args.mode in ("additive", "both"):
        for eps in _rational_list(args.epsilon or DEFAULT_EPSILONS):
            grid.append(("additive", eps))
    if args.mode in ("multiplicative", "both"):
        for c in _rational_list(args.c or DEFAULT_CS):
            grid.append(("multiplicative", c))
    rows = []
    for family in families:
        for n in ns:
            d = _gen_family(family, n)
            for mode, param in grid:
                if mode == "additive":
                    codec = additive.build(d, param)
                    bits = 8 * len(container.serialize_additive_model(codec))
                else:
                    codec = multiplicative.build(d, param)
                    bits = 8 * len(container.serialize_multiplicative_model(codec))
                rep = _make_report(
                    "bench", mode, family, d, param, codec, bits, None,
                    seed=args.seed,
                )
                rows.append(rep)
                print(rep.json_line())
    if args.report_dir:
        for p in report.render_report_dir(rows, args.report_dir, stem="bench"):
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK


def _read(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str, data: bytes) -> None:
    with open(path, "wb") as fh:
        fh.write(data)


def build_parser() -> _Parser:
    p = _Parser(prog="pfxc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--mode", choices=["additive", "multiplicative"],
                        required=True)
        sp.add_argument("--epsilon", help="additive budget, exact rational num/den")
        sp.add_argument("--c", help="multiplicative factor, exact rational num/den")

    sp = sub.add_parser("compress", help="compress a file into a PFXC container")
    sp.add_argument("input")
    sp.add_argument("output")
    add_common(sp)
    sp.add_argument("--alphabet", choices=["byte", "u16"], default="byte")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_compress)

    sp = sub.add_parser("decompress", help="restore the original file")
    sp.add_argument("input")
    sp.add_argument("output")
    sp.set_defaults(fn=cmd_decompress)

    sp = sub.add_parser("analyze", help="entropy and projected model sizes")
    sp.add_argument("input")
    sp.add_argument("--alphabet", choices=["byte", "u16"], default="byte")
    sp.add_argument("--epsilon", help="comma list of rationals")
    sp.add_argument("--c", help="comma list of rationals")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--report-dir")
    sp.set_defaults(fn=cmd_analyze)

    sp = sub.add_parser("bench", help="sweep families x n x params")
    sp.add_argument("--family", default="dyadic",
                    help="comma list from {dyadic,zipf,uniform}")
    sp.add_argument("--nmin", type=int, default=256)
    sp.add_argument("--nmax", type=int, default=4096)
    sp.add_argument("--mode", choices=["additive", "multiplicative", "both"],
                    default="both")
    sp.add_argument("--epsilon", help="comma list of rationals")
    sp.add_argument("--c", help="comma list of rationals")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--report-dir")
    sp.set_defaults(fn=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BoundViolationError as e:
        print(f"pfxc: bound self-check failed: {e}", file=sys.stderr)
        return EXIT_BOUND
    except (FormatError, CorruptStreamError, EmptyDistributionError) as e:
        print(f"pfxc: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except (ParameterError, InfeasibleLimitError, KraftViolationError,
            ValueError) as e:
        print(f"pfxc: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"pfxc: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
