"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 validation failure.
Data goes to stdout as ``key=value`` lines; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import analysis
from .apps import KMeansConfig, PnmError, kmeans_quantize, load_pnm, psnr, save_pnm, sobel_magnitude, ssim
from .core import Parity, e2afs_sqrt, trace
from .fp16 import FpClass, classify, exact_sqrt, to_real

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VALIDATION = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _num(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return f"{x:.9g}"


def _hex_word(text: str) -> int:
    t = text[2:] if text.lower().startswith("0x") else text
    if len(t) != 4:
        raise argparse.ArgumentTypeError(f"expected 4 hex digits, got {text!r}")
    try:
        return int(t, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 4 hex digits, got {text!r}") from None


def cmd_sqrt(args, out) -> int:
    w = args.hex
    y = e2afs_sqrt(w)
    x = to_real(w)
    approx = to_real(y)
    try:
        exact = exact_sqrt(w)
    except ValueError:
        exact = math.nan
    err = abs(approx - exact) if math.isfinite(exact) and math.isfinite(approx) else math.nan
    rel = err / exact if exact > 0 else (0.0 if err == 0 else math.nan)
    print(f"input=0x{w:04X} {_num(x)}", file=out)
    print(f"e2afs=0x{y:04X} {_num(approx)}", file=out)
    print(f"exact={_num(exact)}", file=out)
    print(f"abs_err={_num(err)}", file=out)
    print(f"rel_err={_num(rel)}", file=out)
    if args.trace:
        if classify(w) is not FpClass.NORMAL or w >> 15:
            print("trace: only positive normal inputs go through the datapath", file=sys.stderr)
        else:
            for key, value in trace(w).items():
                if key == "bits":
                    value = f"0x{value:04X}"
                print(f"{key}={value}", file=out)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    path = analysis.emit_sweep_csv(analysis.sweep_domain(), args.out)
    print(f"rows={analysis.DOMAIN_SIZE}", file=out)
    print(f"path={path}", file=out)
    return EXIT_OK


def cmd_metrics(args, out) -> int:
    m = analysis.compute_metrics(analysis.sweep_domain())
    for name in ("med", "mred", "nmed", "mse", "edmax"):
        print(f"{name}={getattr(m, name):.6g}", file=out)
    return EXIT_OK


def _scores(ref, test, out) -> None:
    print(f"psnr={_num(psnr(ref, test))} ssim={ssim(ref, test):.6f}", file=out)


def cmd_sobel(args, out) -> int:
    img = load_pnm(args.inp)
    if img.ndim != 2:
        raise ValueError(f"{args.inp}: sobel needs a P5 grayscale image")
    result = sobel_magnitude(img, args.rooter)
    save_pnm(result, args.out)
    if args.score_against:
        ref = load_pnm(args.score_against)
        _scores(ref, result, out)
    return EXIT_OK


def cmd_kmeans(args, out) -> int:
    img = load_pnm(args.inp)
    if img.ndim != 3:
        raise ValueError(f"{args.inp}: kmeans needs a P6 color image")
    cfg = KMeansConfig(k=args.k, seed=args.seed, max_iters=args.max_iters, epsilon=args.epsilon)
    result = kmeans_quantize(img, cfg, args.rooter)
    save_pnm(result.image, args.out)
    _scores(img, result.image, out)
    return EXIT_OK


def cmd_search(args, out) -> int:
    if args.breakpoint:
        res = analysis.search_breakpoint(args.resolution)
        extra = {"objective_at_0.5": analysis.breakpoint_objective(0.5)}
    else:
        parity = Parity(args.compensation)
        res = analysis.search_compensation(parity, args.resolution)
        paper = 0.045 if parity is Parity.EVEN else 0.3333
        extra = {f"objective_at_{paper}": analysis.compensation_objective(parity, paper)}
    print(f"argmin={res.argmin:.9g}", file=out)
    print(f"objective={res.objective:.9g}", file=out)
    print(f"resolution={res.resolution:.9g}", file=out)
    for key, value in extra.items():
        print(f"{key}={value:.9g}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="e2afs", description="E2AFS approximate FP16 square rooter model")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sqrt", help="root one FP16 value given as 4 hex digits")
    p.add_argument("--hex", required=True, type=_hex_word)
    p.add_argument("--trace", action="store_true", help="also print datapath intermediates")
    p.set_defaults(func=cmd_sqrt)

    p = sub.add_parser("sweep", help="write the exhaustive sweep CSV")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("metrics", help="print MED, MRED, NMED, MSE, EDmax")
    p.set_defaults(func=cmd_metrics)

    rooters = ("exact", "e2afs")
    p = sub.add_parser("sobel", help="Sobel edge magnitude of a P5 image")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--rooter", choices=rooters, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--score-against")
    p.set_defaults(func=cmd_sobel)

    p = sub.add_parser("kmeans", help="K-means color quantization of a P6 image")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=50)
    p.add_argument("--epsilon", type=float, default=0.25)
    p.add_argument("--rooter", choices=rooters, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_kmeans)

    p = sub.add_parser("search", help="grid-search the breakpoint or a compensation constant")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--breakpoint", action="store_true")
    group.add_argument("--compensation", choices=("even", "odd"))
    p.add_argument("--resolution", type=float, default=None)
    p.set_defaults(func=cmd_search)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        if args.command == "search" and args.resolution is None:
            args.resolution = 1e-3 if args.breakpoint else 1e-4
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args, out)
    except OSError as exc:
        print(f"e2afs: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (PnmError, ValueError) as exc:
        print(f"e2afs: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
