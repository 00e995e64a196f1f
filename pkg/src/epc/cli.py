"""Command line front end.

Subcommands:
  optimize   best code for a source under a penalty
  huffman    run a tree engine on raw weights
  encode     pack symbols into the container format
  decode     unpack a container back to symbols
  overflow   buffer-overflow decay rate optimization
  sweep      CSV data sets for the analytic figures

Exit status: 0 on success, 1 on a domain error (bad parameter values,
divergent sums, malformed containers), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import math
import sys

from .analysis import SweepSpec, sweep
from .codec import ExplicitCode, decode, encode
from .errors import EpcError
from .golomb import (GolombCode, golomb_dth_penalty, golomb_exp_penalty,
                     golomb_mmr, optimal_k_dth, optimal_k_exponential,
                     optimal_k_mmr)
from .huffman import dth_huffman, exp_huffman, maxred_huffman
from .light_tail import build_unary_ended, build_unary_ended_mmr
from .models import (DthRedundancy, ExplicitFinite, Exponential, Geometric,
                     Linear, MaxRedundancy, Poisson, evaluate_penalty)
from .overflow import (Deterministic, ExponentialArrivals, GammaArrivals,
                       TableTransform, optimize_overflow)

__all__ = ["run", "main"]


def _parse_penalty(text: str):
    """exp:<base> | dth:<order> | mmr | linear"""
    if text == "mmr":
        return MaxRedundancy()
    if text == "linear":
        return Linear()
    kind, sep, arg = text.partition(":")
    if sep and kind == "exp":
        base = float(arg)
        return Linear() if base == 1.0 else Exponential(base)
    if sep and kind == "dth":
        return DthRedundancy(int(arg))
    raise ValueError(f"unknown penalty {text!r}")


def _read_weights(path: str) -> list[float]:
    with open(path) as fh:
        return [float(tok) for tok in fh.read().split()]


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    grp = sub.add_mutually_exclusive_group(required=True)
    grp.add_argument("--geometric", type=float, metavar="RATIO",
                     help="geometric source with the given ratio")
    grp.add_argument("--poisson", type=float, metavar="MEAN",
                     help="Poisson source with the given mean")
    grp.add_argument("--weights", metavar="FILE",
                     help="finite source, whitespace-separated weights")


def _model_from(args):
    if args.geometric is not None:
        return Geometric(args.geometric)
    if args.poisson is not None:
        return Poisson(args.poisson)
    w = _read_weights(args.weights)
    total = math.fsum(w)
    if total <= 0.0:
        raise ValueError("weights must have positive total")
    return ExplicitFinite(tuple(x / total for x in w))


def _print_lengths(lengths) -> None:
    print("lengths " + ",".join(str(n) for n in lengths))


# ----------------------------------------------------------------- optimize

def _golomb_for(ratio: float, penalty) -> tuple[GolombCode, float]:
    if isinstance(penalty, Linear):
        k = optimal_k_exponential(ratio, 1.0)
        return GolombCode(k), golomb_exp_penalty(ratio, 1.0, k)
    if isinstance(penalty, Exponential):
        k = optimal_k_exponential(ratio, penalty.base)
        return GolombCode(k), golomb_exp_penalty(ratio, penalty.base, k)
    if isinstance(penalty, MaxRedundancy):
        k = optimal_k_mmr(ratio)
        return GolombCode(k), golomb_mmr(ratio, k)
    k = optimal_k_dth(ratio, penalty.order)
    return GolombCode(k), golomb_dth_penalty(ratio, penalty.order, k)


def _cmd_optimize(args) -> int:
    model = _model_from(args)
    penalty = args.penalty
    if isinstance(model, Geometric):
        code, value = _golomb_for(model.ratio, penalty)
        print(code)
    elif isinstance(model, ExplicitFinite):
        tree = _run_engine(model.probs, penalty)
        _print_lengths(tree.lengths)
        value = tree.objective
    else:
        if isinstance(penalty, DthRedundancy):
            raise ValueError(
                "dth-power redundancy codes need a geometric source")
        if isinstance(penalty, MaxRedundancy):
            code = build_unary_ended_mmr(model)
        else:
            base = 1.0 if isinstance(penalty, Linear) else penalty.base
            code = build_unary_ended(model, base)
        print(code)
        value = evaluate_penalty(model, code.lengths(), penalty)
    print("penalty %.12g" % value)
    return 0


def _run_engine(weights, penalty):
    if isinstance(penalty, Linear):
        return exp_huffman(weights, 1.0)
    if isinstance(penalty, Exponential):
        return exp_huffman(weights, penalty.base)
    if isinstance(penalty, MaxRedundancy):
        return maxred_huffman(weights)
    return dth_huffman(weights, penalty.order)


def _cmd_huffman(args) -> int:
    tree = _run_engine(_read_weights(args.weights), args.penalty)
    _print_lengths(tree.lengths)
    print("objective %.12g" % tree.objective)
    return 0


# ------------------------------------------------------------ encode/decode

def _code_for_stream(args):
    if args.golomb is not None:
        return GolombCode(args.golomb)
    model = _model_from(args)
    penalty = args.penalty
    if isinstance(model, Geometric):
        return _golomb_for(model.ratio, penalty)[0]
    if isinstance(model, ExplicitFinite):
        return ExplicitCode.from_lengths(_run_engine(model.probs,
                                                     penalty).lengths)
    if isinstance(penalty, MaxRedundancy):
        return build_unary_ended_mmr(model)
    if isinstance(penalty, DthRedundancy):
        raise ValueError("dth-power redundancy codes need a geometric source")
    base = 1.0 if isinstance(penalty, Linear) else penalty.base
    return build_unary_ended(model, base)


def _cmd_encode(args) -> int:
    code = _code_for_stream(args)
    if args.input is None:
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    symbols = [int(tok) for tok in text.split()]
    blob = encode(symbols, code)
    with open(args.output, "wb") as fh:
        fh.write(blob)
    print(f"{code}: {len(symbols)} symbols -> {len(blob)} bytes")
    return 0


def _cmd_decode(args) -> int:
    with open(args.input, "rb") as fh:
        data = fh.read()
    for sym in decode(data):
        print(sym)
    return 0


# ----------------------------------------------------------------- overflow

def _read_table(path: str) -> TableTransform:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            rows.append((float(parts[0]), float(parts[1])))
    return TableTransform(tuple(rows))


def _arrivals_from(args):
    if args.deterministic is not None:
        return Deterministic(args.deterministic)
    if args.exponential is not None:
        return ExponentialArrivals(args.exponential)
    if args.gamma is not None:
        return GammaArrivals(args.gamma[0], args.gamma[1])
    return _read_table(args.table)


def _cmd_overflow(args) -> int:
    result = optimize_overflow(_model_from(args), _arrivals_from(args))
    if args.trace:
        for i, (rate, code) in enumerate(result.trace, 1):
            print("iter %d: decay rate %.12g  %s" % (i, rate, code))
    print(result.code)
    print("decay rate %.12g" % result.decay_rate)
    if result.at_boundary:
        print("at stability boundary")
    if args.buffer_size is not None:
        print("overflow estimate at %g bits: %.6g"
              % (args.buffer_size, result.overflow_estimate(args.buffer_size)))
    return 0


# -------------------------------------------------------------------- sweep

def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(","))


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(","))


def _cmd_sweep(args) -> int:
    kwargs = dict(figure=args.figure)
    for name in ("ratio_start", "ratio_stop", "ratio_step",
                 "base_start", "base_stop", "base_step"):
        val = getattr(args, name)
        if val is not None:
            kwargs[name] = val
    if args.bases is not None:
        kwargs["bases"] = args.bases
    if args.orders is not None:
        kwargs["orders"] = args.orders
    text = sweep(SweepSpec(**kwargs))
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return 0


# ------------------------------------------------------------------ parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epc", description="prefix codes under exponential penalties")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("optimize", help="best code for a source")
    _add_model_flags(p)
    p.add_argument("--penalty", type=_parse_penalty, default=Linear(),
                   help="exp:<base> | dth:<order> | mmr | linear")
    p.set_defaults(func=_cmd_optimize)

    p = subs.add_parser("huffman", help="tree engine on raw weights")
    p.add_argument("--weights", required=True, metavar="FILE")
    p.add_argument("--penalty", type=_parse_penalty, default=Linear())
    p.set_defaults(func=_cmd_huffman)

    p = subs.add_parser("encode", help="pack symbols into a container")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--golomb", type=int, metavar="K")
    grp.add_argument("--geometric", type=float, metavar="RATIO")
    grp.add_argument("--poisson", type=float, metavar="MEAN")
    grp.add_argument("--weights", metavar="FILE")
    p.add_argument("--penalty", type=_parse_penalty, default=Linear())
    p.add_argument("--input", metavar="FILE",
                   help="whitespace-separated integers (default stdin)")
    p.add_argument("--output", required=True, metavar="FILE")
    p.set_defaults(func=_cmd_encode)

    p = subs.add_parser("decode", help="unpack a container")
    p.add_argument("--input", required=True, metavar="FILE")
    p.set_defaults(func=_cmd_decode)

    p = subs.add_parser("overflow", help="optimize the overflow decay rate")
    _add_model_flags(p)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--deterministic", type=float, metavar="GAP")
    grp.add_argument("--exponential", type=float, metavar="RATE")
    grp.add_argument("--gamma", type=float, nargs=2,
                     metavar=("SHAPE", "RATE"))
    grp.add_argument("--table", metavar="FILE",
                     help="sampled intermission transform, rows of s,value")
    p.add_argument("--trace", action="store_true",
                   help="print every fixed-point iterate")
    p.add_argument("--buffer-size", type=float, metavar="BITS")
    p.set_defaults(func=_cmd_overflow)

    p = subs.add_parser("sweep", help="figure data sets as CSV")
    p.add_argument("--figure", type=int, required=True, choices=(2, 3, 4, 5))
    p.add_argument("--ratio-start", type=float)
    p.add_argument("--ratio-stop", type=float)
    p.add_argument("--ratio-step", type=float)
    p.add_argument("--bases", type=_float_list,
                   help="comma-separated exponential bases (figure 2)")
    p.add_argument("--base-start", type=float)
    p.add_argument("--base-stop", type=float)
    p.add_argument("--base-step", type=float)
    p.add_argument("--orders", type=_int_list,
                   help="comma-separated redundancy orders (figure 5)")
    p.add_argument("--output", metavar="FILE")
    p.set_defaults(func=_cmd_sweep)

    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except (EpcError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
