"""Redundancy evaluation and the analytic sweeps behind the plots.

Redundancy here is always penalty minus the matching entropy: the Renyi
entropy of order 1/(1 + log2 base) for the exponential penalty, Shannon
for the plain mean. The closed forms for geometric sources oscillate in
log2(-1/log2 theta); the sweep writers sample those curves on regular
grids and emit plain CSV.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional

from .golomb import (golomb_dth_penalty, golomb_exp_penalty, golomb_mmr,
                     optimal_k_dth, optimal_k_exponential, optimal_k_mmr)
from .models import (Exponential, Geometric, LengthSeq, SourceModel,
                     evaluate_penalty, renyi_entropy, shannon_entropy)
from .numeric import frac_snapped

__all__ = [
    "avg_redundancy", "mmr_optimal_redundancy",
    "mmr_asymptotic", "avg_redundancy_asymptotic",
    "SweepSpec", "sweep",
]

_LOG2_LOG2_E = math.log2(math.log2(math.e))


def avg_redundancy(model: SourceModel, lengths: LengthSeq,
                   base: float) -> float:
    """Exponential penalty minus the matching Renyi entropy."""
    return (evaluate_penalty(model, lengths, Exponential(base))
            - renyi_entropy(model, base))


def mmr_optimal_redundancy(ratio: float) -> float:
    """Best achievable worst-case pointwise redundancy for Geometric(ratio),
    ratio >= 1/2, in closed form."""
    if not 0.5 <= ratio < 1.0:
        raise ValueError("ratio must lie in [1/2, 1)")
    l2t = math.log2(ratio)
    k = optimal_k_mmr(ratio)
    fx = frac_snapped(math.log2(-1.0 / l2t))
    return (2.0 + math.log2(-(1.0 - ratio) / l2t) - k * l2t
            - 2.0 ** (1.0 - fx) - fx)


def mmr_asymptotic(x: float) -> float:
    """ratio -> 1 limit of the worst-case redundancy, as a function of the
    fractional part x of log2(-1/log2 ratio)."""
    fx = frac_snapped(x)
    return 3.0 - _LOG2_LOG2_E - 2.0 ** (1.0 - fx) - fx


def avg_redundancy_asymptotic(x: float) -> float:
    """ratio -> 1 limit of the mean-length redundancy on the same axis."""
    fx = frac_snapped(x)
    return (1.0 - _LOG2_LOG2_E - math.log2(math.e)
            + 2.0 ** (2.0 - 2.0 ** (1.0 - fx)) - fx)


# ------------------------------------------------------------------ sweeps

def _arange(start: float, stop: float, step: float) -> list[float]:
    # inclusive endpoint up to snap tolerance; avoids drift of repeated adds
    n = int(math.floor((stop - start) / step + 1e-9))
    return [start + i * step for i in range(n + 1)]


@dataclass(frozen=True)
class SweepSpec:
    """Grid parameters for one figure's data set.

    figure 2: penalty vs ratio for several exponential bases
    figure 3: mean length vs ratio (base 1)
    figure 4: limiting base-dependence factor
    figure 5: worst-case curves vs the oscillation coordinate
    """

    figure: int
    ratio_start: Optional[float] = None
    ratio_stop: Optional[float] = None
    ratio_step: Optional[float] = None
    bases: tuple[float, ...] = (0.75, 0.9, 1.1, 1.25, 1.5, 2.0)
    base_start: float = 0.5
    base_stop: float = 4.0
    base_step: float = 0.01
    orders: tuple[int, ...] = (1, 2, 4, 16, 256, 65536)

    def __post_init__(self) -> None:
        if self.figure not in (2, 3, 4, 5):
            raise ValueError("figure must be 2, 3, 4 or 5")

    def ratios(self) -> list[float]:
        defaults = {2: (0.05, 0.95, 0.01), 3: (0.05, 0.95, 0.01),
                    5: (0.5, 0.99, 0.005)}
        start, stop, step = defaults.get(self.figure, (0.0, 0.0, 1.0))
        if self.ratio_start is not None:
            start = self.ratio_start
        if self.ratio_stop is not None:
            stop = self.ratio_stop
        if self.ratio_step is not None:
            step = self.ratio_step
        return _arange(start, stop, step)


def _fmt(x: float) -> str:
    return "%.12g" % x


def sweep(spec: SweepSpec) -> str:
    """Render the figure's data set as CSV text, rows in grid order."""
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    if spec.figure == 2:
        w.writerow(["a", "theta", "k", "penalty", "entropy", "redundancy"])
        for a in spec.bases:
            if a <= 0.5:
                raise ValueError("exponential base must exceed 1/2")
            for th in spec.ratios():
                k = optimal_k_exponential(th, a)
                pen = golomb_exp_penalty(th, a, k)
                ent = renyi_entropy(Geometric(th), a)
                w.writerow([_fmt(a), _fmt(th), k, _fmt(pen), _fmt(ent),
                            _fmt(pen - ent)])
    elif spec.figure == 3:
        w.writerow(["theta", "k", "mean_length", "entropy", "redundancy"])
        for th in spec.ratios():
            k = optimal_k_exponential(th, 1.0)
            mean = golomb_exp_penalty(th, 1.0, k)
            ent = shannon_entropy(Geometric(th))
            w.writerow([_fmt(th), k, _fmt(mean), _fmt(ent), _fmt(mean - ent)])
    elif spec.figure == 4:
        w.writerow(["a", "g"])
        for a in _arange(spec.base_start, spec.base_stop, spec.base_step):
            g = (math.sqrt(1.0 + 4.0 / a) - 1.0) / 2.0
            w.writerow([_fmt(a), _fmt(g)])
    else:
        w.writerow(["theta", "x", "curve", "k", "value"])
        for th in spec.ratios():
            x = math.log2(-1.0 / math.log2(th))
            k = optimal_k_mmr(th)
            w.writerow([_fmt(th), _fmt(x), "mmr", k,
                        _fmt(golomb_mmr(th, k))])
            for d in spec.orders:
                kd = optimal_k_dth(th, d)
                w.writerow([_fmt(th), _fmt(x), "d=%d" % d, kd,
                            _fmt(golomb_dth_penalty(th, d, kd))])
    return out.getvalue()
