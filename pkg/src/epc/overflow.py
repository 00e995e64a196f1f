"""Code choice maximizing the buffer-overflow decay rate.

A buffer drains one bit per unit time while codewords of random symbols
arrive separated by random intermissions T. The chance that the backlog ever
exceeds b bits falls like e^(-s*b), where s* is the largest s at which

    f(s) = E[e^(-sT)] * sum_i p(i) e^(s n(i))

stays at or below one. Larger s* means faster decay, so the optimizer looks
for the code maximizing s*: pick a bound s0, build the best code for the
exponential penalty at base e^(s0), measure its s*, rebuild at that base,
and repeat until the code reproduces itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import DivergenceError, EpcError, StabilityError
from .golomb import GolombCode, golomb_exp_penalty, optimal_k_exponential
from .huffman import exp_huffman
from .light_tail import UnaryEndedCode, build_unary_ended
from .models import (ExplicitFinite, ExplicitTailed, Geometric, LengthSeq,
                     Poisson, SourceModel, expected_length, point_mass,
                     power_sum, shannon_entropy, tail_weight, total_mass)
from .numeric import LN2

__all__ = [
    "Deterministic", "ExponentialArrivals", "GammaArrivals", "TableTransform",
    "ArrivalModel", "DecayRate", "OverflowResult",
    "overflow_functional", "max_decay_rate", "decay_rate_bound",
    "optimize_overflow",
]

_S_TOL = 1e-10
_SUM_REL = 1e-12


# ------------------------------------------------------------- intermissions

@dataclass(frozen=True)
class Deterministic:
    """Every intermission lasts exactly `gap` time units."""

    gap: float

    def __post_init__(self) -> None:
        if self.gap < 1.0:
            raise StabilityError(
                "deterministic intermission must be at least one bit time")

    def transform(self, s: float) -> float:
        return math.exp(-s * self.gap)

    def mean_gap(self) -> float:
        return self.gap


@dataclass(frozen=True)
class ExponentialArrivals:
    """Memoryless intermissions with the given rate."""

    rate: float

    def __post_init__(self) -> None:
        if self.rate <= 0.0:
            raise ValueError("rate must be positive")

    def transform(self, s: float) -> float:
        return self.rate / (self.rate + s)

    def mean_gap(self) -> float:
        return 1.0 / self.rate


@dataclass(frozen=True)
class GammaArrivals:
    shape: float
    rate: float

    def __post_init__(self) -> None:
        if self.shape <= 0.0 or self.rate <= 0.0:
            raise ValueError("shape and rate must be positive")

    def transform(self, s: float) -> float:
        return (self.rate / (self.rate + s)) ** self.shape

    def mean_gap(self) -> float:
        return self.shape / self.rate


@dataclass(frozen=True)
class TableTransform:
    """User-measured transform samples (s, value), log-linearly interpolated.

    The first sample must be (0, 1). Beyond the last sample the final
    segment's log-slope extrapolates.
    """

    samples: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        samples = tuple((float(s), float(v)) for s, v in self.samples)
        object.__setattr__(self, "samples", samples)
        if len(samples) < 2:
            raise ValueError("need at least two samples")
        if samples[0] != (0.0, 1.0):
            raise ValueError("first sample must be (0, 1)")
        ss = [s for s, _ in samples]
        vs = [v for _, v in samples]
        if any(a >= b for a, b in zip(ss, ss[1:])):
            raise ValueError("sample points must be strictly increasing")
        if any(v <= 0.0 or v > 1.0 for v in vs):
            raise ValueError("transform values must lie in (0, 1]")
        if any(a < b for a, b in zip(vs, vs[1:])):
            raise ValueError("transform values must be nonincreasing")

    def transform(self, s: float) -> float:
        if s < 0.0:
            raise ValueError("s must be nonnegative")
        pts = self.samples
        hi = 1
        while hi < len(pts) - 1 and pts[hi][0] < s:
            hi += 1
        (s0, v0), (s1, v1) = pts[hi - 1], pts[hi]
        slope = (math.log(v1) - math.log(v0)) / (s1 - s0)
        return math.exp(math.log(v0) + slope * (s - s0))

    def mean_gap(self) -> float:
        (s0, v0), (s1, v1) = self.samples[0], self.samples[1]
        return -(math.log(v1) - math.log(v0)) / (s1 - s0)


ArrivalModel = Union[Deterministic, ExponentialArrivals, GammaArrivals,
                     TableTransform]

CodeLike = Union[GolombCode, UnaryEndedCode, LengthSeq]


class DecayRate(NamedTuple):
    value: float
    at_boundary: bool   # True when no positive s keeps f at or below one


@dataclass(frozen=True)
class OverflowResult:
    code: CodeLike
    decay_rate: float
    at_boundary: bool
    trace: tuple          # (decay rate, code) per iterate
    iterations: int

    def overflow_estimate(self, buffer_bits: float) -> float:
        return math.exp(-self.decay_rate * buffer_bits)


# ------------------------------------------------------------ the functional

def _golomb_power_sum(model: SourceModel, code: GolombCode, base: float) -> float:
    """sum p(i) base**n(i) for a Golomb code on a non-geometric source,
    truncated once the remainder is certifiably negligible."""
    k, g = code.k, code.suffix_bits
    acc = 0.0
    i = 0
    while i < 10 ** 6:
        stop = i + 64
        while i < stop:
            acc += point_mass(model, i) * base ** code.length(i)
            i += 1
        if base <= 1.0:
            remainder = base * tail_weight(model, i - 1, 1.0)
        else:
            b = base ** (1.0 / k)
            remainder = base ** (1 + g) * b ** (i - 1) * tail_weight(model, i - 1, b)
        if remainder < _SUM_REL * max(acc, 1.0):
            return acc
    raise DivergenceError("power sum did not settle")


def _code_power_sum(model: SourceModel, code: CodeLike, base: float) -> float:
    if isinstance(code, LengthSeq):
        return power_sum(model, code, base)
    if isinstance(code, UnaryEndedCode):
        return power_sum(model, code.lengths(), base)
    if isinstance(code, GolombCode):
        if isinstance(model, Geometric):
            if base == 1.0:
                return total_mass(model)
            return base ** golomb_exp_penalty(model.ratio, base, code.k)
        return _golomb_power_sum(model, code, base)
    raise TypeError(f"not a usable code: {code!r}")


def overflow_functional(model: SourceModel, code: CodeLike,
                        arrivals: ArrivalModel, s: float) -> float:
    """f(s) above; exactly the source mass at s = 0."""
    if s < 0.0:
        raise ValueError("s must be nonnegative")
    if s == 0.0:
        return total_mass(model)
    return arrivals.transform(s) * _code_power_sum(model, code, math.exp(s))


# ------------------------------------------------------------- s* search

def _expected_len(model: SourceModel, code: CodeLike) -> float:
    if isinstance(code, LengthSeq):
        return expected_length(model, code)
    if isinstance(code, UnaryEndedCode):
        return expected_length(model, code.lengths())
    if isinstance(code, GolombCode):
        if isinstance(model, Geometric):
            return golomb_exp_penalty(model.ratio, 1.0, code.k)
        raise ValueError("Golomb mean length needs a geometric source")
    raise TypeError(f"not a usable code: {code!r}")


def _model_tail_ratio(model: SourceModel):
    if isinstance(model, Geometric):
        return model.ratio
    if isinstance(model, ExplicitTailed):
        return model.tail_ratio
    return None   # Poisson decays faster than any geometric; finite has no tail


def _divergence_point(model: SourceModel, code: CodeLike) -> float:
    rho = _model_tail_ratio(model)
    if isinstance(model, ExplicitFinite) or (
            isinstance(code, LengthSeq) and code.tail is None):
        return math.inf
    if rho is None:
        return math.inf
    per_symbol = 1.0 / code.k if isinstance(code, GolombCode) else 1.0
    # sum terms behave like (rho * base**per_symbol)**i
    return -math.log(rho) / per_symbol


def max_decay_rate(model: SourceModel, code: CodeLike,
                   arrivals: ArrivalModel) -> DecayRate:
    """Largest s with f(s) <= 1.

    f is log-convex with f(0) = 1, so the feasible set is an interval
    starting at zero; it is the single point {0} exactly when the mean
    codeword length reaches the mean intermission.
    """
    if _expected_len(model, code) >= arrivals.mean_gap():
        return DecayRate(0.0, True)

    def f_or_inf(s: float) -> float:
        try:
            return overflow_functional(model, code, arrivals, s)
        except DivergenceError:
            return math.inf

    s_div = _divergence_point(model, code)
    lo = 0.0
    if math.isfinite(s_div):
        hi = s_div / 2.0
        while f_or_inf(hi) <= 1.0:
            lo = hi
            nxt = (hi + s_div) / 2.0
            if nxt <= hi:   # float resolution exhausted against the pole
                return DecayRate(hi, False)
            hi = nxt
    else:
        hi = 0.5
        while True:
            try:
                crossed = f_or_inf(hi) > 1.0
            except OverflowError:
                # e^s itself overflowed with f still at or below one: the
                # backlog shrinks at every tilt, there is no finite optimum
                raise DivergenceError("f never exceeds one; no finite optimum")
            if crossed:
                break
            lo = hi
            hi *= 2.0
            if hi > 2.0 ** 40:
                raise DivergenceError("f never exceeds one; no finite optimum")
    while hi - lo > _S_TOL:
        mid = (lo + hi) / 2.0
        if f_or_inf(mid) <= 1.0:
            lo = mid
        else:
            hi = mid
    return DecayRate(lo, False)


# ------------------------------------------------------------ initial bound

def _ln_renyi_sum(model: SourceModel, alpha: float, poisson_terms: int) -> float:
    """ln sum p(i)**alpha; a partial sum for Poisson, which only lowers the
    bound's left side and so never invalidates it."""
    if isinstance(model, Geometric):
        th = model.ratio
        return alpha * math.log(1.0 - th) - math.log1p(-(th ** alpha))
    if isinstance(model, ExplicitFinite):
        return math.log(math.fsum(p ** alpha for p in model.probs))
    if isinstance(model, Poisson):
        ln_p = [-model.mean + i * math.log(model.mean) - math.lgamma(i + 1)
                for i in range(poisson_terms)]
        return math.log(math.fsum(math.exp(alpha * lp) for lp in ln_p))
    if isinstance(model, ExplicitTailed):
        if model.tail_ratio is None:
            raise ValueError("the initial bound needs tail_ratio")
        rho_a = model.tail_ratio ** alpha
        z = math.fsum(p ** alpha for p in model.head)
        z += model.head[-1] ** alpha * rho_a / (1.0 - rho_a)
        return math.log(z)
    raise TypeError(f"not a source model: {model!r}")


def decay_rate_bound(model: SourceModel, arrivals: ArrivalModel) -> float:
    """An s0 at or above every achievable decay rate: the largest s where
    the transform times the alpha-norm lower bound on the power sum stays
    at or below one. Zero when the source entropy already meets the mean
    intermission."""
    mean_gap = arrivals.mean_gap()
    if shannon_entropy(model) >= mean_gap:
        return 0.0
    # enough terms that the partial alpha-sum still forces a finite crossing
    poisson_terms = max(256, 1 << min(int(math.ceil(mean_gap)) + 3, 20))

    def ln_left(s: float) -> float:
        alpha = 1.0 / (1.0 + s / LN2)
        return (math.log(arrivals.transform(s))
                + _ln_renyi_sum(model, alpha, poisson_terms) / alpha)

    lo, hi = 0.0, 1.0
    while ln_left(hi) <= 0.0:
        lo = hi
        hi *= 2.0
        if hi > 2.0 ** 40:
            raise EpcError("initial bound did not close; arrivals too slow")
    while hi - lo > _S_TOL:
        mid = (lo + hi) / 2.0
        if ln_left(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return lo


# --------------------------------------------------------------- optimizer

def optimize_overflow(model: SourceModel,
                      arrivals: ArrivalModel) -> OverflowResult:
    """Fixed-point iteration: build the exponential-penalty-optimal code at
    base e**s, re-measure s, repeat until the code reproduces itself."""
    s_prev = decay_rate_bound(model, arrivals)
    prev_code = None
    boundary = False
    trace = []
    for _ in range(64):
        base = math.exp(s_prev)
        if isinstance(model, Geometric):
            code: CodeLike = GolombCode(optimal_k_exponential(model.ratio, base))
        elif isinstance(model, ExplicitFinite):
            code = LengthSeq(tuple(exp_huffman(model.probs, base).lengths))
        else:
            code = build_unary_ended(model, base)
        if code == prev_code:
            return OverflowResult(prev_code, s_prev, boundary, tuple(trace),
                                  len(trace))
        rate = max_decay_rate(model, code, arrivals)
        trace.append((rate.value, code))
        s_prev, boundary, prev_code = rate.value, rate.at_boundary, code
    raise EpcError("fixed-point iteration did not settle in 64 rounds")
