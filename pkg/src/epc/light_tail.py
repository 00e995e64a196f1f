"""Optimal codes for infinite alphabets whose tail decays fast enough.

The construction reduces the source to its first r+1 probabilities plus one
pseudo-symbol carrying the (penalty-weighted) tail, runs the finite optimizer
on that reduced set, and then replaces the pseudo-symbol's codeword with an
all-1s prefix from which the remaining symbols continue in unary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .bits import canonical_with_spine, kraft_total
from .errors import NotLightTailedError
from .huffman import exp_huffman, maxred_huffman
from .models import (ExplicitFinite, ExplicitTailed, Geometric, LengthSeq,
                     Poisson, SourceModel, UnaryTail, point_mass, tail_weight)
from .numeric import ceil_snapped

__all__ = [
    "UnaryEndedCode",
    "find_split_exponential", "find_split_mmr",
    "build_unary_ended", "build_unary_ended_mmr",
]

_REL_TOL = 1e-12
_WINDOW = 128
_SPLIT_CAP = 10 ** 4


@dataclass(frozen=True)
class UnaryEndedCode:
    """Finite head code plus a unary continuation behind an all-1s prefix.

    Symbols 0..split use head_codewords; symbol i > split encodes as
    tail_prefix, then i - split - 1 ones, then a zero.
    """

    head_codewords: tuple[str, ...]
    tail_prefix: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "head_codewords",
                           tuple(str(w) for w in self.head_codewords))
        words = list(self.head_codewords) + [self.tail_prefix]
        if any(not w or set(w) - {"0", "1"} for w in words):
            raise ValueError("codewords must be nonempty bit strings")
        if set(self.tail_prefix) != {"1"}:
            raise ValueError("tail prefix must be all 1s")
        ordered = sorted(words)
        for a, b in zip(ordered, ordered[1:]):
            if b.startswith(a):
                raise ValueError(f"codeword {a!r} is a prefix of {b!r}")
        num, den = kraft_total([len(w) for w in self.head_codewords],
                               extra_length=len(self.tail_prefix))
        if num != den:
            raise ValueError("code is not Kraft-complete")

    @property
    def split(self) -> int:
        return len(self.head_codewords) - 1

    @property
    def tail_start(self) -> int:
        return len(self.head_codewords)

    @property
    def head_lengths(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.head_codewords)

    def codeword(self, i: int) -> str:
        if i < 0:
            raise ValueError("symbols are nonnegative")
        if i <= self.split:
            return self.head_codewords[i]
        return self.tail_prefix + "1" * (i - self.split - 1) + "0"

    def length(self, i: int) -> int:
        return len(self.codeword(i)) if i <= self.split else \
            len(self.tail_prefix) + 1 + (i - self.split - 1)

    def lengths(self) -> LengthSeq:
        return LengthSeq(self.head_lengths,
                         UnaryTail(self.tail_start, len(self.tail_prefix) + 1))

    def describe(self) -> str:
        shown = list(self.head_lengths) + [len(self.tail_prefix) + 1]
        return ("lengths " + ",".join(str(n) for n in shown)
                + f" +unary@{self.tail_start}")

    def __str__(self) -> str:
        return self.describe()


# ------------------------------------------------------------ split search

def _minprefix_ok(value: float, floor: float) -> bool:
    return value <= floor * (1.0 + _REL_TOL)


def find_split_exponential(model: SourceModel, base: float) -> int:
    """Smallest r past which every symbol's probability is dominated by all
    earlier ones and also dominates its own weighted tail; the reduction to
    r+2 weights is then penalty-exact."""
    if base <= 0.0:
        raise ValueError("base must be positive")
    if isinstance(model, Poisson):
        return max(ceil_snapped(2.0 * base * model.mean) - 2,
                   ceil_snapped(math.e * model.mean) - 1, 0)
    if isinstance(model, Geometric):
        th = model.ratio
        if base * (th + th * th) <= 1.0 + _REL_TOL:
            return 0
        raise NotLightTailedError(
            "geometric tail too heavy at this base; use a Golomb code")
    if isinstance(model, ExplicitTailed):
        if model.tail_ratio is None:
            raise NotLightTailedError(
                "cannot certify tail decay without tail_ratio")
        rho = model.tail_ratio
        if base <= 0.5 and _head_nonincreasing(model):
            return 0
        # beyond the probe window the tail is purely geometric; there the
        # step-to-step parts of the dominance conditions reduce to
        # base*(rho + rho^2) <= 1
        if base * (rho + rho * rho) > 1.0 + _REL_TOL:
            raise NotLightTailedError("tail ratio too large for this base")
        probe_end = max(len(model.head), _WINDOW)
        floor = point_mass(model, 0)
        worst = 0
        for j in range(1, probe_end + 1):
            pj = point_mass(model, j)
            tw = tail_weight(model, j, base)
            if not (_minprefix_ok(pj, floor) and _minprefix_ok(tw, floor)):
                worst = j
            floor = min(floor, pj)
        # in the pure tail both conditions collapse to max(1,c)*p(j) <= floor
        # with c the tail-weight factor; solve for where that starts holding
        c = base * rho / (1.0 - base * rho)
        worst = max(worst, _tail_threshold(
            point_mass(model, probe_end + 1) * max(1.0, c), floor, rho,
            probe_end + 1) - 1)
        if worst > _SPLIT_CAP:
            raise NotLightTailedError(f"no split found at or below {_SPLIT_CAP}")
        return worst
    if isinstance(model, ExplicitFinite):
        raise ValueError("finite sources need no tail split")
    raise TypeError(f"not a source model: {model!r}")


def _tail_threshold(first_value: float, floor: float, rho: float,
                    first_index: int) -> int:
    """Smallest index at or past first_index where a geometric run starting
    at first_value has decayed to the floor."""
    if first_value <= floor * (1.0 + _REL_TOL):
        return first_index
    steps = ceil_snapped(math.log(floor / first_value) / math.log(rho))
    return first_index + max(steps, 0)


def _head_nonincreasing(model: ExplicitTailed) -> bool:
    h = model.head
    return all(h[i] >= h[i + 1] for i in range(len(h) - 1))


def find_split_mmr(model: SourceModel) -> int:
    """Smallest r with p(j) >= 2 p(j+1) for all j >= r and p(i) >= p(r) for
    all i < r; the mmr reduction doubles the first tail probability."""
    if isinstance(model, Poisson):
        return max(ceil_snapped(math.e * model.mean) - 1, 0)
    if isinstance(model, Geometric):
        if model.ratio <= 0.5 + _REL_TOL:
            return 0
        raise NotLightTailedError(
            "geometric ratio above 1/2 fails the halving rule; use a Golomb code")
    if isinstance(model, ExplicitTailed):
        if model.tail_ratio is None:
            raise NotLightTailedError(
                "cannot certify tail decay without tail_ratio")
        if model.tail_ratio > 0.5 + _REL_TOL:
            raise NotLightTailedError("tail ratio above 1/2 fails the halving rule")
        probe_end = max(len(model.head), _WINDOW)
        p = [point_mass(model, j) for j in range(probe_end + 2)]
        halving_from = 0
        for j in range(probe_end + 1):
            if p[j] < 2.0 * p[j + 1] - _REL_TOL * p[j]:
                halving_from = j + 1
        floor = math.inf   # min probability strictly before the candidate
        for r in range(probe_end + 2):
            if r >= halving_from and floor >= p[r] * (1.0 - _REL_TOL):
                return r
            floor = min(floor, p[r])
        # pure geometric tail from here on; find where it sinks under the floor
        r = max(halving_from, _tail_threshold(
            p[probe_end + 1], floor, model.tail_ratio, probe_end + 1))
        if r > _SPLIT_CAP:
            raise NotLightTailedError(f"no split found at or below {_SPLIT_CAP}")
        return r
    if isinstance(model, ExplicitFinite):
        raise ValueError("finite sources need no tail split")
    raise TypeError(f"not a source model: {model!r}")


# -------------------------------------------------------------- assembly

def _assemble(weights, multiset) -> list[int]:
    """Reassign an optimal length multiset so heavier items get shorter
    codewords (stable on ties). Any such rearrangement preserves the optimum
    under every penalty used here, and it pins down the worked-example
    length patterns exactly."""
    order = sorted(range(len(weights)), key=lambda i: (-weights[i], i))
    ranked = sorted(multiset)
    out = [0] * len(weights)
    for pos, i in enumerate(order):
        out[i] = ranked[pos]
    return out


def build_unary_ended(model: SourceModel, base: float) -> UnaryEndedCode:
    """Optimal infinite code under the base-exponential penalty for a
    light-tailed source: reduce at the split, optimize, attach the tail."""
    r = find_split_exponential(model, base)
    weights = [point_mass(model, i) for i in range(r + 1)]
    weights.append(tail_weight(model, r, base))
    tree = exp_huffman(weights, base)
    lengths = _assemble(weights, tree.lengths)
    head, spine = canonical_with_spine(lengths[:-1], lengths[-1])
    return UnaryEndedCode(head, spine)


def build_unary_ended_mmr(model: SourceModel) -> UnaryEndedCode:
    """Optimal infinite code under maximal pointwise redundancy for a
    source obeying the halving rule past the split."""
    r = find_split_mmr(model)
    weights = [point_mass(model, i) for i in range(r + 1)]
    weights.append(2.0 * point_mass(model, r + 1))
    tree = maxred_huffman(weights)
    lengths = _assemble(weights, tree.lengths)
    head, spine = canonical_with_spine(lengths[:-1], lengths[-1])
    return UnaryEndedCode(head, spine)
