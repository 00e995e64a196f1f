"""Independent oracles the tests compare the library against.

Everything here is deliberately brute force: exhaustive tree enumeration,
direct summation with explicit remainder bounds, and grid scans. Nothing
imports from the package.
"""
import math
from fractions import Fraction
from functools import lru_cache

ORACLE_TOL = 1e-15


# ---------------------------------------------- exhaustive tree enumeration

@lru_cache(maxsize=None)
def all_length_multisets(n: int) -> frozenset:
    """Every codeword-length multiset a full binary tree with n leaves can
    realize, as sorted tuples."""
    if n == 1:
        return frozenset({(0,)})
    out = set()
    for left in range(1, n // 2 + 1):
        for ls in all_length_multisets(left):
            for rs in all_length_multisets(n - left):
                out.add(tuple(sorted(d + 1 for d in ls + rs)))
    return frozenset(out)


def _pair(weights, lengths):
    """Extremal assignment: heaviest weight gets the shortest length."""
    return list(zip(sorted(weights, reverse=True), sorted(lengths)))


def exp_objective(weights, lengths, base: float) -> float:
    pairs = _pair(weights, lengths)
    if base == 1.0:
        return math.fsum(w * n for w, n in pairs)
    return math.log(math.fsum(w * base ** n for w, n in pairs)) / math.log(base)


def maxred_objective(weights, lengths) -> float:
    return max(n + math.log2(w) for w, n in _pair(weights, lengths))


def dth_objective(probs, lengths, order: float) -> float:
    # evaluated with a shifted log-sum so huge orders stay finite
    pairs = _pair(probs, lengths)
    logs = [(1 + order) * math.log2(p) + order * n for p, n in pairs]
    top = max(logs)
    return (top + math.log2(math.fsum(2.0 ** (x - top) for x in logs))) / order


def best_tree_objective(weights, evaluate) -> float:
    """min over all length multisets of the extremal-assignment objective."""
    return min(evaluate(weights, ls) for ls in all_length_multisets(len(weights)))


# --------------------------------------------------- direct certified sums

def golomb_len(i: int, k: int) -> int:
    g = k.bit_length()
    q, r = divmod(i, k)
    return q + 1 + (g - 1 if r < (1 << g) - k else g)


def geometric_pmf(ratio: float, i: int) -> float:
    return (1.0 - ratio) * ratio ** i


def poisson_pmf(mean: float, i: int) -> float:
    return math.exp(-mean + i * math.log(mean) - math.lgamma(i + 1))


def golomb_power_sum_direct(ratio: float, base: float, k: int,
                            tol: float = ORACLE_TOL) -> float:
    """sum_i (1-ratio) ratio^i base^(n_k(i)) by brute force; the per-period
    factor is ratio^k * base, so the remainder after a whole period is the
    last period's sum times factor/(1-factor).

    Each term is assembled in the log domain: when the factor is close to 1
    the sum needs thousands of periods and base^n overflows on its own even
    though every pmf-weighted term stays bounded."""
    factor = ratio ** k * base
    if factor >= 1.0:
        raise ArithmeticError("diverges")
    ln_p0, ln_r, ln_b = math.log(1.0 - ratio), math.log(ratio), math.log(base)

    def term(idx: int) -> float:
        return math.exp(ln_p0 + idx * ln_r + golomb_len(idx, k) * ln_b)

    total, i = 0.0, 0
    while True:
        period = math.fsum(term(i + j) for j in range(k))
        total += period
        i += k
        if period * factor / (1.0 - factor) < tol * max(total, 1.0):
            return total


def unary_tail_power_sum_direct(pmf, head_lengths, tail_start: int,
                                tail_len0: int, base: float, ratio_bound: float,
                                tol: float = ORACLE_TOL) -> float:
    """sum p(i) base^(n(i)) for a head plus +1-per-symbol tail; pmf tail must
    be dominated by a geometric with the given ratio."""
    factor = ratio_bound * base
    if factor >= 1.0:
        raise ArithmeticError("diverges")
    total = math.fsum(pmf(i) * base ** n for i, n in enumerate(head_lengths))
    i, n = tail_start, tail_len0
    while True:
        term = pmf(i) * base ** n
        total += term
        if term * factor / (1.0 - factor) < tol * max(total, 1.0) and i > tail_start + 8:
            return total
        i, n = i + 1, n + 1


def mmr_sup_scan(ratio: float, k: int, limit: int = 10 ** 4):
    """Numeric supremum of n_k(i) + log2 p(i) over i < limit; returns
    (value, still_rising) where still_rising flags an unbounded climb."""
    best, best_at = -math.inf, 0
    l2p0, l2r = math.log2(1.0 - ratio), math.log2(ratio)
    for i in range(limit):
        v = golomb_len(i, k) + l2p0 + i * l2r
        if v > best:
            best, best_at = v, i
    return best, best_at > limit - 2 * k


# --------------------------------------------------- reduced geometric source

def reduced_weight_set(ratio: float, base: float, k: int, m: int = 60):
    """Finite stand-in for a geometric source under an exponential penalty:
    plain weights up to m, then one period of tail-class aggregates."""
    q = base * ratio ** k
    assert q < 1.0
    w = [geometric_pmf(ratio, i) for i in range(m + 1)]
    w += [base * geometric_pmf(ratio, i) / (1.0 - q)
          for i in range(m + 1, m + k + 1)]
    return w


def infer_period(lengths, head_stop: int):
    """Smallest shift t with n(i+t) == n(i) + 1 across the head window,
    or None."""
    for t in range(1, head_stop):
        if all(lengths[i + t] == lengths[i] + 1
               for i in range(head_stop - t - 1)):
            return t
    return None


# ----------------------------------------------------------- kraft, scans

def kraft_fraction(lengths) -> Fraction:
    return sum((Fraction(1, 2 ** n) for n in lengths), Fraction(0))


def largest_feasible_on_grid(f, hi: float, steps: int) -> float:
    """Largest grid point s in [0, hi] with f(s) <= 1; f may raise
    ArithmeticError past a divergence point."""
    best = 0.0
    for i in range(steps + 1):
        s = hi * i / steps
        try:
            if f(s) <= 1.0:
                best = s
        except ArithmeticError:
            break
    return best
