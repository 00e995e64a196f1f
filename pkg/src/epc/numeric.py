"""Small numeric helpers used across modules.

Discrete decisions (optimal parameters, ceilings, fractional parts) must not
flip on float log noise, so everything that feeds a ceil or floor goes through
an integer snap with a fixed absolute tolerance first.
"""
from __future__ import annotations

import math

SNAP_TOL = 1e-12

# absolute bound on the certified remainder of any truncated series
SUM_TOL = 1e-12

LN2 = math.log(2.0)


def snap(x: float, tol: float = SNAP_TOL) -> float:
    """Return the nearest integer when x is within tol of one, else x."""
    n = round(x)
    if abs(x - n) <= tol:
        return float(n)
    return x


def ceil_snapped(x: float) -> int:
    return math.ceil(snap(x))


def frac_snapped(x: float) -> float:
    """Fractional part of x; values within SNAP_TOL of an integer give 0.0."""
    s = snap(x)
    return s - math.floor(s)


def logaddexp(a: float, b: float) -> float:
    """log(e**a + e**b) without overflow."""
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))
