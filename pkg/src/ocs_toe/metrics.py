"""Evaluation metrics, computed in exact rational arithmetic.

Decimal rendering (3 places, round-half-even) happens only at the
reporting boundary; everything upstream compares exact Fractions.
"""

from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

from .model import Matrix


def ltcr(c: Matrix, x: Matrix) -> Fraction:
    """Logical topology compatibility rate: 1 minus normalized shortfall.

    Over-provisioned entries do not penalize.  Empty demand is defined
    as fully compatible (rate 1).
    """
    if len(c) != len(x) or any(len(a) != len(b) for a, b in zip(c, x)):
        raise ValueError("matrices must have the same shape")
    demand = sum(sum(row) for row in c)
    if demand == 0:
        return Fraction(1)
    shortfall = sum(
        c[i][j] - x[i][j]
        for i in range(len(c))
        for j in range(len(c))
        if x[i][j] < c[i][j]
    )
    return 1 - Fraction(shortfall, demand)


def mrar(u: list, x: list) -> Fraction:
    """Min-rewiring achievement rate: 1 minus normalized new links.

    u and x are same-shape nested integer structures (typically
    P x P x K tensors).  An all-zero new configuration is defined as
    rate 1 (nothing had to be established).
    """
    flat_u = list(_flatten(u))
    flat_x = list(_flatten(x))
    if len(flat_u) != len(flat_x):
        raise ValueError("tensors must have the same shape")
    total = sum(flat_x)
    if total == 0:
        return Fraction(1)
    new_links = sum(xv - uv for uv, xv in zip(flat_u, flat_x) if uv < xv)
    return 1 - Fraction(new_links, total)


def rewiring_cost(u: list, x: list) -> int:
    """Total links changed: sum of |x - u| element-wise."""
    flat_u = list(_flatten(u))
    flat_x = list(_flatten(x))
    if len(flat_u) != len(flat_x):
        raise ValueError("tensors must have the same shape")
    return sum(abs(xv - uv) for uv, xv in zip(flat_u, flat_x))


def render_rational(value: Fraction | None) -> str:
    """Render a rational with 3 decimals, round-half-even; '' for None."""
    if value is None:
        return ""
    dec = Decimal(value.numerator) / Decimal(value.denominator)
    return str(dec.quantize(Decimal("0.001"), rounding=ROUND_HALF_EVEN))


def _flatten(value):
    if isinstance(value, int):
        yield value
    else:
        for item in value:
            yield from _flatten(item)
