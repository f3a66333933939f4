"""Degree-4 Salem polynomial enumeration.

Quartic minimal polynomials of Salem numbers are exactly the palindromic
X^4 + q1 X^3 + q2 X^2 + q1 X + 1 with 2(q1 - 1) < q2 < -2(q1 + 1); the strict
band excludes the cyclotomic degenerations at X = +-1. Every emitted
polynomial is re-verified against the root pattern: one real root above 1,
its reciprocal inside (0, 1), and a conjugate pair on the unit circle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .roots import all_roots


@dataclass(frozen=True)
class SalemQuartic:
    q1: int
    q2: int
    coeffs: tuple[int, ...]   # constant term first
    salem_root: float


def salem_root_pattern(coeffs, tol: float = 1e-9) -> tuple[bool, float | None]:
    """Check the quartic Salem root pattern; returns (ok, leading real root)."""
    roots = all_roots([float(c) for c in coeffs], tol)
    reals, others = [], []
    for z in roots:
        if abs(z.imag) < 1e-8 * (1.0 + abs(z)):
            reals.append(z.real)
        else:
            others.append(z)
    if len(reals) != 2:
        return False, None
    hi, lo = max(reals), min(reals)
    if not (hi > 1.0 and 0.0 < lo < 1.0):
        return False, None
    if any(abs(abs(z) - 1.0) >= tol for z in others):
        return False, None
    return True, hi


def enum_salem4(q1_min: int, q1_max: int) -> list[SalemQuartic]:
    """All degree-4 Salem minimal polynomials with q1 in [q1_min, q1_max],
    root-verified. The coefficient band is empty for q1 >= 0."""
    out = []
    for q1 in range(q1_min, q1_max + 1):
        lo, hi = 2 * (q1 - 1), -2 * (q1 + 1)
        for q2 in range(lo + 1, hi):
            coeffs = (1, q1, q2, q1, 1)
            ok, root = salem_root_pattern(coeffs)
            if ok:
                out.append(SalemQuartic(q1, q2, coeffs, root))
    return out
