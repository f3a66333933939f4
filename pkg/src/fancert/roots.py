"""Simultaneous-iteration complex root finder (Durand-Kerner).

Deterministic by construction: fixed starting points on a circle of radius
1 + max|c_i| with an asymmetric angular offset, so runs are reproducible and
conjugate-symmetric stalls are avoided.
"""

from __future__ import annotations

import cmath

from .errors import RootFindingFailed

MAX_ITER = 1000
STEP_TOL = 1e-13
_ANGLE_OFFSET = 0.4  # radians; breaks symmetry with real-coefficient inputs


def all_roots(coeffs: list[float], tol: float = 1e-9) -> list[complex]:
    """All complex roots of the polynomial with the given coefficients
    (constant term first). Requires a squarefree input to converge; raises
    RootFindingFailed if the iteration stalls or a residual stays large.
    """
    if len(coeffs) < 2:
        raise ValueError("need a polynomial of degree >= 1")
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    n = len(monic) - 1
    if n == 1:
        return [complex(-monic[0])]

    radius = 1.0 + max(abs(c) for c in monic[:-1])
    z = [radius * cmath.exp(1j * (2 * cmath.pi * k / n + _ANGLE_OFFSET))
         for k in range(n)]

    def p(x: complex) -> complex:
        acc = 0j
        for c in reversed(monic):
            acc = acc * x + c
        return acc

    for _ in range(MAX_ITER):
        step = 0.0
        for i in range(n):
            denom = 1.0 + 0j
            for j in range(n):
                if j != i:
                    denom *= z[i] - z[j]
            delta = p(z[i]) / denom
            z[i] -= delta
            step = max(step, abs(delta))
        if step < STEP_TOL:
            break
    else:
        raise RootFindingFailed(
            f"no convergence after {MAX_ITER} iterations (last step {step:.3e})")

    for x in z:
        scale = sum(abs(c) * max(1.0, abs(x)) ** i for i, c in enumerate(monic))
        if abs(p(x)) > tol * scale:
            raise RootFindingFailed(
                f"residual {abs(p(x)):.3e} at root {x} exceeds {tol:.1e}*scale")
    return z
