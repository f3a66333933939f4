"""Fundamental-domain machinery: the simplex slab B spanned by the translated
affine subspaces, the word classes that tile with it, membership in the two
patches D1 and D2, and the Monte-Carlo verification that the orbit of the
closed patch covers the punctured degenerate cone.

All point operations happen in the labeled coordinates of the fan space; the
first b coordinates are the leading ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import WrongSignature
from .fans import LOG_TOL, QuotientFan, _s2_shift, _sectorize
from .units import (SIGN_TOL, SubgroupW, UnitElt, _word_box,
                    log_ratio_matrix, row_orthant, unit_word)

CLOSURE_SLACK = 1e-7   # absorbs closure-vs-interior boundary effects


@dataclass(frozen=True)
class WordClass:
    ge_one: bool      # some leading coordinate >= 1
    expanding: bool   # satisfies the expanding orientation (or is the identity)


@dataclass
class DomainSpec:
    fan: QuotientFan
    vertices: np.ndarray    # (b+1, b); row 0 is all ones
    window: int

    @property
    def b(self) -> int:
        return self.fan.w.b

    @property
    def s(self) -> int:
        return self.fan.s

    @property
    def lower_bound_c(self) -> float:
        """min over simplex vertices of the min leading coordinate; every
        image of a B-point under a ge-one word has norm at least this."""
        return float(np.min(self.vertices))


def make_domain_spec(fan: QuotientFan, window: int | None = None) -> DomainSpec:
    """Vertices are the all-ones point plus the leading labeled values of each
    generator, with generators re-oriented to the expanding direction first
    (inverting where needed)."""
    w = fan.w
    if w.b < 1:
        raise WrongSignature("fundamental domain needs rank >= 1")
    gens = []
    for g in w.generators:
        if not _is_expanding(g, w, fan.s):
            g = unit_word(fan.table.field, fan.table, [g], [-1])
        if not _is_expanding(g, w, fan.s):
            raise WrongSignature(
                "generator admits no expanding orientation; dominance fails")
        gens.append(g)
    fan.w = SubgroupW(gens, w.b, w.labeling, w.dominance, w.words)

    b = w.b
    rows = [np.ones(b)]
    for g in gens:
        rows.append(fan.labeled_diag(g)[:b])
    vertices = np.array(rows)
    if np.any(vertices <= 0.0):
        raise WrongSignature("simplex vertices must be positive")
    diffs = vertices[1:] - vertices[0]
    if np.linalg.matrix_rank(diffs, tol=1e-9) < b:
        raise WrongSignature("simplex vertices are affinely dependent")
    return DomainSpec(fan, vertices, window if window is not None else fan.window)


def _is_expanding(g: UnitElt, w: SubgroupW, s: int) -> bool:
    if g.is_identity():
        return True
    labeling = w.labeling if w.labeling is not None else tuple(range(s))
    mat = log_ratio_matrix(g, w.b, labeling)
    return any(row_orthant(row) == 1 for row in mat)


def classify_w(eta: UnitElt, spec: DomainSpec) -> WordClass:
    """Membership of a unit in the ge-one set (some leading coordinate >= 1)
    and in the expanding set (positive dominance row; the identity belongs to
    both by convention)."""
    fan = spec.fan
    if eta.is_identity():
        return WordClass(True, True)
    lead = fan.labeled_diag(eta)[:spec.b]
    ge_one = bool(np.any(lead >= 1.0 - 1e-12))
    expanding = _is_expanding(eta, fan.w, spec.s)
    return WordClass(ge_one, expanding)


def _word_class_from_exponents(spec: DomainSpec, e) -> WordClass:
    """Word classes from exponent data alone; log data is additive so no
    exact arithmetic is needed."""
    if not any(e):
        return WordClass(True, True)
    fan = spec.fan
    b = spec.b
    lead_logs = np.zeros(b)
    rows = None
    labeling = fan.w.labeling
    for g, c in zip(fan.w.generators, e):
        if not c:
            continue
        lead_logs += c * np.log(fan.labeled_diag(g)[:b])
        mat = c * log_ratio_matrix(g, b, labeling)
        rows = mat if rows is None else rows + mat
    ge_one = bool(np.any(lead_logs >= -1e-12))
    expanding = any(row_orthant(row) == 1 for row in rows)
    return WordClass(ge_one, expanding)


def in_B(x: np.ndarray, spec: DomainSpec, slack: float = 1e-9) -> bool:
    """Membership in the slab B = simplex x R^{s-b}: barycentric coordinates
    of the leading block all >= -slack."""
    b = spec.b
    mat = np.vstack([spec.vertices.T, np.ones(b + 1)])
    rhs = np.concatenate([np.asarray(x, dtype=float)[:b], [1.0]])
    lam = np.linalg.solve(mat, rhs)
    return bool(np.all(lam >= -slack))


def _in_sigma_s2(x: np.ndarray, spec: DomainSpec, slack: float) -> bool:
    """Membership in the union of the base cones (s = 2 path; slack is in
    log-ratio units)."""
    if x[0] <= 0.0 or x[1] == 0.0:
        return False
    lam = math.log(abs(x[1])) - math.log(x[0])
    sgn = 1 if x[1] > 0 else -1
    for c in spec.fan.sigma:
        sec = _sectorize(c)
        if sec.valid and sec.sign == sgn and \
                sec.lo - slack <= lam <= sec.hi + slack:
            return True
    return False


def in_D(x, spec: DomainSpec, slack: float = 1e-9):
    """Windowed membership in D = D1 union D2, returning ("D1"|"D2", word) or
    (None, None). D1 collects B-points lying on some expanding translate of
    the base cones; D2 collects base-cone points lying on some ge-one
    translate of B. The witness word comes first in the (increasing length,
    lexicographic) order."""
    if spec.s != 2 or spec.b != 1:
        return _in_d_generic(x, spec, slack)
    x = np.asarray(x, dtype=float)
    if np.all(np.abs(x) <= 1e-12):
        return None, None           # the origin is excluded from the support
    if x[0] <= 0.0 or x[1] == 0.0:
        return None, None

    fan = spec.fan
    shift = _s2_shift(fan)
    lam = math.log(abs(x[1])) - math.log(x[0])
    sgn = 1 if x[1] > 0 else -1
    g1 = float(fan.labeled_diag(fan.w.generators[0])[0])

    if in_B(x, spec, slack):
        # expanding words are the nonnegative powers; x in g^k(Sigma) iff the
        # log-ratio of g^-k(x), lam - k*shift, lies in a base sector
        best = None
        for c in fan.sigma:
            sec = _sectorize(c)
            if not sec.valid or sec.sign != sgn:
                continue
            k_lo = (lam - sec.hi - slack) / shift
            k_hi = (lam - sec.lo + slack) / shift
            a, bnd = sorted((k_lo, k_hi))
            for k in range(max(0, math.floor(a) - 1), math.ceil(bnd) + 2):
                if k > spec.window:
                    break
                if sec.lo - slack <= lam - k * shift <= sec.hi + slack:
                    best = k if best is None else min(best, k)
                    break
        if best is not None:
            return "D1", (best,)

    if _in_sigma_s2(x, spec, slack):
        # ge-one words are the nonnegative powers; x in g^k(B) iff the leading
        # coordinate of g^-k(x) falls in the leading simplex interval
        lead_lo = math.log(float(np.min(spec.vertices)))
        lead_hi = math.log(float(np.max(spec.vertices)))
        lx = math.log(x[0])
        step = math.log(g1)
        a = (lx - lead_hi) / step
        bnd = (lx - lead_lo) / step
        for k in range(max(0, math.floor(min(a, bnd)) - 1),
                       math.ceil(max(a, bnd)) + 2):
            if k > spec.window:
                break
            if lead_lo - slack <= lx - k * step <= lead_hi + slack:
                return "D2", (k,)
    return None, None


def _in_d_generic(x, spec: DomainSpec, slack: float):
    """Word-iteration fallback for b >= 2 (small windows only)."""
    x = np.asarray(x, dtype=float)
    if np.all(np.abs(x) <= 1e-12):
        return None, None
    fan = spec.fan
    b = spec.b
    words = [(0,) * b] + list(_word_box(b, min(spec.window, 8)))
    if in_B(x, spec, slack):
        for e in words:
            cls = _word_class_from_exponents(spec, e)
            if not cls.expanding:
                continue
            y = x / fan.word_diag(e)
            if _in_sigma_generic(y, spec, slack):
                return "D1", e
    if _in_sigma_generic(x, spec, slack):
        for e in words:
            cls = _word_class_from_exponents(spec, e)
            if not cls.ge_one:
                continue
            y = x / fan.word_diag(e)
            if in_B(y, spec, slack):
                return "D2", e
    return None, None


def _in_sigma_generic(x, spec: DomainSpec, slack: float) -> bool:
    from .fans import _cone_member
    return any(_cone_member(x, c, max(slack, LOG_TOL)) for c in spec.fan.sigma)


@dataclass(frozen=True)
class TilingReport:
    n_samples: int
    n_tiled: int
    failures: list
    c_constant: float
    r_fit: float
    max_witness_length: int
    norm_bound_min: float
    norm_bound_ok: bool
    passed: bool


def tiling_check(spec: DomainSpec, n_samples: int = 1000,
                 seed: int = 42) -> TilingReport:
    """For seeded log-uniform samples of the punctured degenerate cone, find a
    word moving each point into the closed domain (slack 1e-7), and verify the
    norm lower bound ||eta(x)|| >= C for ge-one words against B-points."""
    fan = spec.fan
    b, s = spec.b, spec.s
    rng = np.random.default_rng(seed)
    c_const = spec.lower_bound_c

    lead_max = float(np.max(spec.vertices))
    diag_max = max(float(np.max(fan.labeled_diag(g)))
                   for g in fan.w.generators)
    r0 = 10.0 * lead_max * diag_max ** 2

    n_tiled = 0
    failures = []
    r_fit = 0.0
    max_len = 0
    words = [(0,) * b] + list(_word_box(b, spec.window))
    for _ in range(n_samples):
        lead = np.exp(rng.uniform(math.log(c_const / 10.0), math.log(r0),
                                  size=b))
        mags = np.exp(rng.uniform(math.log(1e-4), math.log(r0 / 10.0),
                                  size=s - b))
        signs = rng.choice([-1.0, 1.0], size=s - b)
        x = np.concatenate([lead, mags * signs])

        hit = None
        for e in words:
            y = x * fan.word_diag(e)
            kind, _ = in_D(y, spec, CLOSURE_SLACK)
            if kind is not None:
                hit = (e, y)
                break
        if hit is None:
            failures.append([float(v) for v in x])
        else:
            n_tiled += 1
            e, y = hit
            r_fit = max(r_fit, float(np.linalg.norm(y)))
            max_len = max(max_len, max(abs(c) for c in e))

    # norm lower bound over sampled (ge-one word, B-point) pairs
    norm_min = math.inf
    n_pairs = 1000
    tries = 0
    done = 0
    word_cycle = [e for e in words if _word_class_from_exponents(spec, e).ge_one]
    while done < n_pairs and tries < 20 * n_pairs:
        tries += 1
        e = word_cycle[int(rng.integers(len(word_cycle)))]
        t = rng.dirichlet(np.ones(b + 1))
        lead = t @ spec.vertices
        tail = rng.uniform(-r0, r0, size=s - b)
        x = np.concatenate([lead, tail])
        norm_min = min(norm_min, float(np.linalg.norm(x * fan.word_diag(e))))
        done += 1

    norm_ok = norm_min >= c_const - 1e-9
    passed = (not failures) and norm_ok
    return TilingReport(n_samples, n_tiled, failures, c_const, r_fit,
                        max_len, norm_min, norm_ok, passed)


@dataclass(frozen=True)
class BTilingReport:
    n_samples: int
    n_covered: int
    passed: bool
    counterexample: list | None


def tiling_of_Bb(spec: DomainSpec, n_samples: int = 1000, seed: int = 0,
                 window: int = 8) -> BTilingReport:
    """Coverage check for the projected simplex: translate the log-image of
    the leading simplex by the log-lattice of the generators and test whether
    the fundamental parallelepiped is covered. Exact in rank one (the interval
    is one lattice period); sampled in higher rank."""
    fan = spec.fan
    b = spec.b
    rng = np.random.default_rng(seed)
    basis = np.array([np.log(fan.labeled_diag(g)[:b]) for g in fan.w.generators])

    n_covered = 0
    counterexample = None
    shifts = [np.zeros(b)] + [np.array(e) @ basis
                              for e in _word_box(b, window)]
    for _ in range(n_samples):
        t = rng.uniform(0.0, 1.0, size=b)
        y = t @ basis
        covered = False
        for v in shifts:
            pt = np.exp(y - v)
            if in_B(np.concatenate([pt, np.zeros(spec.s - b)]), spec, 1e-9):
                covered = True
                break
        if covered:
            n_covered += 1
        elif counterexample is None:
            counterexample = [float(z) for z in y]
    return BTilingReport(n_samples, n_covered, n_covered == n_samples,
                         counterexample)
