"""Cones and unit-quotient fans in R^s.

The fan lives in the quotient of the lattice's real span by the shadow of H;
concretely its points are the first s (labeled) real embedding values. The
group acts by the diagonal of those values, so an infinite fan is presented
as a finite cone list Sigma plus the action and an enumeration window.

For the production s = 2, rank-1 case every cone inside the open half-plane
{x > 0} is an angular sector, encoded by the sign of y and the interval of
log-ratios ln(|y|/x) of its rays. The action shifts log-ratios by a constant,
so orbit enumeration, face matching and membership stay numerically sharp at
any window (normalized-ray comparisons would collapse: adjacent window-64
rays differ by far less than any sensible tolerance after normalization).

Generic-dimension validation of user-supplied cone sets uses small windows
with LP-based intersection tests instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import CollapseFailed, RayNotInFan, WrongSignature
from .fields import EmbeddingTable, FieldElement
from .units import SubgroupW, UnitElt, _word_box, unit_word

LOG_TOL = 1e-9


@dataclass(frozen=True)
class Cone:
    """A finitely generated cone: rays as rows, optionally tagged with exact
    lattice preimages (field elements whose labeled embedding values are a
    positive multiple of the ray)."""

    rays: np.ndarray
    tags: tuple[FieldElement | None, ...]

    @property
    def dim_ambient(self) -> int:
        return self.rays.shape[1]

    @property
    def n_rays(self) -> int:
        return self.rays.shape[0]


def cone(rays, tags=None) -> Cone:
    arr = np.array(rays, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if np.any(np.all(arr == 0.0, axis=1)):
        raise ValueError("cone rays must be nonzero")
    if tags is None:
        tags = (None,) * arr.shape[0]
    return Cone(arr, tuple(tags))


@dataclass(frozen=True)
class OmegaCone:
    """The open degenerate cone Omega = N x L_+ after labeling: the leading b
    coordinates form L (with positive orthant L_+), the trailing s - b span N,
    the maximal subspace in the closure."""

    s: int
    b: int

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x[:self.b] > 0.0))

    def in_l_plus(self, x: np.ndarray, slab: float = 1e-12) -> bool:
        return (bool(np.all(x[:self.b] > 0.0))
                and bool(np.all(np.abs(x[self.b:]) <= slab)))

    def support_ok(self, x: np.ndarray, slab: float = 1e-12) -> bool:
        """Membership in (Omega \\ L_+) union {0}."""
        if np.all(np.abs(x) <= slab):
            return True
        return self.contains(x) and not self.in_l_plus(x, slab)


@dataclass
class QuotientFan:
    """Finite cone set + unit subgroup presenting an infinite fan."""

    sigma: list[Cone]
    w: SubgroupW
    omega: OmegaCone
    table: EmbeddingTable
    window: int = 64

    @property
    def s(self) -> int:
        return self.omega.s

    def labeled_diag(self, u: UnitElt) -> np.ndarray:
        return _labeled_diag(u, self.w.labeling, self.s)

    def word_diag(self, exponents) -> np.ndarray:
        logs = np.zeros(self.s)
        for g, e in zip(self.w.generators, exponents):
            if e:
                logs += e * np.log(_labeled_diag(g, self.w.labeling, self.s))
        return np.exp(logs)

    def word_unit(self, exponents) -> UnitElt:
        field = self.table.field
        return unit_word(field, self.table, self.w.generators, exponents)


def _labeled_diag(u: UnitElt, labeling, s: int) -> np.ndarray:
    perm = labeling if labeling is not None else tuple(range(s))
    return np.array([u.eta_profile[p] for p in perm[:s]])


def act(eta: UnitElt, c: Cone, labeling=None) -> Cone:
    """Image of a cone under the diagonal action of a totally positive unit;
    exact on lattice tags."""
    s = c.dim_ambient
    diag = _labeled_diag(eta, labeling, s)
    tags = tuple(None if t is None else t * eta.elt for t in c.tags)
    return Cone(c.rays * diag[None, :], tags)


def build_fan_s2(w: SubgroupW, table: EmbeddingTable,
                 window: int = 64) -> QuotientFan:
    """The two-cone presentation for s = 2, rank 1: with eta the generator
    oriented so that its leading labeled value exceeds 1, Sigma consists of
    the cones spanned by (1, 1), (eta_1, eta_2) and (1, -1), (eta_1, -eta_2).
    The orbit of Sigma tiles {x > 0, y != 0} and the quotient is finite."""
    if table.s != 2:
        raise WrongSignature(f"s = {table.s}, need exactly 2 real embeddings")
    gens = [g for g in w.generators if not g.is_identity()]
    if w.b != 1 or len(gens) != 1:
        raise WrongSignature("need a rank-1 subgroup with one generator")
    if w.labeling is None:
        raise WrongSignature("subgroup carries no labeling; run the dominance "
                             "check first")
    g = gens[0]
    d1 = _labeled_diag(g, w.labeling, 2)
    field = table.field
    if d1[0] < 1.0:
        g = unit_word(field, table, [g], [-1])
        w = SubgroupW([g], 1, w.labeling, w.dominance, w.words)
        d1 = _labeled_diag(g, w.labeling, 2)
    e1, e2 = float(d1[0]), float(d1[1])
    if not (e1 > 1.0 and e2 > 0.0 and e1 > e2):
        raise WrongSignature(
            f"generator profile ({e1:.6f}, {e2:.6f}) cannot orient the fan")

    one = field.one()
    upper = cone([[1.0, 1.0], [e1, e2]], tags=(one, g.elt))
    lower = cone([[1.0, -1.0], [e1, -e2]], tags=(None, None))
    fan = QuotientFan([upper, lower], w, OmegaCone(2, 1), table, window)
    return fan


# --- the s = 2 interval engine -------------------------------------------------


@dataclass(frozen=True)
class _Sector:
    """Signed log-ratio interval for a 2D cone in {x > 0}."""
    sign: int          # sign of y on the sector (0 for a single L_+ ray)
    lo: float
    hi: float
    valid: bool
    reason: str = ""


def _ray_log_ratio(ray: np.ndarray) -> tuple[int, float] | None:
    """(sign(y), ln|y| - ln x) for a ray inside {x > 0, y != 0}; None if the
    ray leaves that open set (support violation)."""
    x, y = float(ray[0]), float(ray[1])
    if x <= 0.0 or y == 0.0 or abs(y) < 1e-250 or abs(x) < 1e-250:
        return None
    return (1 if y > 0 else -1), math.log(abs(y)) - math.log(x)


def _sectorize(c: Cone) -> _Sector:
    data = [_ray_log_ratio(r) for r in c.rays]
    if any(d is None for d in data):
        return _Sector(0, 0.0, 0.0, False, "ray outside (Omega \\ L+)")
    signs = {sg for sg, _ in data}
    if len(signs) != 1:
        return _Sector(0, 0.0, 0.0, False, "cone crosses the L+ axis")
    lams = [lam for _, lam in data]
    return _Sector(signs.pop(), min(lams), max(lams), True)


def _s2_shift(fan: QuotientFan) -> float:
    g = fan.w.generators[0]
    diag = fan.labeled_diag(g)
    return math.log(diag[1]) - math.log(diag[0])


@dataclass(frozen=True)
class ActionReport:
    free: bool
    properly_discontinuous: bool
    invariant: bool
    overlap_words: dict
    violations: list
    window: int


def check_action(fan: QuotientFan) -> ActionReport:
    """Windowed verification that the orbit of Sigma is a fan the group acts
    on: invariance (acted cones re-identified, support inside the punctured
    degenerate cone), freeness (no nontrivial word fixes a nonzero cone), and
    proper discontinuity (self-overlap words are few and only along faces)."""
    if fan.s == 2 and fan.w.b == 1 and len(fan.w.generators) == 1:
        return _check_action_s2(fan)
    return _check_action_generic(fan)


def _check_action_s2(fan: QuotientFan) -> ActionReport:
    violations: list[str] = []
    sectors = [_sectorize(c) for c in fan.sigma]
    for i, sec in enumerate(sectors):
        if not sec.valid:
            violations.append(f"sigma[{i}]: {sec.reason}")
    invariant = not violations

    shift = _s2_shift(fan)
    free = abs(shift) > LOG_TOL
    if not free:
        violations.append("generator acts trivially on log-ratios")

    properly_discontinuous = True
    overlap_words: dict[int, list[int]] = {}
    if invariant and free:
        # orbit intervals per sign, with provenance (base index, word k)
        per_sign: dict[int, list[tuple[float, float, int, int]]] = {1: [], -1: []}
        for i, sec in enumerate(sectors):
            for k in range(-fan.window, fan.window + 1):
                per_sign[sec.sign].append(
                    (sec.lo + k * shift, sec.hi + k * shift, i, k))
        for sign, intervals in per_sign.items():
            intervals.sort()
            for (lo1, hi1, i1, k1), (lo2, hi2, i2, k2) in zip(intervals, intervals[1:]):
                if hi1 - lo2 > LOG_TOL:
                    violations.append(
                        f"interior overlap between sigma[{i1}] word {k1} and "
                        f"sigma[{i2}] word {k2} (sign {sign:+d})")
                    properly_discontinuous = False
                    invariant = False

        for i, sec in enumerate(sectors):
            words = []
            width = sec.hi - sec.lo
            for k in range(-fan.window, fan.window + 1):
                off = abs(k * shift)
                if off <= width + LOG_TOL:
                    # face-only contact means the offset hits 0 or the width
                    if k != 0 and not (abs(off - width) <= LOG_TOL or off <= LOG_TOL):
                        properly_discontinuous = False
                        violations.append(
                            f"sigma[{i}] overlaps its word-{k} image off a face")
                    words.append(k)
            overlap_words[i] = words

        # freeness across the enumerated orbit: distinct words give disjoint
        # interiors already; a fixed cone would need k*shift == 0.
    return ActionReport(free, properly_discontinuous, invariant,
                        overlap_words, violations, fan.window)


def _canonical_key(c: Cone, decimals: int = 9) -> tuple:
    rows = []
    for r in c.rays:
        nr = r / np.linalg.norm(r)
        rows.append(tuple(np.round(nr, decimals)))
    return tuple(sorted(rows))


def _cone_member(x: np.ndarray, c: Cone, slack: float = LOG_TOL) -> bool:
    from scipy.optimize import nnls
    coeffs, resid = nnls(c.rays.T, np.asarray(x, dtype=float))
    return resid <= slack * (1.0 + float(np.linalg.norm(x)))


def _relint_point(c: Cone) -> np.ndarray:
    return c.rays.sum(axis=0)


def _cones_meet(c1: Cone, c2: Cone) -> bool:
    """True iff the cones share a nonzero point (LP feasibility; assumes
    salient cones, where a normalized nonnegative combination is nonzero)."""
    from scipy.optimize import linprog
    k1, k2 = c1.n_rays, c2.n_rays
    s = c1.dim_ambient
    a_eq = np.zeros((s + 1, k1 + k2))
    a_eq[:s, :k1] = c1.rays.T
    a_eq[:s, k1:] = -c2.rays.T
    a_eq[s, :k1] = 1.0
    b_eq = np.zeros(s + 1)
    b_eq[s] = 1.0
    res = linprog(c=[0.0] * (k1 + k2), A_eq=a_eq, b_eq=b_eq,
                  bounds=[(0, None)] * (k1 + k2), method="highs")
    return res.status == 0


def _cones_share_face_only(c1: Cone, c2: Cone) -> bool:
    """True if the two (distinct) cones intersect at most in a common face;
    LP test on the relative interiors plus shared-ray identification."""
    from scipy.optimize import linprog
    k1, k2 = c1.n_rays, c2.n_rays
    s = c1.dim_ambient
    # variables: lam (k1), mu (k2), t; maximize t
    a_eq = np.zeros((s + 1, k1 + k2 + 1))
    a_eq[:s, :k1] = c1.rays.T
    a_eq[:s, k1:k1 + k2] = -c2.rays.T
    a_eq[s, :k1] = 1.0
    b_eq = np.zeros(s + 1)
    b_eq[s] = 1.0
    a_ub = np.zeros((k1 + k2, k1 + k2 + 1))
    for i in range(k1 + k2):
        a_ub[i, i] = -1.0
        a_ub[i, -1] = 1.0
    res = linprog(c=[0.0] * (k1 + k2) + [-1.0], A_eq=a_eq, b_eq=b_eq,
                  A_ub=a_ub, b_ub=np.zeros(k1 + k2),
                  bounds=[(0, None)] * (k1 + k2) + [(None, None)],
                  method="highs")
    if res.status == 2:      # infeasible: no common nonzero point at all
        return True
    return bool(res.x is None or res.x[-1] <= 1e-9)


def _check_action_generic(fan: QuotientFan) -> ActionReport:
    """Validation path for user-supplied cone sets in s >= 3: orbit cones are
    materialized as float rays, so the window is clamped small enough that
    normalized-ray keys remain separated. Pairwise face checks run each base
    cone against the whole enumerated orbit, which covers all pairs up to the
    action."""
    window = min(fan.window, 4)
    violations: list[str] = []

    b = max(fan.w.b, 1)
    orbit: dict[tuple, tuple[int, tuple]] = {}
    cones_by_word: list[tuple[tuple, int, Cone]] = []
    for e in [(0,) * b] + list(_word_box(b, window)):
        diag = fan.word_diag(e)
        for i, c in enumerate(fan.sigma):
            acted = Cone(c.rays * diag[None, :], c.tags)
            key = _canonical_key(acted)
            if key in orbit and orbit[key] != (i, e):
                violations.append(
                    f"word {e} collides with {orbit[key]} on sigma[{i}]")
            orbit[key] = (i, e)
            cones_by_word.append((e, i, acted))
            if not fan.omega.support_ok(_relint_point(acted)):
                violations.append(f"sigma[{i}] word {e} leaves the support")

    free = not any("collides" in v for v in violations)
    invariant = not any("support" in v for v in violations)

    # acted cones of inner words must be re-identified in the orbit set
    for e in [(0,) * b] + list(_word_box(b, max(window - 1, 1))):
        diag = fan.word_diag(e)
        for gi, g in enumerate(fan.w.generators):
            gd = fan.labeled_diag(g)
            for i, c in enumerate(fan.sigma):
                key = _canonical_key(Cone(c.rays * (diag * gd)[None, :], c.tags))
                if key not in orbit:
                    invariant = False
                    violations.append(
                        f"generator {gi} image of sigma[{i}] word {e} not found")

    properly_discontinuous = True
    overlap_words: dict[int, list] = {}
    for i, c in enumerate(fan.sigma):
        key_i = _canonical_key(c)
        words = []
        for e, j, acted in cones_by_word:
            if j == i and not any(e):
                continue  # the cone itself
            if not _cones_meet(c, acted):
                continue
            words.append([j, list(e)])
            if (_canonical_key(acted) == key_i
                    or not _cones_share_face_only(c, acted)):
                properly_discontinuous = False
                violations.append(
                    f"sigma[{i}] overlaps sigma[{j}] word {e} off a face")
        overlap_words[i] = words
    return ActionReport(free, properly_discontinuous, invariant,
                        overlap_words, violations, window)


# --- support sampling, collapse, divisors --------------------------------------


@dataclass(frozen=True)
class SupportReport:
    n_samples: int
    n_interior: int
    n_face: int
    passed: bool
    detail: str = ""


def support_sampling_check(fan: QuotientFan, n_samples: int = 1000,
                           seed: int = 0) -> SupportReport:
    """Each sampled point of the punctured degenerate cone must meet exactly
    one enumerated maximal cone's relative interior, or a shared face."""
    if fan.s != 2 or fan.w.b != 1:
        raise WrongSignature("support sampling is implemented for s = 2")
    rng = np.random.default_rng(seed)
    sectors = [_sectorize(c) for c in fan.sigma]
    if not all(sec.valid for sec in sectors):
        return SupportReport(0, 0, 0, False, "invalid base cone")
    shift = _s2_shift(fan)

    n_interior = n_face = 0
    for _ in range(n_samples):
        x = rng.uniform(0.2, 2.0)
        y = rng.choice([-1.0, 1.0]) * rng.uniform(0.02, 2.0)
        lam = math.log(abs(y)) - math.log(x)
        sgn = 1 if y > 0 else -1
        hits = 0
        boundary = False
        for sec in sectors:
            if sec.sign != sgn:
                continue
            # only a handful of words can place this sector near lam
            bounds = sorted(((lam - sec.lo) / shift, (lam - sec.hi) / shift))
            for k in range(math.floor(bounds[0]) - 1, math.ceil(bounds[1]) + 2):
                if abs(k) > fan.window:
                    continue
                lo, hi = sec.lo + k * shift, sec.hi + k * shift
                if lo - LOG_TOL <= lam <= hi + LOG_TOL:
                    hits += 1
                    if abs(lam - lo) <= LOG_TOL or abs(lam - hi) <= LOG_TOL:
                        boundary = True
        if hits == 1 and not boundary:
            n_interior += 1
        elif hits >= 1 and boundary:
            n_face += 1
        else:
            return SupportReport(n_samples, n_interior, n_face, False,
                                 f"point ({x:.6f}, {y:.6f}) hit {hits} cones")
    return SupportReport(n_samples, n_interior, n_face, True)


@dataclass(frozen=True)
class LiftInjectivityReport:
    n_points: int
    min_image_separation: float
    passed: bool


def lift_injectivity_check(fan: QuotientFan, window: int = 4,
                           grid: int = 3, tol: float = 1e-6) -> LiftInjectivityReport:
    """Sampled injectivity of the quotient projection on the lifted fan
    support: integer combinations of the exact ray tags are distinct lattice
    points inside the support, and their images (the leading embedding
    values) must stay separated. Proxy for the properness criterion of the
    shadow action."""
    labeling = fan.w.labeling if fan.w.labeling is not None \
        else tuple(range(fan.s))
    field = fan.table.field
    points: dict[tuple, np.ndarray] = {}
    words = [(0,) * max(fan.w.b, 1)] + list(_word_box(max(fan.w.b, 1),
                                                      min(window, fan.window)))
    for e in words:
        for c in fan.sigma:
            tags = [t for t in c.tags if t is not None]
            if len(tags) < c.n_rays:
                continue
            acted = [field.word([g.elt for g in fan.w.generators], e) * t
                     for t in tags]
            for combo in np.ndindex(*(grid + 1,) * len(acted)):
                if not any(combo):
                    continue
                elt = field.zero()
                for m, t in zip(combo, acted):
                    if m:
                        scaled = field.element([m * x for x in t.coords])
                        elt = elt + scaled
                key = tuple(elt.coords)
                if key not in points:
                    vals = fan.table.evaluate(elt)
                    points[key] = np.array([vals[p].real for p in
                                            labeling[:fan.s]])
    if len(points) < 2:
        return LiftInjectivityReport(len(points), math.inf, True)
    arr = np.array(list(points.values()))
    from scipy.spatial.distance import pdist
    dmin = float(np.min(pdist(arr)))
    return LiftInjectivityReport(len(points), dmin, dmin > tol)


@dataclass(frozen=True)
class CollapseReport:
    fitted_n: float
    min_margin: float
    k_max: int
    n_samples: int
    passed: bool


def cone_collapse_check(fan: QuotientFan, eta: UnitElt, delta: float = 1.0,
                        k_max: int = 8, n_samples: int = 200,
                        seed: int = 0) -> CollapseReport:
    """Empirical contraction rate of the cones C_delta = {sum of leading
    squares >= delta * sum of trailing squares} under powers of eta.

    fitted_n is the per-step growth factor of the (unsquared) leading/trailing
    norm ratio, minimized over samples and steps; the report then certifies
    eta^k(C_delta) inside C_{fitted_n^k * delta} for k <= k_max. Raises
    CollapseFailed when the unit contracts instead of expanding.
    """
    b = fan.w.b
    s = fan.s
    if b >= s:
        raise WrongSignature("collapse dynamics needs trailing coordinates "
                             "(b < s)")
    diag = fan.labeled_diag(eta)
    rng = np.random.default_rng(seed)

    lead = rng.uniform(0.5, 2.0, size=(n_samples, b))
    tail = rng.normal(size=(n_samples, s - b))
    tail /= np.linalg.norm(tail, axis=1, keepdims=True)
    u = rng.uniform(0.05, 1.0, size=n_samples)
    u[0] = 1.0  # keep one boundary sample for a sharp fit
    # trailing norm^2 = u * leading norm^2 / delta, so the squared ratio is
    # delta / u >= delta: all samples lie in C_delta, one on its boundary
    scale = np.sqrt(u * np.sum(lead ** 2, axis=1) / delta)
    pts = np.hstack([lead, tail * scale[:, None]])

    def ratio(v: np.ndarray) -> np.ndarray:
        a = np.sqrt(np.sum(v[:, :b] ** 2, axis=1))
        c = np.sqrt(np.sum(v[:, b:] ** 2, axis=1))
        return a / c

    r0 = ratio(pts)
    fitted = math.inf
    for k in range(1, k_max + 1):
        rk = ratio(pts * (diag ** k)[None, :])
        fitted = min(fitted, float(np.min((rk / r0) ** (1.0 / k))))
    if not (fitted > 1.0 + LOG_TOL):
        raise CollapseFailed(
            f"fitted growth factor {fitted:.6f} <= 1; unit does not expand "
            "the leading coordinates")

    min_margin = math.inf
    for k in range(1, k_max + 1):
        rk = ratio(pts * (diag ** k)[None, :])
        min_margin = min(min_margin,
                         float(np.min(rk ** 2 / (fitted ** k * delta))))
    passed = min_margin >= 1.0 - LOG_TOL
    if not passed:
        raise CollapseFailed(f"containment margin {min_margin:.6f} < 1")
    return CollapseReport(fitted, min_margin, k_max, n_samples, passed)


@dataclass(frozen=True)
class DivisorReport:
    ray: list
    tag_coords: list | None
    word: int | None
    n_star_cones: int
    projected_rays: list
    complete: bool
    classification: str
    elliptic: dict | None


def divisor_certificate(fan: QuotientFan, ray: Cone,
                        frame=None) -> DivisorReport:
    """Star-quotient data of a 1-dimensional cone of the fan: project the
    cones containing the ray along its span and check that the resulting
    (s-1)-dimensional fan is complete by direction coverage. For s = 2 a
    complete two-ray quotient is the Hopf-surface signature; with one complex
    place the two elliptic curve lattices (1, beta) and (1, 1 - conj(beta))
    are reported together with the identity tying them."""
    if fan.s != 2 or fan.w.b != 1:
        raise WrongSignature("divisor certificates are implemented for s = 2")
    if ray.n_rays != 1:
        raise ValueError("expected a single-ray cone")
    data = _ray_log_ratio(ray.rays[0])
    if data is None:
        raise RayNotInFan("ray lies outside the fan support")
    sgn, lam = data

    sectors = [_sectorize(c) for c in fan.sigma]
    shift = _s2_shift(fan)
    star: list[tuple[int, int, float, float]] = []  # (base idx, word, lo, hi)
    located: tuple | None = None
    for i, sec in enumerate(sectors):
        if sec.sign != sgn:
            continue
        for k in range(-fan.window, fan.window + 1):
            lo, hi = sec.lo + k * shift, sec.hi + k * shift
            if abs(lam - lo) <= LOG_TOL or abs(lam - hi) <= LOG_TOL:
                star.append((i, k, lo, hi))
                end = 0 if abs(lam - lo) <= LOG_TOL else 1
                if located is None:
                    base_tag = fan.sigma[i].tags[_endpoint_ray_index(
                        fan.sigma[i], end)]
                    located = (i, k, base_tag)
    if not star:
        raise RayNotInFan(f"no enumerated cone has the given ray as a face "
                          f"(log-ratio {lam:.6f})")

    # project the other boundary ray of each star cone along the given ray:
    # the signed coordinate is the sign of (lambda_other - lambda), since the
    # normal direction orders rays by angle inside the half-plane
    proj = []
    for i, k, lo, hi in star:
        other = lo if abs(lam - hi) <= LOG_TOL else hi
        proj.append(1.0 if other > lam else -1.0)
    complete = (1.0 in proj) and (-1.0 in proj)
    classification = ("hopf-surface"
                      if complete and len(proj) == 2 else "generalized-lvmb")

    elliptic = None
    if fan.table.t == 1:
        beta = fan.table.values[fan.table.s]
        lhs = 1 - np.conj(beta)
        rhs = (beta - 1) / beta
        elliptic = {
            "lattice_a": [[1.0, 0.0], [beta.real, beta.imag]],
            "lattice_b": [[1.0, 0.0], [lhs.real, lhs.imag]],
            "identity_residual": float(abs(lhs - rhs)),
            "isomorphic": bool(abs(lhs - rhs) < 1e-9),
        }

    base_i, word_k, base_tag = located
    tag_coords = None
    if base_tag is not None:
        tagged = base_tag
        g = fan.w.generators[0]
        tagged = fan.table.field.word([g.elt], [word_k]) * tagged
        tag_coords = [str(c) for c in tagged.coords]
    return DivisorReport(
        ray=[float(v) for v in ray.rays[0]],
        tag_coords=tag_coords,
        word=word_k,
        n_star_cones=len(star),
        projected_rays=proj,
        complete=complete,
        classification=classification,
        elliptic=elliptic,
    )


def _endpoint_ray_index(c: Cone, end: int) -> int:
    """Index of the ray realizing the low (end=0) or high (end=1) log-ratio."""
    lams = []
    for r in c.rays:
        data = _ray_log_ratio(r)
        lams.append(data[1] if data else math.inf)
    return int(np.argmin(lams)) if end == 0 else int(np.argmax(lams))
