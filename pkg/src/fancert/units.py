"""Units of the field order, their logarithmic data, and the dominance
machinery that drives the cone dynamics.

A unit's *profile* is the (s+t)-vector (sigma_1(u), ..., sigma_s(u),
|sigma_{s+1}(u)|, ..., |sigma_{s+t}(u)|). The dominance condition on a rank-b
subgroup W asks that every nontrivial element have some leading profile entry
(among the first b, under a chosen labeling of the real embeddings) strictly
above, or strictly below, *all* trailing entries. In log-ratio form that is:
some row of the b x g matrix ln(eta_i / eta_{b+j}) lies in the open orthant of
uniformly signed vectors. For b = 1 row membership is exact for the whole
group (rows scale linearly with the exponent); for b >= 2 it is only
semi-decided over a word window.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (NonPositiveProfile, NotAUnit, RankTooLarge, WrongRank)
from .fields import EmbeddingTable, FieldElement, NumberField

SIGN_TOL = 1e-9   # |entry| below this counts as zero and disqualifies a row

EXACT = "exact"
WINDOW_VERIFIED = "window-verified"
REFUTED = "refuted"


@dataclass(frozen=True)
class UnitElt:
    """A verified unit of the order, with cached embedding data."""

    elt: FieldElement
    eta_profile: tuple[float, ...]    # signed at real places, moduli at complex
    abs_logs: tuple[float, ...]       # ln|profile entry|
    signs: tuple[int, ...]            # signs at the s real embeddings
    norm_constant: int                # constant term of the minimal polynomial

    @property
    def totally_positive(self) -> bool:
        return all(sg > 0 for sg in self.signs)

    def is_identity(self) -> bool:
        return self.elt == self.elt.field.one()


def make_unit(field: NumberField, table: EmbeddingTable, coords) -> UnitElt:
    """Validate that coords (integer, in the integral basis) give a unit.

    Exact criterion: the element is integral and the constant term of its
    minimal polynomial is +-1 (then the inverse is again integral).
    """
    elt = coords if isinstance(coords, FieldElement) else field.element(coords)
    if not elt.is_integral():
        raise NotAUnit(f"{elt!r} has non-integer coordinates")
    mp = field.min_poly_elt(elt)
    if not mp.is_integral():
        raise NotAUnit(f"{elt!r} is not an algebraic integer")
    c0 = mp.int_coeffs()[0]
    if c0 not in (1, -1):
        raise NotAUnit(f"minimal polynomial constant term {c0} is not +-1")
    return _unit_from_element(table, elt, c0)


def _unit_from_element(table: EmbeddingTable, elt: FieldElement, c0: int) -> UnitElt:
    s, t = table.s, table.t
    values = table.evaluate(elt)
    profile = [values[i].real for i in range(s)] + \
              [abs(values[s + j]) for j in range(t)]
    signs = tuple(1 if v > 0 else -1 for v in profile[:s])
    abs_logs = tuple(math.log(abs(v)) for v in profile)
    return UnitElt(elt, tuple(profile), abs_logs, signs, c0)


def unit_word(field: NumberField, table: EmbeddingTable,
              bases: list[UnitElt], exponents) -> UnitElt:
    """Exact product of bases[i] ** exponents[i] as a verified unit."""
    elt = field.word([u.elt for u in bases], exponents)
    return make_unit(field, table, elt)


def log_embedding(u: UnitElt) -> np.ndarray:
    """Logarithmic representation (ln|sigma_1|, ..., ln|sigma_s|,
    2 ln|sigma_{s+1}|, ..., 2 ln|sigma_{s+t}|). Coordinates sum to zero for
    units (|norm| = 1)."""
    s = len(u.signs)
    logs = list(u.abs_logs)
    return np.array(logs[:s] + [2.0 * x for x in logs[s:]])


def log_ratio_matrix(u: UnitElt, b: int, labeling: tuple[int, ...]) -> np.ndarray:
    """The b x g matrix with entry (i, j) = ln(eta_i / eta_{b+j}), where the
    profile's real entries are permuted by `labeling` (0-based permutation of
    range(s)) and g = s + t - b. Requires a totally positive unit."""
    if not u.totally_positive:
        raise NonPositiveProfile(
            f"unit has signs {u.signs} at the real embeddings")
    s = len(u.signs)
    logs = [u.abs_logs[p] for p in labeling] + list(u.abs_logs[s:])
    g = len(logs) - b
    return np.array([[logs[i] - logs[b + j] for j in range(g)]
                     for i in range(b)])


def row_orthant(row: np.ndarray, tol: float = SIGN_TOL) -> int:
    """+1 / -1 if all entries are uniformly signed and bounded away from zero,
    else 0. Entries with |value| < tol count as zero (conservative)."""
    if np.any(np.abs(row) < tol):
        return 0
    if np.all(row > 0):
        return 1
    if np.all(row < 0):
        return -1
    return 0


@dataclass
class SubgroupW:
    """A finitely generated unit subgroup with its dominance bookkeeping.

    labeling is a 0-based permutation of range(s); its first b entries name the
    real embeddings playing the leading role. Set by check_dominance.
    """

    generators: list[UnitElt]
    b: int
    labeling: tuple[int, ...] | None = None
    dominance: "DominanceReport | None" = None
    words: list[tuple[int, ...]] | None = None  # provenance over supplied units

    @property
    def rank(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class DominanceReport:
    status: str                       # EXACT / WINDOW_VERIFIED / REFUTED
    labeling: tuple[int, ...] | None  # satisfying labeling (0-based), if any
    margin: float                     # min |qualifying row entry| over tested words
    witness: tuple[int, ...] | None   # failing exponent word when refuted
    window: int


def _labelings(s: int, b: int):
    for combo in itertools.combinations(range(s), b):
        rest = tuple(i for i in range(s) if i not in combo)
        yield combo + rest


def _word_box(b: int, window: int):
    """All nonzero exponent vectors with max |e_i| <= window, by increasing
    sup-length then lexicographic order."""
    for length in range(1, window + 1):
        words = [e for e in itertools.product(range(-length, length + 1), repeat=b)
                 if max(abs(x) for x in e) == length]
        for e in sorted(words):
            yield e


def _word_box_l1(m: int, window: int):
    """Nonzero exponent vectors inside the sup-window, graded by |e|_1 then
    lexicographic. Grading by total length keeps single-unit words ahead of
    mixed products in the generator search."""
    words = [e for e in itertools.product(range(-window, window + 1), repeat=m)
             if any(e)]
    words.sort(key=lambda e: (sum(abs(x) for x in e), e))
    for e in words:
        yield sum(abs(x) for x in e), e


def check_dominance(w: SubgroupW, table: EmbeddingTable,
                    window: int = 10) -> DominanceReport:
    """Decide the dominance condition for W, searching all labelings.

    b = 1 is exact (rows scale linearly with the exponent, and the orthant is
    symmetric under negation); b >= 2 is verified over the exponent window
    only. A failing word is returned as a refutation witness. The satisfying
    labeling is recorded in w.
    """
    gens = [g for g in w.generators if not g.is_identity()]
    s = table.s
    if not gens:
        report = DominanceReport(EXACT, tuple(range(s)), math.inf, None, window)
        w.labeling, w.dominance = report.labeling, report
        return report

    b = w.b
    if len(gens) != b:
        raise ValueError(
            f"subgroup has {len(gens)} nontrivial generators but rank {b}")
    first_witness: tuple[int, ...] | None = None
    for labeling in _labelings(s, b):
        mats = [log_ratio_matrix(g, b, labeling) for g in gens]
        if b == 1:
            row = mats[0][0]
            if row_orthant(row) != 0:
                report = DominanceReport(EXACT, labeling,
                                         float(np.min(np.abs(row))), None, window)
                w.labeling, w.dominance = labeling, report
                return report
            if first_witness is None:
                first_witness = (1,)
            continue
        margin = math.inf
        failing = None
        for e in _word_box(b, window):
            mat = sum(c * m for c, m in zip(e, mats))
            best = 0.0
            for row in mat:
                if row_orthant(row) != 0:
                    best = max(best, float(np.min(np.abs(row))))
            if best == 0.0:
                failing = e
                break
            margin = min(margin, best)
        if failing is None:
            report = DominanceReport(WINDOW_VERIFIED, labeling, margin, None, window)
            w.labeling, w.dominance = labeling, report
            return report
        if first_witness is None:
            first_witness = failing

    report = DominanceReport(REFUTED, None, 0.0, first_witness, window)
    w.dominance = report
    return report


@dataclass(frozen=True)
class Candidate:
    exponents: tuple[int, ...]
    squared: bool
    unit: UnitElt
    margin: float


def search_w(field: NumberField, table: EmbeddingTable,
             fundamental_units: list[UnitElt], b: int, window: int = 10,
             allow_rank_s: bool = False) -> SubgroupW | None:
    """Greedy inductive search for a rank-b subgroup satisfying dominance.

    Extends a partial generator list one unit word at a time (exponents
    bounded by `window` over the supplied units), requiring check_dominance to
    pass at every stage. Words that are not totally positive are squared, not
    rejected. Candidates of the same word length are ranked by dominance
    margin (descending), ties broken lexicographically. Returns None when no
    extension works within the window.
    """
    s = table.s
    if b >= s and not allow_rank_s:
        raise RankTooLarge(f"construction requires b < s = {s}, got b = {b}")
    if b > s:
        raise RankTooLarge(f"b = {b} exceeds the number of real embeddings {s}")
    if b == 0:
        return SubgroupW([], 0, tuple(range(s)))
    if not fundamental_units:
        return None

    chosen: list[UnitElt] = []
    chosen_words: list[tuple[int, ...]] = []
    for target in range(1, b + 1):
        best: Candidate | None = None
        best_len = None
        for length, e in _word_box_l1(len(fundamental_units), window):
            if best is not None and length > best_len:
                break  # words come by increasing length; nothing shorter left
            cand = _make_candidate(field, table, fundamental_units, e)
            if cand is None:
                continue
            logs = [log_embedding(u) for u in chosen] + [log_embedding(cand.unit)]
            if np.linalg.matrix_rank(np.array(logs), tol=1e-9) < target:
                continue
            trial = SubgroupW(chosen + [cand.unit], target)
            report = check_dominance(trial, table, window)
            if report.status == REFUTED:
                continue
            cand = Candidate(cand.exponents, cand.squared, cand.unit, report.margin)
            if best is None or cand.margin > best.margin:
                best, best_len = cand, length
        if best is None:
            return None
        chosen.append(best.unit)
        chosen_words.append(best.exponents)

    result = SubgroupW(chosen, b, words=chosen_words)
    check_dominance(result, table, window)
    return result


def _make_candidate(field: NumberField, table: EmbeddingTable,
                    units: list[UnitElt], exponents) -> Candidate | None:
    signs = np.ones(len(units[0].signs), dtype=int)
    for u, e in zip(units, exponents):
        if e % 2:
            signs *= np.array(u.signs)
    squared = bool(np.any(signs < 0))
    exps = tuple(2 * e for e in exponents) if squared else tuple(exponents)
    unit = unit_word(field, table, units, exps)
    if unit.is_identity():
        return None
    return Candidate(exps, squared, unit, 0.0)


def is_reciprocal(u: UnitElt) -> bool:
    """True iff the unit's inverse is one of its conjugates; equivalently the
    minimal polynomial m of degree d satisfies c * m(X) = X^d m(1/X) with
    c = m(0) in {+-1}."""
    mp = u.elt.field.min_poly_elt(u.elt)
    coeffs = mp.int_coeffs()
    c = coeffs[0]
    if c not in (1, -1):
        raise NotAUnit(f"constant term {c} is not +-1")
    return all(c * a == b for a, b in zip(coeffs, reversed(coeffs)))


def invariant_pair_detector(w: SubgroupW, table: EmbeddingTable,
                            tol: float = 1e-9) -> set[tuple[int, int]]:
    """All pairs (i, j), 1-based, i < j, with |sigma_i(g) sigma_j(g) - 1| < tol
    for every generator g. Multiplicativity makes the generator test
    sufficient for the whole group. An empty set certifies that no alternating
    2-form on the lattice is W-invariant."""
    n = table.s + 2 * table.t
    pairs = {(i + 1, j + 1) for i in range(n) for j in range(i + 1, n)}
    for g in w.generators:
        if g.is_identity():
            continue
        vals = table.evaluate(g.elt)
        pairs = {(i, j) for (i, j) in pairs
                 if abs(vals[i - 1] * vals[j - 1] - 1.0) < tol}
    return pairs


def check_ot_admissible(a: SubgroupW, table: EmbeddingTable,
                        tol: float = 1e-9) -> bool:
    """True iff the projection of the generators' log vectors to the first s
    coordinates spans R^s (full lattice criterion for the b = s mode)."""
    s = table.s
    if a.rank != s:
        raise WrongRank(f"need exactly s = {s} generators, got {a.rank}")
    mat = np.array([log_embedding(g)[:s] for g in a.generators])
    return bool(abs(np.linalg.det(mat)) > tol)
