"""Exact arithmetic in a number field K = Q[X]/<P> and its archimedean
embeddings.

Elements are exact rational coordinate vectors in a user-supplied integral
basis (default: the power basis). All ring operations are exact; only the
embedding table is floating point. The embedding ordering convention is:
positions 0..s-1 real, descending; positions s..s+t-1 upper-half-plane
complex, sorted by real part; positions s+t..n-1 their conjugates in matching
order, so value[s+i] == conj(value[s+t+i]).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .errors import (AmbiguousRealComplexSplit, BasisMissingOne, BasisNotRing,
                     NonMonic, NotSquarefree, OracleMismatch, RootFindingFailed)
from .exact import Matrix, to_fraction
from .polynomials import Poly, count_real_roots, irreducibility_witness
from .roots import all_roots

REAL_SPLIT_REL = 1e-8      # |Im z| < REAL_SPLIT_REL*(1+|z|)  =>  real
GUARD_DECADES = 10.0       # ambiguous band above the split threshold


@dataclass(frozen=True)
class FieldElement:
    """Element of a NumberField, as exact coordinates in the integral basis."""

    field: "NumberField"
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.field.degree:
            raise ValueError("coordinate vector has wrong length")

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field,
                            tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field,
                            tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self.field.mul(self, other)

    def __pow__(self, k: int) -> "FieldElement":
        return self.field.pow(self, k)

    def inverse(self) -> "FieldElement":
        return self.field.inv(self)

    def _check(self, other: "FieldElement") -> None:
        if other.field is not self.field:
            raise ValueError("elements of different fields")

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldElement)
                and other.field is self.field and other.coords == self.coords)

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"FieldElement({[str(c) for c in self.coords]})"


class NumberField:
    """A validated number field: monic squarefree defining polynomial plus a
    multiplicatively closed integral basis. Use validate_field() to build one.
    """

    def __init__(self, min_poly: Poly, basis: Matrix, signature: tuple[int, int],
                 witness_prime: int | None):
        self.min_poly = min_poly
        self.degree = min_poly.degree
        self.basis = basis                      # columns = basis elts, power coords
        self.basis_inv = exact.inverse(basis)
        self.signature = signature              # (s, t), n = s + 2t
        self.witness_prime = witness_prime      # None => irreducibility uncertified
        # power-basis reduction: X^n == reduction_poly(X) mod P
        self._reduction = tuple(-c for c in min_poly.coeffs[:-1])

    # -- element construction ------------------------------------------------

    def element(self, coords) -> FieldElement:
        return FieldElement(self, tuple(to_fraction(c) for c in coords))

    def from_power_coords(self, coords) -> FieldElement:
        vec = tuple(to_fraction(c) for c in coords)
        return FieldElement(self, exact.mat_vec(self.basis_inv, vec))

    def zero(self) -> FieldElement:
        return self.element([0] * self.degree)

    def one(self) -> FieldElement:
        return self.from_power_coords([1] + [0] * (self.degree - 1))

    def gen(self) -> FieldElement:
        """The class of X (root of min_poly) in the integral basis."""
        return self.from_power_coords([0, 1] + [0] * (self.degree - 2))

    def rational(self, r) -> FieldElement:
        return self.from_power_coords([to_fraction(r)] + [0] * (self.degree - 1))

    # -- ring operations -------------------------------------------------------

    def power_coords(self, x: FieldElement) -> tuple[Fraction, ...]:
        return exact.mat_vec(self.basis, x.coords)

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        pa = self.power_coords(a)
        pb = self.power_coords(b)
        n = self.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(pa):
            if x == 0:
                continue
            for j, y in enumerate(pb):
                prod[i + j] += x * y
        # reduce X^k for k >= n using X^n = reduction_poly(X)
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c == 0:
                continue
            prod[k] = Fraction(0)
            for j, r in enumerate(self._reduction):
                prod[k - n + j] += c * r
        return self.from_power_coords(prod[:n])

    def pow(self, a: FieldElement, k: int) -> FieldElement:
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, a: FieldElement) -> FieldElement:
        try:
            coords = exact.solve(self.mult_matrix(a), self.one().coords)
        except ValueError as exc:
            raise ZeroDivisionError("element is zero or a zero divisor") from exc
        return FieldElement(self, coords)

    def word(self, bases: list[FieldElement], exponents) -> FieldElement:
        """Product of bases[i] ** exponents[i]."""
        result = self.one()
        for b, e in zip(bases, exponents):
            if e:
                result = self.mul(result, self.pow(b, int(e)))
        return result

    # -- characteristic / minimal polynomials ----------------------------------

    def mult_matrix(self, x: FieldElement) -> Matrix:
        """Matrix of multiplication by x in the integral basis (exact)."""
        cols = []
        for j in range(self.degree):
            bj = self.element([int(i == j) for i in range(self.degree)])
            cols.append(self.mul(x, bj).coords)
        return exact.transpose(exact.matrix(cols))

    def char_poly_mult(self, x: FieldElement) -> Poly:
        return Poly(exact.char_poly(self.mult_matrix(x)))

    def min_poly_elt(self, x: FieldElement) -> Poly:
        """Minimal polynomial of x, computed two independent ways.

        Route one: exact squarefree part of the characteristic polynomial.
        Route two: smallest-degree monic dependency among 1, x, x^2, ...
        The routes must agree exactly; otherwise OracleMismatch.
        """
        via_char = self.char_poly_mult(x).squarefree_part()

        powers = [self.one().coords]
        for _ in range(self.degree):
            powers.append(self.mul(x, self.element(powers[-1])).coords)
        dep = exact.first_dependency(powers)
        if dep is None:
            raise OracleMismatch("no dependency among powers up to the degree")
        via_dep = Poly(dep)

        if via_char != via_dep:
            raise OracleMismatch(
                f"minimal polynomial routes disagree: {via_char} vs {via_dep}")
        return via_char


def validate_field(p_coeffs, basis=None) -> NumberField:
    """Validate defining data and return a NumberField.

    p_coeffs: integer coefficients of the defining polynomial, constant first.
    basis: optional n x n rational matrix whose columns express the integral
    basis in the power basis; defaults to the power basis (identity).

    Checks: monic, squarefree, basis invertible, basis contains 1, basis closed
    under multiplication with integer coordinates. Signature is certified by a
    Sturm count. Irreducibility is only witnessed modulo a small prime when one
    exists; otherwise the field carries a warning flag (witness_prime None).
    """
    p = Poly(p_coeffs)
    if not p.is_integral():
        raise ValueError("defining polynomial must have integer coefficients")
    if p.degree < 2:
        raise ValueError("defining polynomial must have degree >= 2")
    if not p.is_monic():
        raise NonMonic(f"leading coefficient {p.leading()} != 1")
    if not p.is_squarefree():
        raise NotSquarefree("defining polynomial has a repeated factor")

    n = p.degree
    mat = exact.identity(n) if basis is None else exact.matrix(basis)
    if len(mat) != n or any(len(row) != n for row in mat):
        raise BasisNotRing(f"basis must be {n}x{n}")
    try:
        exact.inverse(mat)
    except ValueError as exc:
        raise BasisNotRing("basis matrix is singular") from exc

    one_power = tuple([Fraction(1)] + [Fraction(0)] * (n - 1))
    cols = exact.transpose(mat)
    if one_power not in cols:
        raise BasisMissingOne("no basis column equals 1")

    s = count_real_roots(p)
    if (n - s) % 2:
        raise AmbiguousRealComplexSplit(
            "Sturm count inconsistent with conjugate pairing")
    field = NumberField(p, mat, (s, (n - s) // 2),
                        irreducibility_witness(p))

    # ring closure: all pairwise products of basis elements must have integer
    # coordinates in the basis
    for i in range(n):
        bi = field.element([int(k == i) for k in range(n)])
        for j in range(i, n):
            bj = field.element([int(k == j) for k in range(n)])
            prod = field.mul(bi, bj)
            if not prod.is_integral():
                raise BasisNotRing(
                    f"product of basis elements {i} and {j} leaves the order")
    return field


@dataclass(frozen=True)
class EmbeddingTable:
    """Numeric values of the n embeddings of the field generator, in the
    fixed ordering convention (see module docstring)."""

    field: NumberField
    values: tuple[complex, ...]
    s: int
    t: int
    tol: float

    def evaluate(self, x: FieldElement) -> tuple[complex, ...]:
        """sigma_i(x) for every embedding, as complex numbers (the first s are
        exactly real)."""
        power = [float(c) for c in self.field.power_coords(x)]
        out = []
        for i, root in enumerate(self.values):
            if i < self.s:
                acc = 0.0
                for c in reversed(power):
                    acc = acc * root.real + c
                out.append(complex(acc, 0.0))
            else:
                acc = 0j
                for c in reversed(power):
                    acc = acc * root + c
                out.append(acc)
        return tuple(out)

    def real_values(self, x: FieldElement) -> list[float]:
        return [v.real for v in self.evaluate(x)[:self.s]]


def embeddings(field: NumberField, tol: float = 1e-9) -> EmbeddingTable:
    """Find and order all n roots of the defining polynomial.

    Real/complex classification uses the relative threshold
    |Im z| < 1e-8*(1+|z|), with a one-decade guard band that raises
    AmbiguousRealComplexSplit instead of silently misclassifying. The result
    is cross-checked against the exact Sturm signature.
    """
    roots = all_roots(field.min_poly.float_coeffs(), tol)

    reals: list[float] = []
    upper: list[complex] = []
    lower: list[complex] = []
    for z in roots:
        thr = REAL_SPLIT_REL * (1.0 + abs(z))
        im = abs(z.imag)
        if im < thr:
            reals.append(z.real)
        elif im < GUARD_DECADES * thr:
            raise AmbiguousRealComplexSplit(
                f"root {z} has |Im| in the guard band [{thr:.2e}, {GUARD_DECADES * thr:.2e})")
        elif z.imag > 0:
            upper.append(z)
        else:
            lower.append(z)

    s, t = field.signature
    if len(reals) != s or len(upper) != t or len(lower) != t:
        raise AmbiguousRealComplexSplit(
            f"numeric split ({len(reals)} real, {len(upper)}+{len(lower)} complex) "
            f"contradicts the Sturm signature {field.signature}")

    reals.sort(reverse=True)
    upper.sort(key=lambda z: z.real)
    paired: list[complex] = []
    pool = list(lower)
    for z in upper:
        match = min(pool, key=lambda w: abs(w.conjugate() - z))
        pool.remove(match)
        paired.append((z + match.conjugate()) / 2)  # enforce exact conjugacy

    values = tuple([complex(r, 0.0) for r in reals]
                   + paired + [z.conjugate() for z in paired])

    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if abs(values[i] - values[j]) <= tol:
                raise RootFindingFailed(
                    f"embeddings {i} and {j} closer than tol={tol:.1e}")
    return EmbeddingTable(field, values, s, t, tol)
