"""Exact univariate polynomials over Q, plus the mod-p and Sturm utilities
needed for field validation.

Coefficients are stored low-degree first (constant term at index 0), matching
the on-disk serialization of integer coefficient arrays.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .exact import to_fraction


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs: tuple[Fraction, ...] = _strip(
            [to_fraction(c) for c in coeffs])

    # -- basics ------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # degree of 0 is -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = to_fraction(c)
        return Poly([c * x for x in self.coeffs])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        b = other.coeffs
        if len(a) < len(b):
            return Poly([]), self
        quot = [Fraction(0)] * (len(a) - len(b) + 1)
        lead = other.leading()
        for k in range(len(a) - len(b), -1, -1):
            c = a[k + len(b) - 1] / lead
            quot[k] = c
            if c != 0:
                for j, y in enumerate(b):
                    a[k + j] -= c * y
        return Poly(quot), Poly(a[:len(b) - 1])

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def divides_exactly(self, other: "Poly") -> bool:
        """True iff self divides other with zero remainder."""
        return other.divmod(self)[1].is_zero()

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def squarefree_part(self) -> "Poly":
        if self.degree <= 0:
            return self.monic()
        g = self.gcd(self.derivative())
        return self.divmod(g)[0].monic()

    def is_squarefree(self) -> bool:
        return self.degree <= 0 or self.gcd(self.derivative()).degree == 0

    # -- evaluation ----------------------------------------------------------

    def __call__(self, x):
        """Horner evaluation; works for Fraction, float and complex x."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + (c if not isinstance(x, (float, complex)) else float(c))
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """Exact composition self(inner(X))."""
        acc = Poly([])
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly([c])
        return acc

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def from_int_coeffs(coeffs: Sequence[int]) -> Poly:
    return Poly(coeffs)


# --- Sturm real-root counting -------------------------------------------------


def _sign_at_inf(p: Poly, positive: bool) -> int:
    if p.is_zero():
        return 0
    lead = p.leading()
    if positive or p.degree % 2 == 0:
        return 1 if lead > 0 else -1
    return -1 if lead > 0 else 1


def _variations(signs: list[int]) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    if chain[-1].is_zero():
        chain.pop()
    return chain


def count_real_roots(p: Poly) -> int:
    """Number of distinct real roots of p (exact, via Sturm's theorem)."""
    if p.degree <= 0:
        return 0
    chain = sturm_chain(p.squarefree_part())
    at_minus = _variations([_sign_at_inf(q, positive=False) for q in chain])
    at_plus = _variations([_sign_at_inf(q, positive=True) for q in chain])
    return at_minus - at_plus


def count_real_roots_in(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in the half-open interval (lo, hi]."""
    chain = sturm_chain(p.squarefree_part())

    def var_at(x: Fraction) -> int:
        signs = []
        for q in chain:
            v = q(x)
            signs.append(0 if v == 0 else (1 if v > 0 else -1))
        return _variations(signs)

    return var_at(to_fraction(lo)) - var_at(to_fraction(hi))


# --- arithmetic mod p ---------------------------------------------------------
# Dense int-list polynomials over F_p, low degree first. Only what the
# irreducibility witness needs.


def _mp_strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _mp_strip(out)


def _mp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = a[:]
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        if c:
            for j, y in enumerate(m):
                a[shift + j] = (a[shift + j] - c * y) % p
        a.pop()
        _mp_strip(a)
        if not a:
            break
    return a


def _mp_powmod_x(e: int, m: list[int], p: int) -> list[int]:
    """X^e mod (m, p) by square and multiply."""
    result = [1]
    base = _mp_mod([0, 1], m, p)
    while e:
        if e & 1:
            result = _mp_mod(_mp_mul(result, base, p), m, p)
        base = _mp_mod(_mp_mul(base, base, p), m, p)
        e >>= 1
    return result


def _mp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = a[:], b[:]
    while b:
        a, b = b, _mp_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def is_irreducible_mod_p(poly: Poly, p: int) -> bool:
    """Rabin's test: monic degree-n f is irreducible over F_p iff
    X^(p^n) == X (mod f) and gcd(X^(p^(n/q)) - X, f) = 1 for primes q | n.
    """
    n = poly.degree
    m = [c % p for c in poly.int_coeffs()]
    if len(_mp_strip(m[:])) - 1 != n:
        return False  # degree dropped mod p
    m = _mp_strip(m)
    xq = _mp_powmod_x(p ** n, m, p)
    x = _mp_mod([0, 1], m, p)
    if xq != x:
        return False
    for q in _prime_divisors(n):
        h = _mp_powmod_x(p ** (n // q), m, p)
        diff = _mp_strip([(a - b) % p for a, b in
                          zip(h + [0] * len(x), x + [0] * len(h))])
        g = _mp_gcd(m, diff, p)
        if len(g) != 1:
            return False
    return True


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                59, 61, 67, 71, 73, 79, 83, 89, 97, 101)


def irreducibility_witness(poly: Poly, primes: Sequence[int] = SMALL_PRIMES) -> int | None:
    """Smallest prime in `primes` modulo which `poly` stays irreducible,
    or None if no witness is found (the polynomial may still be irreducible).
    """
    for p in primes:
        if poly.int_coeffs()[-1] % p == 0:
            continue  # leading coefficient vanishes mod p
        if is_irreducible_mod_p(poly, p):
            return p
    return None
