"""Wieferich-case checks on the companion matrix of beta = alpha - a.

Everything here is verification: the congruence shapes of the powers of the
matrix are computed exactly and compared entry by entry, and the
characteristic polynomial of beta' = beta^(p-1)/p is derived from the exact
rational matrix.  The maximal-order pipeline never relies on these results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import CongruenceViolation, NonIntegralCharPoly, NotWieferich
from .exactmath.integers import is_wieferich
from .exactmath.linalg import mat_pow, rational_charpoly, rational_nullspace
from .exactmath.polys import IntPoly
from .orders import (
    AlgebraicElement,
    OrderLattice,
    discriminant,
    element_power,
    is_q_maximal,
    order_from_generator,
    power_order,
    product_order,
)


def _require_wieferich(p: int, a: int):
    if a % p == 0 or not is_wieferich(p, a):
        raise NotWieferich(f"{p} is not a Wieferich prime to base {a}")


@dataclass(frozen=True)
class CompanionMatrix:
    p: int
    a: int
    M: tuple[tuple[int, ...], ...]

    def entry(self, i: int, j: int) -> int:
        """1-based access, matching the usual m_ij indexing."""
        return self.M[i - 1][j - 1]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.M]


def companion_matrix(p: int, a: int) -> CompanionMatrix:
    """Matrix of multiplication by beta on 1, beta, ..., beta^(p-1) (columns are images)."""
    M = [[0] * p for _ in range(p)]
    M[0][p - 1] = a - a**p
    for i in range(2, p + 1):
        M[i - 1][i - 2] = 1
        M[i - 1][p - 1] = -comb(p, i - 1) * a ** (p - (i - 1))
    return CompanionMatrix(p, a, tuple(tuple(r) for r in M))


@dataclass
class StructureReport:
    p: int
    a: int
    k: int
    checked: dict[str, int] = field(default_factory=dict)

    def tick(self, rule: str):
        self.checked[rule] = self.checked.get(rule, 0) + 1

    @property
    def total(self) -> int:
        return sum(self.checked.values())


def matrix_power_structure(p: int, a: int, k: int) -> StructureReport:
    """Check every congruence region of M^k entry by entry.

    Raises CongruenceViolation naming the first offending entry.
    """
    _require_wieferich(p, a)
    if not 1 <= k <= p - 1:
        raise ValueError("k must lie in [1, p-1]")
    Mk = mat_pow(companion_matrix(p, a).rows(), k)
    m = lambda i, j: Mk[i - 1][j - 1]  # noqa: E731
    rep = StructureReport(p, a, k)
    p2, p3 = p * p, p**3
    w = a - a**p

    def need(ok, rule, i, j, detail=""):
        if not ok:
            raise CongruenceViolation(rule, i, j, m(i, j), detail)
        rep.tick(rule)

    # identity block in the first p-k columns
    for i in range(1, p + 1):
        for j in range(1, p - k + 1):
            need(m(i, j) == int(j == i - k), "identity-block", i, j)
    # first row
    need(m(1, p + 1 - k) == w, "first-row-corner", 1, p + 1 - k)
    need(w * p % p3 == 0, "first-row-p3", 1, p + 1 - k, "p^3 | p(a - a^p)")
    for j in range(p + 2 - k, p + 1):
        need(m(1, j) % (p * w) == 0, "first-row-divisibility", 1, j)
    for i in range(2, p + 1):
        for j in range(p + i - k, p + 1):
            need(m(i, j) % p2 == 0, "vanishing-mod-p2", i, j)
        for j in range(p - k + 1, min(p, p - k + i - 1) + 1):
            t = i - (j - (p - k))
            need((m(i, j) + comb(p, t) * a ** (p - t)) % p2 == 0, "binomial-mod-p2", i, j)
        j = p + (i - 1) - k
        if i <= k + 1 and 1 <= j <= p:
            need((m(i, j) + p) % p2 == 0, "minus-p-diagonal", i, j)
    if p >= 5 and 3 <= k <= p - 1:
        need(m(2, p) % p3 != 0, "m2p-not-mod-p3", 2, p)
    if k == p - 1:
        _check_full_shape(Mk, p, a, need)
    return rep


def _check_full_shape(Mk, p, a, need):
    p2 = p * p
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            v = Mk[i - 1][j - 1]
            if i == 1:
                expect = 0
            elif j == 1:
                expect = int(i == p)
            elif i == j:
                expect = -p
            elif j < i:
                t = i - (j - 1)
                expect = -comb(p, t) * a ** (p - t)
            else:
                expect = 0
            if j == 1:
                need(v == expect, "full-shape-first-column", i, j)
            else:
                need((v - expect) % p2 == 0, "full-shape-mod-p2", i, j)


@dataclass(frozen=True)
class ChiReport:
    p: int
    a: int
    chi: IntPoly
    chi_minus1: int
    p_maximal_zbetaprime: bool
    congruence_ok: bool

    def to_json(self) -> dict:
        return {
            "chi": self.chi.to_json(),
            "chi_minus1": str(self.chi_minus1),
            "p_maximal_zbetaprime": self.p_maximal_zbetaprime,
            "congruence_ok": self.congruence_ok,
        }


def chi_of_beta_prime(p: int, a: int) -> ChiReport:
    """Characteristic polynomial of beta' = M^(p-1)/p, with its mod-p shape and chi(-1) test."""
    _require_wieferich(p, a)
    N = mat_pow(companion_matrix(p, a).rows(), p - 1)
    num, den = rational_charpoly([[Fraction(x, p) for x in row] for row in N])
    if any(c % den for c in num.coeffs):
        raise NonIntegralCharPoly(f"charpoly of beta' for p={p}, a={a} is not integral")
    chi = num.exact_div(den)
    target = IntPoly([0, 1]) * IntPoly([1, 1]) ** (p - 1)
    congruent = not (chi - target).reduce(p)
    v = chi(-1)
    return ChiReport(p, a, chi, v, v % (p * p) != 0, congruent)


def minimal_polynomial(x: AlgebraicElement, minpoly: IntPoly) -> IntPoly:
    """Monic minimal polynomial of x over Q, via the first linear relation among its powers.

    Raises if the result is not integral.
    """
    n = minpoly.degree
    powers = [AlgebraicElement.power(0, n)]
    for d in range(1, n + 1):
        powers.append(element_power(x, d, minpoly))
        kern = rational_nullspace([pw.coords() for pw in powers])
        if kern:
            rel = kern[0]
            lead = rel[-1]
            coeffs = [c / lead for c in rel]
            if any(c.denominator != 1 for c in coeffs):
                raise NonIntegralCharPoly(f"minimal polynomial {coeffs} not integral")
            return IntPoly(int(c) for c in coeffs)
    raise AssertionError("no relation of degree <= n")


def beta_prime_element(p: int, a: int) -> AlgebraicElement:
    mp = IntPoly.x_pow_minus(p, a)
    return AlgebraicElement.from_poly(IntPoly([-a, 1]) ** (p - 1), p, mp, p)


@dataclass(frozen=True)
class PMaximalFactor:
    generators: tuple[str, ...]
    order: OrderLattice
    verified: bool

    @property
    def disc(self) -> int:
        return discriminant(self.order)


def p_maximal_factor(p: int, a: int) -> PMaximalFactor:
    """Z[beta'] for p >= 5, Z[beta'] * Z[alpha] for p = 3; verified with the radical test."""
    _require_wieferich(p, a)
    mp = IntPoly.x_pow_minus(p, a)
    order = order_from_generator(beta_prime_element(p, a), mp)
    gens = ("beta'",)
    if p == 3:
        order = product_order(order, power_order(mp))
        gens = ("beta'", "alpha")
    return PMaximalFactor(gens, order, is_q_maximal(order, p))


def wieferich_bases(p: int, limit: int) -> list[int]:
    """Bases 2 <= r <= limit, coprime to p, to which p is a Wieferich prime."""
    return [r for r in range(2, limit + 1) if r % p and is_wieferich(p, r)]
