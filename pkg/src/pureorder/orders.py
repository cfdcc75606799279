"""Orders of a number field as HNF lattices over a power basis.

An order is stored as ``basis / denom`` where ``basis`` is a lower-triangular
integer matrix in Hermite normal form whose row k holds ``denom`` times the
coordinates of the k-th basis element over 1, theta, ..., theta^(n-1).
Because the form is canonical, two orders are equal iff their dataclass
values are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm, prod

from .errors import MinpolyMismatch, NotARing, NotContained, RankDeficient
from .exactmath.linalg import bareiss_det, hnf_lower, left_kernel_mod, mat_mul
from .exactmath.polys import IntPoly


@dataclass(frozen=True)
class AlgebraicElement:
    """Exact element sum(num[k] * theta^k) / den of Q(theta)."""

    num: tuple[int, ...]
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        g = gcd(self.den, *self.num)
        if g > 1:
            object.__setattr__(self, "num", tuple(c // g for c in self.num))
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def from_fractions(cls, coords) -> "AlgebraicElement":
        fr = [Fraction(c) for c in coords]
        d = lcm(1, *(f.denominator for f in fr))
        return cls(tuple(int(f * d) for f in fr), d)

    @classmethod
    def power(cls, k: int, n: int, den: int = 1) -> "AlgebraicElement":
        """theta^k / den for 0 <= k < n."""
        return cls(tuple(int(i == k) for i in range(n)), den)

    @classmethod
    def from_poly(cls, f: IntPoly, n: int, minpoly: IntPoly, den: int = 1) -> "AlgebraicElement":
        """f(theta) / den reduced modulo the minimal polynomial."""
        r = f % minpoly
        return cls(tuple(r[k] for k in range(n)), den)

    @property
    def n(self) -> int:
        return len(self.num)

    def coords(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def is_integral_vector(self) -> bool:
        return self.den == 1

    def __add__(self, other: "AlgebraicElement") -> "AlgebraicElement":
        d = lcm(self.den, other.den)
        a, b = d // self.den, d // other.den
        return AlgebraicElement(tuple(a * x + b * y for x, y in zip(self.num, other.num)), d)

    def __sub__(self, other: "AlgebraicElement") -> "AlgebraicElement":
        return self + other.scale(-1)

    def scale(self, c: int | Fraction) -> "AlgebraicElement":
        c = Fraction(c)
        return AlgebraicElement(tuple(x * c.numerator for x in self.num), self.den * c.denominator)

    def to_json(self) -> dict:
        return {"num": [str(c) for c in self.num], "den": str(self.den)}


def multiply_elements(x: AlgebraicElement, y: AlgebraicElement, minpoly: IntPoly) -> AlgebraicElement:
    prod_poly = IntPoly(x.num) * IntPoly(y.num)
    return AlgebraicElement.from_poly(prod_poly, minpoly.degree, minpoly, x.den * y.den)


def element_power(x: AlgebraicElement, k: int, minpoly: IntPoly) -> AlgebraicElement:
    n = minpoly.degree
    out, base = AlgebraicElement.power(0, n), x
    while k:
        if k & 1:
            out = multiply_elements(out, base, minpoly)
        base = multiply_elements(base, base, minpoly)
        k >>= 1
    return out


def multiplication_matrix(x: AlgebraicElement, minpoly: IntPoly) -> list[list[Fraction]]:
    """Rows are the coordinates of x * theta^k; a right-acting matrix."""
    n = minpoly.degree
    return [multiply_elements(x, AlgebraicElement.power(k, n), minpoly).coords() for k in range(n)]


def power_traces(minpoly: IntPoly, count: int) -> list[int]:
    """Tr(theta^k) for 0 <= k < count via Newton's identities."""
    n = minpoly.degree
    c = minpoly.coeffs  # monic, c[n] = 1
    s = [n]
    for k in range(1, count):
        if k <= n:
            acc = k * c[n - k]
            for i in range(1, k):
                acc += c[n - i] * s[k - i]
        else:
            acc = 0
            for i in range(1, n + 1):
                acc += c[n - i] * s[k - i]
        s.append(-acc)
    return s[:count]


def trace_matrix(minpoly: IntPoly) -> list[list[int]]:
    n = minpoly.degree
    s = power_traces(minpoly, 2 * n - 1)
    return [[s[i + j] for j in range(n)] for i in range(n)]


def trace(x: AlgebraicElement, minpoly: IntPoly) -> Fraction:
    s = power_traces(minpoly, minpoly.degree)
    return Fraction(sum(a * t for a, t in zip(x.num, s)), x.den)


@dataclass(frozen=True)
class OrderLattice:
    minpoly: IntPoly
    denom: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def p(self) -> int:
        return self.minpoly.degree

    @property
    def n(self) -> int:
        return self.minpoly.degree

    def elements(self) -> list[AlgebraicElement]:
        return [AlgebraicElement(row, self.denom) for row in self.basis]

    @cached_property
    def det_basis(self) -> Fraction:
        """Covolume relative to the power basis: prod(pivots) / denom^n."""
        return Fraction(prod(self.basis[k][k] for k in range(self.n)), self.denom**self.n)

    def coordinates(self, x: AlgebraicElement) -> list[int] | None:
        """Integer coordinates of x in this basis, or None if x is not a member."""
        n = self.n
        if len(x.num) != n:
            raise ValueError("dimension mismatch")
        if any(c * self.denom % x.den for c in x.num):
            return None
        y = [c * self.denom // x.den for c in x.num]
        out = [0] * n
        for k in range(n - 1, -1, -1):
            if y[k] == 0:
                continue
            piv = self.basis[k][k]
            if y[k] % piv:
                return None
            t = y[k] // piv
            out[k] = t
            row = self.basis[k]
            for i in range(k + 1):
                y[i] -= t * row[i]
        return out

    def __contains__(self, x: AlgebraicElement) -> bool:
        return self.coordinates(x) is not None

    def contains_order(self, other: "OrderLattice") -> bool:
        return all(e in self for e in other.elements())

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "minpoly": self.minpoly.to_json(),
            "denom": str(self.denom),
            "basis": [[str(x) for x in row] for row in self.basis],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "OrderLattice":
        mp = IntPoly(int(c) for c in obj["minpoly"])
        rows = [[int(x) for x in row] for row in obj["basis"]]
        lat = hnf_from_rows(mp, rows, int(obj["denom"]))
        if lat.basis != tuple(tuple(r) for r in rows) or lat.denom != int(obj["denom"]):
            raise ValueError("serialized lattice is not in canonical HNF")
        return lat


def hnf_from_rows(minpoly: IntPoly, rows, denom: int) -> OrderLattice:
    n = minpoly.degree
    basis = hnf_lower(rows, n)
    if len(basis) < n:
        raise RankDeficient(f"generators span rank {len(basis)} < {n}")
    mat = [basis[k] for k in range(n)]
    g = gcd(denom, *(x for row in mat for x in row))
    return OrderLattice(minpoly, denom // g, tuple(tuple(x // g for x in row) for row in mat))


def hnf_from_generators(minpoly: IntPoly, gens) -> OrderLattice:
    """Canonical lattice spanned over Z by the given elements."""
    gens = list(gens)
    d = lcm(1, *(g.den for g in gens))
    rows = [[c * (d // g.den) for c in g.num] for g in gens]
    return hnf_from_rows(minpoly, rows, d)


def power_order(minpoly: IntPoly) -> OrderLattice:
    """Z[theta] for theta a root of minpoly."""
    n = minpoly.degree
    return OrderLattice(minpoly, 1, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def order_from_generator(x: AlgebraicElement, minpoly: IntPoly) -> OrderLattice:
    """Z[x] = span of 1, x, ..., x^(n-1); x must be integral of degree n."""
    n = minpoly.degree
    powers = [AlgebraicElement.power(0, n)]
    for _ in range(n - 1):
        powers.append(multiply_elements(powers[-1], x, minpoly))
    return hnf_from_generators(minpoly, powers)


def product_order(O1: OrderLattice, O2: OrderLattice) -> OrderLattice:
    if O1.minpoly != O2.minpoly:
        raise MinpolyMismatch("orders live over different power bases")
    mp = O1.minpoly
    gens = [multiply_elements(x, y, mp) for x in O1.elements() for y in O2.elements()]
    return hnf_from_generators(mp, gens)


def discriminant(O: OrderLattice) -> int:
    """det of the trace Gram matrix of the basis, as an exact integer."""
    T = trace_matrix(O.minpoly)
    R = [list(r) for r in O.basis]
    gram = mat_mul(mat_mul(R, T), [list(c) for c in zip(*R)])
    num = bareiss_det(gram)
    den = O.denom ** (2 * O.n)
    if num % den:
        raise NotARing("discriminant is not an integer; lattice is not an order")
    return num // den


def index(sub: OrderLattice, sup: OrderLattice) -> int:
    """[sup : sub] for sub contained in sup."""
    if sub.minpoly != sup.minpoly:
        raise MinpolyMismatch("orders live over different power bases")
    if not sup.contains_order(sub):
        raise NotContained("first order is not contained in the second")
    ratio = sub.det_basis / sup.det_basis
    assert ratio.denominator == 1
    return abs(ratio.numerator)


def structure_constants(O: OrderLattice) -> list[list[list[int]]]:
    """table[i][j] = coordinates of w_i * w_j in the basis w of O."""
    els = O.elements()
    n = O.n
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            c = O.coordinates(multiply_elements(els[i], els[j], O.minpoly))
            if c is None:
                raise NotARing("basis products leave the lattice")
            table[i][j] = table[j][i] = c
    return table


def is_ring(O: OrderLattice) -> bool:
    n = O.n
    if AlgebraicElement.power(0, n) not in O:
        return False
    try:
        structure_constants(O)
    except NotARing:
        return False
    return True


def _mul_coords(table, x, y, q=None):
    n = len(x)
    out = [0] * n
    for i in range(n):
        if x[i]:
            for j in range(n):
                if y[j]:
                    c = x[i] * y[j]
                    t = table[i][j]
                    for k in range(n):
                        out[k] += c * t[k]
    if q is not None:
        out = [v % q for v in out]
    return out


def _pow_coords_mod(table, x, e, q, one):
    out, base = list(one), [v % q for v in x]
    while e:
        if e & 1:
            out = _mul_coords(table, out, base, q)
        base = _mul_coords(table, base, base, q)
        e >>= 1
    return out


def _solve_lower(basis_rows, y):
    # integer coordinates of y (w-coords) over a lower-triangular integer basis
    n = len(y)
    y = list(y)
    out = [0] * n
    for k in range(n - 1, -1, -1):
        if y[k]:
            piv = basis_rows[k][k]
            if y[k] % piv:
                return None
            t = y[k] // piv
            out[k] = t
            row = basis_rows[k]
            for i in range(k + 1):
                y[i] -= t * row[i]
    return out


def q_radical(O: OrderLattice, q: int, table=None):
    """Rows (in O-coordinates, HNF) of the q-radical {x : x^(q^j) in qO}, q^j >= n."""
    n = O.n
    table = table or structure_constants(O)
    one = O.coordinates(AlgebraicElement.power(0, n))
    e = q
    while e < n:
        e *= q
    frob = [_pow_coords_mod(table, [int(i == k) for i in range(n)], e, q, one) for k in range(n)]
    kern = left_kernel_mod(frob, q)
    rows = [[q * int(i == k) for i in range(n)] for k in range(n)] + kern
    h = hnf_lower(rows, n)
    return [h[k] for k in range(n)]


def multiplier_ring(O: OrderLattice, q: int) -> OrderLattice:
    """{x in K : x I in I} for the q-radical I of O.

    Equal to O exactly when O is q-maximal (Pohst-Zassenhaus).
    """
    n = O.n
    table = structure_constants(O)
    rad = q_radical(O, q, table)
    # Map u in O/qO to the matrix of multiplication by u on I/qI.
    images = []
    for k in range(n):
        ek = [int(i == k) for i in range(n)]
        blob = []
        for iota in rad:
            c = _solve_lower(rad, _mul_coords(table, ek, iota))
            if c is None:
                raise NotARing("radical is not an ideal")
            blob.extend(v % q for v in c)
        images.append(blob)
    kern = left_kernel_mod(images, q)
    if not kern:
        return O
    # U = qO + lifts of the kernel, and the multiplier ring is U / q.
    u_rows = [[q * int(i == k) for i in range(n)] for k in range(n)] + kern
    els = [list(r) for r in O.basis]
    power_rows = [[sum(u[i] * els[i][c] for i in range(n)) for c in range(n)] for u in u_rows]
    return hnf_from_rows(O.minpoly, power_rows, O.denom * q)


def is_q_maximal(O: OrderLattice, q: int) -> bool:
    return multiplier_ring(O, q) == O


def change_generator(O: OrderLattice, theta: AlgebraicElement, target_minpoly: IntPoly) -> OrderLattice:
    """Re-express an order given over powers of theta in the power basis of target_minpoly's root.

    theta is given in coordinates of the target power basis.
    """
    n = target_minpoly.degree
    if O.n != n:
        raise MinpolyMismatch("degree mismatch")
    powers = [AlgebraicElement.power(0, n)]
    for _ in range(n - 1):
        powers.append(multiply_elements(powers[-1], theta, target_minpoly))
    d = lcm(1, *(x.den for x in powers))
    P = [[c * (d // x.den) for c in x.num] for x in powers]
    rows = mat_mul([list(r) for r in O.basis], P)
    return hnf_from_rows(target_minpoly, rows, O.denom * d)
