"""Dense univariate polynomials over Z and over prime fields.

Coefficients are stored lowest degree first with no trailing zeros, so the
zero polynomial is the empty tuple.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from ..errors import ModulusMismatch, NonMonicInput


def _trim(coeffs) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in coeffs))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls([0] * k + [c])

    @classmethod
    def x_pow_minus(cls, p: int, a: int) -> "IntPoly":
        """X^p - a."""
        return cls([-a] + [0] * (p - 1) + [1])

    @classmethod
    def shifted_radical(cls, p: int, a: int) -> "IntPoly":
        """(X + a)^p - a, the minimal polynomial of alpha - a."""
        c = [comb(p, i) * a ** (p - i) for i in range(p + 1)]
        c[0] -= a
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lead == 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        out, base = IntPoly([1]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod_monic(self, d: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        if not d.is_monic():
            raise NonMonicInput("divisor must be monic")
        r = list(self.coeffs)
        dd = d.degree
        if len(r) - 1 < dd:
            return IntPoly(), self
        qt = [0] * (len(r) - dd)
        for k in range(len(r) - 1, dd - 1, -1):
            c = r[k]
            if c:
                qt[k - dd] = c
                for i, y in enumerate(d.coeffs):
                    r[k - dd + i] -= c * y
        return IntPoly(qt), IntPoly(r[:dd])

    def __mod__(self, d: "IntPoly") -> "IntPoly":
        return self.divmod_monic(d)[1]

    def exact_div(self, n: int) -> "IntPoly":
        if any(c % n for c in self.coeffs):
            raise ArithmeticError(f"{self} not divisible by {n}")
        return IntPoly(c // n for c in self.coeffs)

    def exact_div_poly(self, d: "IntPoly") -> "IntPoly":
        """Exact quotient self / d over Z (d need not be monic)."""
        if not d:
            raise ZeroDivisionError
        r = list(self.coeffs)
        dd, ld = d.degree, d.lead
        if len(r) - 1 < dd:
            if r:
                raise ArithmeticError("inexact polynomial division")
            return IntPoly()
        qt = [0] * (len(r) - dd)
        for k in range(len(r) - 1, dd - 1, -1):
            c = r[k]
            if c:
                if c % ld:
                    raise ArithmeticError("inexact polynomial division")
                c //= ld
                qt[k - dd] = c
                for i, y in enumerate(d.coeffs):
                    r[k - dd + i] -= c * y
        if any(r[:dd]):
            raise ArithmeticError("inexact polynomial division")
        return IntPoly(qt)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_scale(self, s: int) -> "IntPoly":
        """f(s*X)."""
        return IntPoly(c * s**i for i, c in enumerate(self.coeffs))

    def reduce(self, q: int) -> "ModPoly":
        return ModPoly(q, self.coeffs)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        return _render(self.coeffs)


@dataclass(frozen=True)
class ModPoly:
    q: int
    coeffs: tuple[int, ...]

    def __init__(self, q: int, coeffs=()):
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "coeffs", _trim(c % q for c in coeffs))

    @classmethod
    def x(cls, q: int) -> "ModPoly":
        return cls(q, (0, 1))

    @classmethod
    def one(cls, q: int) -> "ModPoly":
        return cls(q, (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lead == 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _check(self, other: "ModPoly"):
        if self.q != other.q:
            raise ModulusMismatch(f"moduli {self.q} and {other.q} differ")

    def __add__(self, other: "ModPoly") -> "ModPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly(self.q, (self[i] + other[i] for i in range(n)))

    def __neg__(self) -> "ModPoly":
        return ModPoly(self.q, (-c for c in self.coeffs))

    def __sub__(self, other: "ModPoly") -> "ModPoly":
        return self + (-other)

    def __mul__(self, other) -> "ModPoly":
        if isinstance(other, int):
            return ModPoly(self.q, (c * other for c in self.coeffs))
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return ModPoly(self.q)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return ModPoly(self.q, out)

    __rmul__ = __mul__

    def monic(self) -> "ModPoly":
        if not self.coeffs:
            return self
        inv = pow(self.lead, -1, self.q)
        return self * inv

    def __divmod__(self, d: "ModPoly") -> tuple["ModPoly", "ModPoly"]:
        self._check(d)
        if not d:
            raise ZeroDivisionError("polynomial division by zero")
        q = self.q
        r = list(self.coeffs)
        dd = d.degree
        if len(r) - 1 < dd:
            return ModPoly(q), self
        inv = pow(d.lead, -1, q)
        qt = [0] * (len(r) - dd)
        for k in range(len(r) - 1, dd - 1, -1):
            c = r[k] * inv % q
            if c:
                qt[k - dd] = c
                for i, y in enumerate(d.coeffs):
                    r[k - dd + i] = (r[k - dd + i] - c * y) % q
        return ModPoly(q, qt), ModPoly(q, r[:dd])

    def __floordiv__(self, d: "ModPoly") -> "ModPoly":
        return divmod(self, d)[0]

    def __mod__(self, d: "ModPoly") -> "ModPoly":
        return divmod(self, d)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.q
        return acc

    def derivative(self) -> "ModPoly":
        return ModPoly(self.q, (i * c for i, c in enumerate(self.coeffs) if i))

    def powmod(self, e: int, m: "ModPoly") -> "ModPoly":
        out, base = ModPoly.one(self.q) % m, self % m
        while e:
            if e & 1:
                out = out * base % m
            base = base * base % m
            e >>= 1
        return out

    def lift(self) -> IntPoly:
        """Canonical lift with coefficients in [0, q)."""
        return IntPoly(self.coeffs)

    def sort_key(self):
        return (self.degree, self.coeffs[::-1])

    def __str__(self) -> str:
        return _render(self.coeffs) + f" (mod {self.q})"


def poly_gcd_mod_q(f: ModPoly, g: ModPoly) -> ModPoly:
    """Monic gcd over F_q; gcd(0, 0) is the zero polynomial."""
    f._check(g)
    while g:
        f, g = g, f % g
    return f.monic()


def _pth_root(f: ModPoly) -> ModPoly:
    # f' = 0, so f(X) = g(X^q) and g = f^(1/q) coefficientwise (a^q = a in F_q).
    q = f.q
    return ModPoly(q, f.coeffs[::q])


def squarefree_decomposition(f: ModPoly) -> list[tuple[ModPoly, int]]:
    """Monic f as a product of powers of coprime squarefree factors."""
    q = f.q
    out: list[tuple[ModPoly, int]] = []
    one = ModPoly.one(q)

    def rec(h: ModPoly, mult: int):
        if h.degree < 1:
            return
        dh = h.derivative()
        if not dh:
            rec(_pth_root(h), mult * q)
            return
        c = poly_gcd_mod_q(h, dh)
        w = h // c
        i = 1
        while w.degree > 0:
            y = poly_gcd_mod_q(w, c)
            z = w // y
            if z.degree > 0:
                out.append((z.monic(), i * mult))
            i += 1
            w, c = y, c // y
        if c != one and c.degree > 0:
            rec(_pth_root(c), mult * q)

    rec(f.monic(), 1)
    return out


def distinct_degree(f: ModPoly) -> list[tuple[ModPoly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    q = f.q
    out = []
    x = ModPoly.x(q)
    h = x % f
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, f)
        g = poly_gcd_mod_q(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _trace_poly(t: ModPoly, d: int, f: ModPoly) -> ModPoly:
    # t + t^2 + t^4 + ... + t^(2^(d-1)) mod f, for characteristic 2.
    acc, s = t % f, t % f
    for _ in range(d - 1):
        s = s * s % f
        acc = acc + s
    return acc


def equal_degree(f: ModPoly, d: int, rng: random.Random) -> list[ModPoly]:
    """Cantor-Zassenhaus splitting of f, a product of degree-d irreducibles."""
    q = f.q
    if f.degree == d:
        return [f.monic()]
    while True:
        t = ModPoly(q, [rng.randrange(q) for _ in range(f.degree)])
        if t.degree < 1:
            continue
        if q == 2:
            s = _trace_poly(t, d, f)
        else:
            s = t.powmod((q**d - 1) // 2, f) - ModPoly.one(q)
        g = poly_gcd_mod_q(f, s)
        if 0 < g.degree < f.degree:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def factor_mod_q(T, q: int, seed: int = 0) -> list[tuple[ModPoly, int]]:
    """Factor a monic polynomial over F_q into monic irreducibles.

    Output is sorted by degree, then by coefficients from the top down, so it
    does not depend on the random splitting choices.
    """
    if isinstance(T, IntPoly):
        if not T.is_monic():
            raise NonMonicInput(f"{T} is not monic")
        f = T.reduce(q)
    else:
        if not T.is_monic():
            raise NonMonicInput(f"{T} is not monic")
        f = T
    rng = random.Random(seed)
    found: dict[tuple, list] = {}
    for sqf, mult in squarefree_decomposition(f):
        for block, d in distinct_degree(sqf):
            for g in equal_degree(block, d, rng):
                entry = found.setdefault(g.coeffs, [g, 0])
                entry[1] += mult
    return sorted(((g, e) for g, e in found.values()), key=lambda ge: ge[0].sort_key())


def is_irreducible_mod_q(f: ModPoly) -> bool:
    """Rabin-style check: no gcd with X^(q^d) - X for 1 <= d < deg f, and f | X^(q^n) - X."""
    q, n = f.q, f.degree
    if n < 1:
        return False
    x = ModPoly.x(q)
    h = x % f
    for d in range(1, n):
        h = h.powmod(q, f)
        if poly_gcd_mod_q(f, h - x).degree > 0:
            return False
    return not (h.powmod(q, f) - x) % f


def _render(coeffs) -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or k == 0) else ""
        if body and mono:
            body += "*"
        parts.append(("-" if c < 0 else "+", body + mono))
    s = " ".join(f"{sgn} {b}" for sgn, b in parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]
