"""Integer factorization, primality and the Wieferich predicate."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from ..errors import BaseIsUnit, FactorBudgetExceeded, NotCoprime, PerfectPower

# Jaeschke/Sorenson-Webster: these bases are a deterministic witness set
# for every n < 3317044064679887385961981.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


@dataclass(frozen=True)
class FactorBudget:
    trial_limit: int = 10**6
    rho_iterations: int = 2_000_000
    rho_restarts: int = 8
    seed: int = 0


DEFAULT_BUDGET = FactorBudget()


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        last = 1
        for q, e in self.factors:
            if q <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            last = q

    @classmethod
    def from_dict(cls, sign: int, exps: dict[int, int]) -> "Factorization":
        return cls(sign, tuple(sorted((q, e) for q, e in exps.items() if e)))

    @property
    def value(self) -> int:
        n = self.sign
        for q, e in self.factors:
            n *= q**e
        return n

    @property
    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]

    def exponent(self, q: int) -> int:
        for r, e in self.factors:
            if r == q:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __mul__(self, other: "Factorization") -> "Factorization":
        exps = self.as_dict()
        for q, e in other.factors:
            exps[q] = exps.get(q, 0) + e
        return Factorization.from_dict(self.sign * other.sign, exps)

    def __str__(self) -> str:
        body = "*".join(f"{q}^{e}" if e > 1 else str(q) for q, e in self.factors)
        if not body:
            return "-1" if self.sign < 0 else "1"
        return ("-" if self.sign < 0 else "") + body


@lru_cache(maxsize=4)
def small_primes(limit: int) -> tuple[int, ...]:
    """All primes <= limit by a plain Eratosthenes sieve."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _miller_rabin(n: int, bases: Iterable[int]) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in bases:
        b %= n
        if b in (0, 1, n - 1):
            continue
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int, seed: int = 0) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, 20 extra seeded bases above."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if not _miller_rabin(n, _MR_BASES):
        return False
    if n < _MR_DETERMINISTIC_BOUND:
        return True
    rng = random.Random(seed ^ n.bit_length())
    return _miller_rabin(n, (rng.randrange(2, n - 1) for _ in range(20)))


def _brent_rho(n: int, rng: random.Random, max_iter: int) -> int | None:
    """Brent's variant of Pollard rho; returns a proper factor or None."""
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    x = ys = y
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        steps += r
        if steps > max_iter:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if g != n else None


def _perfect_power(m: int) -> tuple[int, int] | None:
    """(r, k) with r^k = m and k prime, if m is a perfect power; rho cannot split these."""
    for k in small_primes(m.bit_length()):
        r = integer_root(m, k)
        if r is not None:
            return r, k
    return None


def _split_large(n: int, budget: FactorBudget, rng: random.Random, exps: dict[int, int]):
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m, budget.seed):
            exps[m] = exps.get(m, 0) + 1
            continue
        split = _perfect_power(m)
        if split:
            root, k = split
            stack.extend([root] * k)
            continue
        for _ in range(budget.rho_restarts):
            d = _brent_rho(m, rng, budget.rho_iterations)
            if d:
                stack.extend((d, m // d))
                break
        else:
            raise FactorBudgetExceeded(m, Factorization.from_dict(1, exps))


def factorize(n: int, budget: FactorBudget = DEFAULT_BUDGET) -> Factorization:
    """Complete prime factorization of a nonzero integer.

    Trial division by primes up to ``budget.trial_limit`` handles everything
    of moderate size; larger cofactors go through Miller-Rabin and Brent's
    rho seeded from ``budget.seed``, so a failure is reproducible.

    >>> str(factorize(9000))
    '2^3*3^2*5^3'
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    exps: dict[int, int] = {}
    bound = min(budget.trial_limit, math.isqrt(n))
    if bound >= 2:
        for q in small_primes(budget.trial_limit):
            if q > bound:
                break
            if n % q == 0:
                e = 0
                while n % q == 0:
                    n //= q
                    e += 1
                exps[q] = e
                bound = min(bound, math.isqrt(n))
    if n > 1:
        if n <= budget.trial_limit**2:
            exps[n] = exps.get(n, 0) + 1
        else:
            _split_large(n, budget, random.Random(budget.seed), exps)
    return Factorization.from_dict(sign, exps)


def is_wieferich(q: int, r: int) -> bool:
    """True iff q^2 divides r^(q-1) - 1."""
    if r in (1, -1):
        raise BaseIsUnit(f"base {r} is a unit")
    if r % q == 0:
        raise NotCoprime(f"{q} divides {r}")
    q2 = q * q
    return pow(r % q2, q - 1, q2) == 1


def integer_root(n: int, k: int) -> int | None:
    """Exact k-th root of n if n is a perfect k-th power, else None."""
    if n < 0:
        if k % 2 == 0:
            return None
        r = integer_root(-n, k)
        return None if r is None else -r
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x**k == n else None


def pth_power_free(a: int, p: int, budget: FactorBudget = DEFAULT_BUDGET) -> tuple[int, int]:
    """Write a = a' * s^p with every exponent of a' in [1, p-1].

    a' keeps the sign of a.  Raises PerfectPower if a itself is a p-th power.
    """
    if a == 0 or a in (1, -1):
        raise BaseIsUnit(f"{a} has no p-th-power-free part")
    f = factorize(a, budget)
    reduced, s = f.sign, 1
    for q, e in f.factors:
        reduced *= q ** (e % p)
        s *= q ** (e // p)
    if reduced in (1, -1):
        raise PerfectPower(f"{a} is a perfect power of exponent {p}")
    return reduced, s


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        t = a // b
        a, b = b, a - t * b
        x0, x1 = x1, x0 - t * x1
        y0, y1 = y1, y0 - t * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0
