"""Monogeneity verdicts for pure fields.

Two tools: the sufficient uniform-exponent criterion for any (p, a), and an
exact bounded search for pure cubic fields with a = q1 * q2^2, where
monogeneity is equivalent to a cubic Thue-type equation having a solution.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import BasisMismatch, InvalidInput
from .exactmath.integers import integer_root, is_prime
from .exactmath.polys import IntPoly
from .orders import AlgebraicElement, order_from_generator
from .radical import NamedElement, PureField, assemble_max_order, merged_generators, normalize_field

DEFAULT_SEARCH_BOUND = 10**4


class Status(enum.Enum):
    MONOGENIC = "Monogenic"
    NOT_MONOGENIC_WITHIN_BOUND = "NotMonogenicWithinBound"
    CRITERION_INAPPLICABLE = "CriterionInapplicable"


@dataclass(frozen=True)
class MonogeneityVerdict:
    status: Status
    generator: Optional[NamedElement] = None
    bound: Optional[int] = None
    equation: Optional[str] = None
    solutions: tuple[tuple[int, int], ...] = ()
    field: Optional[PureField] = None

    @property
    def monogenic(self) -> bool:
        return self.status is Status.MONOGENIC

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "generator": self.generator.to_json() if self.generator else None,
            "bound": None if self.bound is None else str(self.bound),
            "equation": self.equation,
            "solutions": [[str(s), str(t)] for s, t in self.solutions],
        }


def _verify_generator(field: PureField, g: AlgebraicElement) -> None:
    ok = assemble_max_order(field).order
    if order_from_generator(g, field.minpoly) != ok:
        raise BasisMismatch(f"Z[generator] differs from the ring of integers for p={field.p}, a={field.a}")


def uniform_exponent_criterion(field: PureField) -> MonogeneityVerdict:
    """Monogenic with generator alpha^u / prod q^v when all exponents agree and p is non-Wieferich."""
    classes = merged_generators(field)
    if field.wieferich or len(classes) != 1:
        return MonogeneityVerdict(Status.CRITERION_INAPPLICABLE, field=field)
    gen = classes[0][1]
    _verify_generator(field, gen.element)
    return MonogeneityVerdict(Status.MONOGENIC, generator=gen, field=field)


def _search_order(bound: int):
    yield 0
    for t in range(1, bound + 1):
        yield t
        yield -t


def mixed_equation(q1: int, q2: int, wieferich: bool) -> str:
    if wieferich:
        return f"(3*s1 - 2*s2*{q1 * q2})^3*{q2} - s2^3*{q1} = 9"
    return f"t1^3*{q2} - t2^3*{q1} = 1"


def solve_mixed(q1: int, q2: int, wieferich: bool, bound: int) -> list[tuple[int, int]]:
    """All solutions with |second variable| <= bound, via exact cube roots."""
    sols = []
    target = 9 if wieferich else 1
    for y in _search_order(bound):
        num = target + y**3 * q1
        if num % q2:
            continue
        w = integer_root(num // q2, 3)
        if w is None:
            continue
        if wieferich:
            s1, r = divmod(w + 2 * y * q1 * q2, 3)
            if r:
                continue
            sols.append((s1, y))
        else:
            sols.append((w, y))
    return sols


def brute_force_mixed(q1: int, q2: int, wieferich: bool, bound: int) -> list[tuple[int, int]]:
    """Plain double loop over |x|, |y| <= bound; the reference for solve_mixed."""
    out = []
    for y in range(-bound, bound + 1):
        for x in range(-bound, bound + 1):
            if wieferich:
                lhs = (3 * x - 2 * y * q1 * q2) ** 3 * q2 - y**3 * q1
                ok = lhs == 9
            else:
                ok = x**3 * q2 - y**3 * q1 == 1
            if ok:
                out.append((x, y))
    return out


def mixed_generator(field: PureField, q2: int, sol: tuple[int, int], wieferich: bool) -> NamedElement:
    x, y = sol
    a, mp = field.a, field.minpoly
    alpha = AlgebraicElement.power(1, 3)
    if wieferich:
        second = AlgebraicElement.from_poly(IntPoly([-a, 1]) ** 2, 3, mp, 3 * q2)
        name = f"(alpha - {a})^2/{3 * q2}"
    else:
        second = AlgebraicElement.power(2, 3, q2)
        name = f"alpha^2/{q2}"
    return NamedElement(_linear_label([(x, "alpha"), (y, name)]), alpha.scale(x) + second.scale(y))


def _linear_label(terms) -> str:
    out = ""
    for c, name in terms:
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        if not out:
            out = ("-" if c < 0 else "") + mag + name
        else:
            out += (" - " if c < 0 else " + ") + mag + name
    return out or "0"


def cubic_mixed_search(q1: int, q2: int, bound: int = DEFAULT_SEARCH_BOUND) -> MonogeneityVerdict:
    """Decide monogeneity of Q((q1*q2^2)^(1/3)) up to the search bound."""
    if q1 == q2 or not (is_prime(q1) and is_prime(q2)):
        raise InvalidInput("q1 and q2 must be distinct primes")
    field = normalize_field(3, q1 * q2 * q2)
    wief = field.wieferich
    sols = solve_mixed(q1, q2, wief, bound)
    eq = mixed_equation(q1, q2, wief)
    if not sols:
        return MonogeneityVerdict(Status.NOT_MONOGENIC_WITHIN_BOUND, bound=bound, equation=eq, field=field)
    gen = mixed_generator(field, q2, sols[0], wief)
    _verify_generator(field, gen.element)
    return MonogeneityVerdict(Status.MONOGENIC, generator=gen, bound=bound, equation=eq,
                              solutions=tuple(sols), field=field)
