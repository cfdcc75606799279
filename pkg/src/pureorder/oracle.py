"""Independent maximal-order computation and result audits.

The round-2 loop here starts from Z[alpha] and only uses the generic order
primitives (radicals and multiplier rings); it never looks at Wieferich
flags, exponent tables or closed-form discriminants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import PerfectPower, PureOrderError
from .exactmath.integers import DEFAULT_BUDGET, FactorBudget, factorize, integer_root
from .exactmath.linalg import rational_charpoly
from .exactmath.polys import IntPoly
from .orders import (
    OrderLattice,
    discriminant,
    hnf_from_generators,
    index,
    is_q_maximal,
    is_ring,
    multiplication_matrix,
    multiplier_ring,
    power_order,
)
from .radical import MaxOrderResult, disc_formula


def round2_iterations(minpoly: IntPoly, budget: FactorBudget = DEFAULT_BUDGET) -> Iterator[tuple[int, OrderLattice]]:
    """Yield (q, order) after every strict enlargement, starting from Z[theta]."""
    O = power_order(minpoly)
    d = discriminant(O)
    for q, e in factorize(d, budget).factors:
        if e < 2:
            continue
        while True:
            nxt = multiplier_ring(O, q)
            if nxt == O:
                break
            O = nxt
            yield q, O


def round2_max_order(p: int, a: int, budget: FactorBudget = DEFAULT_BUDGET) -> OrderLattice:
    """Maximal order of Q(theta), theta^p = a, as a lattice over 1, theta, ..., theta^(p-1)."""
    if integer_root(a, p) is not None:
        raise PerfectPower(f"{a} is a perfect power of exponent {p}")
    mp = IntPoly.x_pow_minus(p, a)
    O = power_order(mp)
    for _, O in round2_iterations(mp, budget):
        pass
    return O


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class AuditReport:
    field_id: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append(Check(name, bool(passed), detail))

    def to_json(self) -> dict:
        return {
            "field": self.field_id,
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def audit(result: MaxOrderResult, budget: FactorBudget = DEFAULT_BUDGET) -> AuditReport:
    """Re-derive everything a MaxOrderResult claims, trusting none of it."""
    fld = result.field
    mp = fld.minpoly
    rep = AuditReport(f"p={fld.p},a={fld.a}")
    O = result.order

    rep.add("is_ring", is_ring(O))

    bad = []
    for b in result.basis:
        num, den = rational_charpoly(multiplication_matrix(b.element, mp))
        if any(c % den for c in num.coeffs):
            bad.append(b.label)
    rep.add("basis_integrality", not bad, ", ".join(bad))

    gram = discriminant(O)
    formula = disc_formula(fld).value
    rep.add("disc_formula", result.disc.value == gram == formula,
            f"stored={result.disc.value} gram={gram} formula={formula}")

    zalpha = power_order(mp)
    d0 = discriminant(zalpha)
    primes = factorize(d0, budget).primes
    nonmax = [q for q in primes if not is_q_maximal(O, q)]
    rep.add("per_prime_maximality", not nonmax, f"not maximal at {nonmax}" if nonmax else "")

    oracle = round2_max_order(fld.p, fld.a, budget)
    try:
        spanned = hnf_from_generators(mp, [b.element for b in result.basis])
    except PureOrderError as exc:
        spanned = None
        detail = str(exc)
    else:
        detail = f"basis_span={'ok' if spanned == oracle else 'differs'} order={'ok' if O == oracle else 'differs'}"
    rep.add("lattice_equality", spanned == O == oracle, detail)

    try:
        idx = index(zalpha, O)
        rep.add("index_identity", d0 == gram * idx * idx, f"index={idx}")
    except PureOrderError as exc:
        rep.add("index_identity", False, str(exc))
    return rep
