"""Dedekind's criterion for q-maximality of Z[theta] and the one-step enlargement."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import AlreadyMaximal, NonMonicInput
from .exactmath.polys import IntPoly, ModPoly, factor_mod_q, poly_gcd_mod_q
from .orders import (
    AlgebraicElement,
    OrderLattice,
    hnf_from_generators,
    is_q_maximal,
    multiplier_ring,
    power_order,
    product_order,
)

Lift = Callable[[ModPoly], IntPoly]


def canonical_lift(f: ModPoly) -> IntPoly:
    return f.lift()


@dataclass(frozen=True)
class DedekindReport:
    q: int
    T: IntPoly
    factors: tuple[tuple[ModPoly, int], ...]
    G: IntPoly
    H: IntPoly
    F: IntPoly
    gcd_fgh: ModPoly
    q_maximal: bool
    U: Optional[IntPoly]

    @property
    def m(self) -> int:
        return self.gcd_fgh.degree

    def to_json(self) -> dict:
        return {
            "q": str(self.q),
            "T": self.T.to_json(),
            "factors": [{"poly": f.lift().to_json(), "mult": e} for f, e in self.factors],
            "G": self.G.to_json(),
            "H": self.H.to_json(),
            "F": self.F.to_json(),
            "gcd": self.gcd_fgh.lift().to_json(),
            "m": self.m,
            "q_maximal": self.q_maximal,
            "U": self.U.to_json() if self.U is not None else None,
        }


def dedekind_test(T: IntPoly, q: int, lift: Lift = canonical_lift, seed: int = 0) -> DedekindReport:
    """Decide whether Z[theta] is q-maximal, theta a root of the monic T.

    ``lift`` maps each monic factor over F_q to a monic integer lift; the
    verdict does not depend on the choice, which the test suite fuzzes.
    """
    if not T.is_monic():
        raise NonMonicInput(f"{T} is not monic")
    factors = factor_mod_q(T, q, seed)
    Tbar = T.reduce(q)
    G = IntPoly([1])
    Gbar = ModPoly.one(q)
    for f, _ in factors:
        G = G * lift(f)
        Gbar = Gbar * f
    Hbar = Tbar // Gbar
    H = lift(Hbar)
    F = (G * H - T).exact_div(q)
    g = poly_gcd_mod_q(poly_gcd_mod_q(F.reduce(q), G.reduce(q)), H.reduce(q))
    maximal = g.degree == 0
    U = None if maximal else lift(Tbar // g)
    return DedekindReport(q, T, tuple(factors), G, H, F, g, maximal, U)


def enlarge(T: IntPoly, report: DedekindReport) -> OrderLattice:
    """Z[theta] + (U(theta)/q) Z[theta], with index q^m over Z[theta]."""
    if report.q_maximal:
        raise AlreadyMaximal(f"Z[theta] is already {report.q}-maximal")
    n = T.degree
    gens = [AlgebraicElement.power(k, n) for k in range(n)]
    shift = IntPoly([1])
    for _ in range(n):
        gens.append(AlgebraicElement.from_poly(report.U * shift, n, T, report.q))
        shift = shift * IntPoly([0, 1])
    return hnf_from_generators(T, gens)


def iterate_to_maximal(T: IntPoly, primes) -> OrderLattice:
    """An order that is q-maximal for every q in primes.

    Each prime gets one Dedekind step on Z[theta]; whatever is left is
    closed up with multiplier rings.
    """
    O = power_order(T)
    for q in primes:
        rep = dedekind_test(T, q)
        if not rep.q_maximal:
            O = product_order(O, enlarge(T, rep))
    for q in primes:
        while True:
            nxt = multiplier_ring(O, q)
            if nxt == O:
                break
            O = nxt
    assert all(is_q_maximal(O, q) for q in primes)
    return O
