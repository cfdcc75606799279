"""Ring of integers of Q(a^(1/p)) assembled from monogenic subrings.

For a = prod q_j^e_j (after removing p-th powers) each prime q_j gets the
subring Z[gamma_j] with gamma_j = alpha^u_j / q_j^v_j, where e_j*u_j - p*v_j = 1.
The product of these is the whole ring of integers unless p is a Wieferich
prime to base a; then one more factor Z[beta'] with
beta' = (alpha - a)^(p-1) / p is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .errors import BaseIsUnit, BasisMismatch, DegreeNotOddPrime, NotWieferich, PerfectPower, ReducibleDefiningPoly
from .exactmath.integers import DEFAULT_BUDGET, FactorBudget, Factorization, factorize, is_prime, is_wieferich, pth_power_free
from .exactmath.polys import IntPoly
from .orders import (
    AlgebraicElement,
    OrderLattice,
    discriminant,
    element_power,
    hnf_from_generators,
    order_from_generator,
    product_order,
)


@dataclass(frozen=True)
class PureField:
    p: int
    a_input: int
    a: int
    sign: int  # alpha_input = sign * scale * alpha
    scale: int
    fact: Factorization
    wieferich: bool
    exps: tuple[tuple[int, int], ...]  # (u_j, v_j) per prime
    c: tuple[int, ...]

    @property
    def primes(self) -> list[int]:
        return self.fact.primes

    @property
    def e(self) -> list[int]:
        return [e for _, e in self.fact.factors]

    @property
    def m(self) -> int:
        return len(self.fact.factors)

    @property
    def minpoly(self) -> IntPoly:
        return IntPoly.x_pow_minus(self.p, self.a)

    def alpha_power(self, k: int, den: int = 1) -> AlgebraicElement:
        return AlgebraicElement.power(k, self.p, den)

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "a_input": str(self.a_input),
            "a": str(self.a),
            "generator_sign": self.sign,
            "generator_scale": str(self.scale),
            "factorization": [[str(q), e] for q, e in self.fact.factors],
            "wieferich": self.wieferich,
            "uv": [[u, v] for u, v in self.exps],
            "c": [str(c) for c in self.c],
        }


@dataclass(frozen=True)
class NamedElement:
    label: str
    element: AlgebraicElement

    def to_json(self) -> dict:
        return {"label": self.label, **self.element.to_json()}


@dataclass(frozen=True)
class SubringFactor:
    name: str
    generator: NamedElement
    order: OrderLattice


@dataclass(frozen=True)
class MaxOrderResult:
    field: PureField
    order: OrderLattice
    factors: tuple[SubringFactor, ...]
    basis: tuple[NamedElement, ...]
    disc: Factorization
    x_exponent: int

    @property
    def formula_disc(self) -> Factorization:
        return disc_formula(self.field)

    def disc_matches_formula(self) -> bool:
        return self.disc == self.formula_disc


def normalize_field(p: int, a: int, budget: FactorBudget = DEFAULT_BUDGET) -> PureField:
    if p < 3 or not is_prime(p):
        raise DegreeNotOddPrime(f"degree {p} is not an odd prime")
    if a in (0, 1, -1):
        raise BaseIsUnit(f"a = {a} does not define a degree-{p} field")
    try:
        reduced, s = pth_power_free(a, p, budget)
    except PerfectPower as exc:
        raise ReducibleDefiningPoly(f"X^{p} - ({a}) is reducible: {a} is a perfect power of exponent {p}") from exc
    sign = -1 if reduced < 0 else 1
    a_norm = abs(reduced)
    fact = factorize(a_norm, budget)
    wief = a_norm % p != 0 and is_wieferich(p, a_norm)
    exps, cs = [], []
    for q, e in fact.factors:
        u = pow(e, -1, p)
        v = (e * u - 1) // p
        exps.append((u, v))
        cs.append(a_norm**u // q ** (p * v))
    return PureField(p, a, a_norm, sign, s, fact, wief, tuple(exps), tuple(cs))


def _monomial_label(k: int, den_exps: dict[int, int], extra: int = 1) -> str:
    num = "1" if k == 0 else ("alpha" if k == 1 else f"alpha^{k}")
    parts = [str(extra)] if extra > 1 else []
    parts += [f"{q}^{e}" if e > 1 else str(q) for q, e in sorted(den_exps.items()) if e]
    if not parts:
        return num
    den = parts[0] if len(parts) == 1 else "(" + "*".join(parts) + ")"
    return f"{num}/{den}"


def gamma_generators(field: PureField) -> list[NamedElement]:
    """gamma_j = alpha^u_j / q_j^v_j, a root of X^p - c_j."""
    out = []
    for (q, _), (u, v), c in zip(field.fact.factors, field.exps, field.c):
        g = field.alpha_power(u, q**v)
        assert element_power(g, field.p, field.minpoly) == AlgebraicElement.power(0, field.p).scale(c)
        out.append(NamedElement(_monomial_label(u, {q: v}), g))
    return out


def merged_generators(field: PureField) -> list[tuple[int, NamedElement]]:
    """One generator alpha^u / prod q_j^v_j per distinct exponent class e."""
    classes: dict[int, list[int]] = {}
    for j, e in enumerate(field.e):
        classes.setdefault(e, []).append(j)
    out = []
    for e in sorted(classes):
        idx = classes[e]
        u = field.exps[idx[0]][0]
        den = {field.primes[j]: field.exps[j][1] for j in idx}
        out.append((e, NamedElement(_monomial_label(u, den), field.alpha_power(u, prod(q**v for q, v in den.items())))))
    return out


def beta_prime(field: PureField) -> AlgebraicElement:
    """(alpha - a)^(p-1) / p, integral only in the Wieferich case."""
    p = field.p
    b = IntPoly([-field.a, 1]) ** (p - 1)
    return AlgebraicElement.from_poly(b, p, field.minpoly, p)


def beta_prime_alternatives(field: PureField) -> list[NamedElement]:
    """(gamma_i - c_i)^(p-1) / p for each prime; any one may stand in for beta'."""
    if not field.wieferich:
        raise NotWieferich(f"{field.p} is not a Wieferich prime to base {field.a}")
    p, mp = field.p, field.minpoly
    out = []
    for g, c in zip(gamma_generators(field), field.c):
        shifted = g.element - AlgebraicElement.power(0, p).scale(c)
        el = element_power(shifted, p - 1, mp).scale(Fraction(1, p))
        out.append(NamedElement(f"({g.label} - {c})^{p - 1}/{p}", el))
    return out


def t_table(field: PureField) -> list[list[int]]:
    """t[k][j] = floor(k * e_j / p) for 0 <= k <= p-1."""
    return [[k * e // field.p for e in field.e] for k in range(field.p)]


def integral_basis(field: PureField) -> list[NamedElement]:
    """Explicit Z-basis: alpha^k / prod q_j^t_kj, last element shifted by beta' when Wieferich."""
    p, t = field.p, t_table(field)
    out = []
    for k in range(p):
        den_exps = dict(zip(field.primes, t[k]))
        den = prod(q**x for q, x in den_exps.items())
        if k == p - 1 and field.wieferich:
            b = IntPoly([-field.a, 1]) ** (p - 1)
            el = AlgebraicElement.from_poly(b, p, field.minpoly, p * den)
            label = _monomial_label(1, den_exps, p).replace("alpha", f"(alpha - {field.a})^{p - 1}", 1)
            out.append(NamedElement(label, el))
        else:
            out.append(NamedElement(_monomial_label(k, den_exps), field.alpha_power(k, den)))
    return out


def disc_formula(field: PureField) -> Factorization:
    """(-1)^((p-1)/2) * p^x * prod q_j^(p-1), x = p-2 (Wieferich) or p."""
    p = field.p
    x = p - 2 if field.wieferich else p
    sign = -1 if (p - 1) // 2 % 2 else 1
    exps = {q: p - 1 for q in field.primes}
    exps[p] = exps.get(p, 0) + x
    return Factorization.from_dict(sign, exps)


def assemble_max_order(field: PureField, budget: FactorBudget = DEFAULT_BUDGET) -> MaxOrderResult:
    p, mp = field.p, field.minpoly
    factors = []
    for q, g in zip(field.primes, gamma_generators(field)):
        factors.append(SubringFactor(f"Z[gamma_{q}]", g, order_from_generator(g.element, mp)))
    if field.wieferich:
        bp = NamedElement(f"(alpha - {field.a})^{p - 1}/{p}", beta_prime(field))
        factors.insert(0, SubringFactor("Z[beta']", bp, order_from_generator(bp.element, mp)))
    order = factors[0].order
    for f in factors[1:]:
        order = product_order(order, f.order)

    basis = integral_basis(field)
    spanned = hnf_from_generators(mp, [b.element for b in basis])
    if spanned != order:
        raise BasisMismatch(f"explicit basis and subring product differ for p={p}, a={field.a}")
    d = discriminant(order)
    return MaxOrderResult(
        field=field,
        order=order,
        factors=tuple(factors),
        basis=tuple(basis),
        disc=factorize(d, budget),
        x_exponent=p - 2 if field.wieferich else p,
    )
