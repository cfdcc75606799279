import random
from functools import reduce
from math import gcd, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pureorder.errors import BaseIsUnit, DegreeNotOddPrime, NotWieferichCase, ReducibleDefiningPoly
from pureorder.exactmath import Factorization, IntPoly, is_wieferich
from pureorder.oracle import round2_max_order
from pureorder.witness import p_maximal_factor
from pureorder.orders import (
    AlgebraicElement,
    discriminant,
    hnf_from_generators,
    is_q_maximal,
    is_ring,
    multiply_elements,
    order_from_generator,
    power_order,
    product_order,
)
from pureorder.radical import (
    assemble_max_order,
    beta_prime_alternatives,
    disc_formula,
    gamma_generators,
    integral_basis,
    merged_generators,
    normalize_field,
    t_table,
)

from .oracles import field_disc

Q = (2, 3, 7, 11)  # q1..q4 for the five-prime-pattern family, checked below


def labels(named):
    return [n.label for n in named]


# -- normalization -----------------------------------------------------------

def test_normalize_11_9():
    f = normalize_field(11, 9)
    assert f.m == 1 and f.e == [2] and f.exps == ((6, 1),) and f.c == (3,) and f.wieferich


def test_normalize_five_prime_pattern():
    q1, q2, q3, q4 = Q
    q5 = 13
    f = normalize_field(5, q1 * q2**2 * q3**4 * q4**7 * q5**5)
    assert f.a == q1 * q2**2 * q3**4 * q4**2
    assert f.scale == q4 * q5
    assert f.exps == ((1, 0), (3, 1), (4, 3), (3, 1))
    assert not f.wieferich


def test_normalize_negative():
    f = normalize_field(3, -2)
    assert f.a == 2 and f.sign == -1 and f.fact == Factorization(1, ((2, 1),)) and not f.wieferich


@pytest.mark.parametrize("p,a,exc", [(4, 2, DegreeNotOddPrime), (2, 3, DegreeNotOddPrime), (9, 2, DegreeNotOddPrime),
                                     (3, 8, ReducibleDefiningPoly), (5, -32, ReducibleDefiningPoly),
                                     (3, 1, BaseIsUnit), (3, 0, BaseIsUnit), (3, -1, BaseIsUnit)])
def test_normalize_rejects(p, a, exc):
    with pytest.raises(exc):
        normalize_field(p, a)


def test_p_dividing_a_disables_wieferich_branch():
    f = normalize_field(3, 3 * 19)
    assert 3 in f.primes and not f.wieferich


def test_uv_and_c_invariants_exhaustive():
    for p in (3, 5, 7, 11, 13):
        for a in range(2, 400):
            try:
                f = normalize_field(p, a)
            except ReducibleDefiningPoly:
                continue
            for (q, e), (u, v), c in zip(f.fact.factors, f.exps, f.c):
                assert 1 <= e <= p - 1 and 1 <= u <= p - 1 and v >= 0
                assert e * u - p * v == 1
                assert (e == 1) == ((u, v) == (1, 0))
                assert c * q ** (p * v) == f.a**u
                assert c % q == 0 and c % (q * q) != 0
            assert reduce(gcd, f.c) == prod(f.primes)


@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(2, 10**6))
def test_c_inherits_wieferich_flag(p, a):
    try:
        f = normalize_field(p, a)
    except ReducibleDefiningPoly:
        return
    if f.a % p == 0:
        return
    assert all(is_wieferich(p, c) == f.wieferich for c in f.c)
    assert reduce(gcd, f.c) == prod(f.primes)


# -- generators ----------------------------------------------------------------

def test_gamma_five_prime_pattern():
    q1, q2, q3, q4 = Q
    f = normalize_field(5, q1 * q2**2 * q3**4 * q4**2)
    assert labels(gamma_generators(f)) == ["alpha", "alpha^3/3", "alpha^4/7^3", "alpha^3/11"]


def test_gamma_examples():
    f = normalize_field(3, 4)
    (g,) = gamma_generators(f)
    assert g.element == AlgebraicElement.power(2, 3, 2) and f.c == (2,)
    f = normalize_field(7, 2 * 3 * 5)
    assert all(g.element == AlgebraicElement.power(1, 7) for g in gamma_generators(f))


@pytest.mark.parametrize("p,a", [(3, 4), (3, 12), (5, 2 * 9 * 7**4 * 11**2), (7, 2**3 * 5**5), (11, 9), (5, 7)])
def test_gamma_rings_are_locally_maximal(p, a):
    f = normalize_field(p, a)
    for g, q, c in zip(gamma_generators(f), f.primes, f.c):
        Zg = order_from_generator(g.element, f.minpoly)
        assert is_q_maximal(Zg, q)
        assert discriminant(Zg) == (-1) ** ((p - 1) // 2) * p**p * c ** (p - 1)


def test_merged_generators():
    q1, q2, q3, q4 = Q
    f = normalize_field(5, q1 * q2**2 * q3**4 * q4**2)
    merged = merged_generators(f)
    assert [(e, n.label) for e, n in merged] == [(1, "alpha"), (2, "alpha^3/(3*11)"), (4, "alpha^4/7^3")]
    mp = f.minpoly
    prod_gamma = reduce(product_order, (order_from_generator(g.element, mp) for g in gamma_generators(f)))
    prod_merged = reduce(product_order, (order_from_generator(n.element, mp) for _, n in merged))
    assert prod_gamma == prod_merged
    assert labels(n for _, n in merged_generators(normalize_field(5, 2**3 * 3**3))) == ["alpha^2/(2*3)"]
    assert labels(n for _, n in merged_generators(normalize_field(3, 30))) == ["alpha"]


# -- assembly -------------------------------------------------------------------

def test_assemble_11_9():
    res = assemble_max_order(normalize_field(11, 9))
    assert res.disc == Factorization(-1, ((3, 10), (11, 9)))
    assert res.x_exponent == 9
    assert [f.generator.label for f in res.factors] == ["(alpha - 9)^10/11", "alpha^6/3"]
    assert res.order == round2_max_order(11, 9)
    # the ring is also Z[beta'] * Z[3^(1/11)]; 3^(1/11) = alpha^6/3
    mp = res.field.minpoly
    assert res.order == product_order(res.factors[0].order, order_from_generator(AlgebraicElement.power(6, 11, 3), mp))


@pytest.mark.parametrize("p,a,disc", [(3, 19, -3 * 19**2), (3, 2, -108), (3, 4, -108)])
def test_assemble_small(p, a, disc):
    res = assemble_max_order(normalize_field(p, a))
    assert res.disc.value == disc == discriminant(res.order)


def test_assemble_cube_root_of_two_is_power_order():
    res = assemble_max_order(normalize_field(3, 2))
    assert res.order == power_order(IntPoly.x_pow_minus(3, 2))


FIELD_CORPUS = [(3, a) for a in (2, 4, 10, 12, 19, 28, 45, 82, 3 * 19, 9 * 5)] + \
               [(5, a) for a in (2, 7, 18, 57, 68, 4 * 25, 2 * 9 * 7**4 * 11**2)] + \
               [(7, a) for a in (2, 5, 30, 12, 31)] + [(11, 3), (11, 9), (13, 6)]


@pytest.mark.parametrize("p,a", FIELD_CORPUS)
def test_pipeline_invariants(p, a):
    f = normalize_field(p, a)
    res = assemble_max_order(f)
    O = res.order
    assert is_ring(O)
    for q in set(f.primes) | {p}:
        assert is_q_maximal(O, q)
    assert hnf_from_generators(f.minpoly, [b.element for b in res.basis]) == O
    assert O.contains_order(power_order(f.minpoly))
    assert res.disc.value == discriminant(O) == disc_formula(f).value
    gam = reduce(product_order, (order_from_generator(g.element, f.minpoly) for g in gamma_generators(f)))
    assert gam.contains_order(power_order(f.minpoly))


def _gcd_of_discs(orders):
    g = 0
    for O in orders:
        g = gcd(g, discriminant(O))
    return g


@pytest.mark.parametrize("p,a", FIELD_CORPUS)
def test_disc_gcd_form(p, a):
    f = normalize_field(p, a)
    res = assemble_max_order(f)
    orders = [s.order for s in res.factors]
    if f.wieferich and p == 3 and not is_q_maximal(orders[0], 3):
        # Z[beta'] alone leaves a factor 3 in the index; the gcd overshoots by 3^2
        assert _gcd_of_discs(orders) == 9 * abs(res.disc.value)
        orders[0] = p_maximal_factor(p, f.a).order
    assert _gcd_of_discs(orders) == abs(res.disc.value)


def test_disc_gcd_form_cubic_wieferich_split():
    overshoot, exact = [], []
    for a in range(2, 200):
        try:
            f = normalize_field(3, a)
        except ReducibleDefiningPoly:
            continue
        if not f.wieferich:
            continue
        res = assemble_max_order(f)
        ok = _gcd_of_discs([s.order for s in res.factors]) == abs(res.disc.value)
        (exact if ok else overshoot).append(f.a)
        assert ok == ((f.a**2 - 1) // 9 % 3 != 1)
    assert 19 in overshoot and 10 in exact


# -- explicit basis --------------------------------------------------------------

def test_basis_five_prime_pattern():
    q1, q2, q3, q4 = Q
    f = normalize_field(5, q1 * q2**2 * q3**4 * q4**2)
    assert not is_wieferich(5, f.a)
    assert labels(integral_basis(f)) == ["1", "alpha", "alpha^2/7", "alpha^3/(3*7^2*11)", "alpha^4/(3*7^3*11)"]


def test_basis_11_9():
    f = normalize_field(11, 9)
    basis = integral_basis(f)
    assert labels(basis)[:10] == ["1", "alpha"] + [f"alpha^{k}" for k in range(2, 6)] + [f"alpha^{k}/3" for k in range(6, 10)]
    assert basis[-1].label == "(alpha - 9)^10/(11*3)"
    O = assemble_max_order(f).order
    mp = f.minpoly
    # in terms of 3^(1/11) = alpha^6/3 the first ten elements are 3^(i/11) for i in 0..10 except 9
    root3 = AlgebraicElement.power(6, 11, 3)
    powers = [AlgebraicElement.power(0, 11)]
    for _ in range(10):
        powers.append(multiply_elements(powers[-1], root3, mp))
    last = AlgebraicElement.from_poly(IntPoly([-9, 1]) ** 10, 11, mp, 33)
    assert sorted(b.element.num for b in basis[:10]) == sorted(x.num for i, x in enumerate(powers) if i != 9)
    assert hnf_from_generators(mp, [x for i, x in enumerate(powers) if i != 9] + [last]) == O
    # 3^(9/11) cannot stand in for 3^(10/11) = alpha^5
    assert hnf_from_generators(mp, powers[:10] + [last]) != O


def test_basis_small():
    assert labels(integral_basis(normalize_field(3, 4))) == ["1", "alpha", "alpha^2/2"]
    assert labels(integral_basis(normalize_field(3, 19))) == ["1", "alpha", "(alpha - 19)^2/3"]


def test_t_table_monotone_on_corpus():
    for p in (3, 5, 7):
        for a in range(2, 201):
            try:
                f = normalize_field(p, a)
            except ReducibleDefiningPoly:
                continue
            t = t_table(f)
            for k in range(p - 1):
                assert all(x <= y for x, y in zip(t[k], t[k + 1]))


# -- discriminant formula -------------------------------------------------------------

def test_disc_formula_examples():
    assert disc_formula(normalize_field(3, 19)) == Factorization(-1, ((3, 1), (19, 2)))
    for q1, q2 in [(2, 17), (11, 19), (2, 11), (5, 41)]:
        f = normalize_field(3, q1 * q2 * q2)
        expect = -(3 if f.wieferich else 27) * (q1 * q2) ** 2
        assert disc_formula(f).value == expect


def test_disc_formula_never_exceeds_power_order_disc():
    for p, a in FIELD_CORPUS:
        f = normalize_field(p, a)
        assert field_disc(p, f.a) % disc_formula(f).value == 0


# -- replacements for beta' -------------------------------------------------------

@pytest.mark.parametrize("p,a", [(11, 9), (5, 7), (3, 19), (3, 5 * 41**2), (3, 10)])
def test_beta_prime_alternatives(p, a):
    f = normalize_field(p, a)
    res = assemble_max_order(f)
    gamma_orders = [s.order for s in res.factors[1:]]
    for alt in beta_prime_alternatives(f):
        O = reduce(product_order, gamma_orders, order_from_generator(alt.element, f.minpoly))
        assert O == res.order


def test_beta_prime_alternative_labels():
    (alt,) = beta_prime_alternatives(normalize_field(11, 9))
    assert alt.label == "(alpha^6/3 - 3)^10/11"
    (alt,) = beta_prime_alternatives(normalize_field(5, 7))
    assert alt.label == "(alpha - 7)^4/5"


def test_beta_prime_alternatives_require_wieferich():
    with pytest.raises(NotWieferichCase):
        beta_prime_alternatives(normalize_field(3, 2))


def test_sign_of_a_does_not_change_the_order():
    for p, a in [(3, 19), (5, 12), (7, 3)]:
        pos = assemble_max_order(normalize_field(p, a))
        neg = assemble_max_order(normalize_field(p, -a))
        assert pos.order == neg.order and pos.disc == neg.disc
        assert round2_max_order(p, -a).det_basis == pos.order.det_basis


def test_random_fields_match_oracle():
    rng = random.Random(2024)
    done = 0
    while done < 25:
        p = rng.choice([3, 5, 7])
        a = rng.randint(2, 10**5) * rng.choice([1, -1])
        try:
            f = normalize_field(p, a)
        except ReducibleDefiningPoly:
            continue
        res = assemble_max_order(f)
        assert res.order == round2_max_order(p, f.a)
        assert res.disc_matches_formula()
        done += 1
