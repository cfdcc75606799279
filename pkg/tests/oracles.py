"""Reference computations from sympy, used only to cross-check derived values."""

from sympy import Matrix, Poly, Rational, factorint, symbols
from sympy import discriminant as sym_disc
from sympy import minimal_polynomial as sym_minpoly
from sympy import root

X = symbols("X")


def factor_dict(n):
    return {int(q): int(e) for q, e in factorint(abs(n)).items()}


def factor_mod(coeffs_low_first, q):
    """Sorted list of (monic coeffs low-first, mult) from sympy's factor_list over GF(q)."""
    poly = Poly(list(reversed(coeffs_low_first)), X, modulus=q)
    _, facs = poly.factor_list()
    out = []
    for f, e in facs:
        c = [int(x) % q for x in reversed(f.all_coeffs())]
        inv = pow(c[-1], -1, q)
        out.append(([x * inv % q for x in c], int(e)))
    return sorted(out, key=lambda t: (len(t[0]), list(reversed(t[0]))))


def charpoly_coeffs(rows):
    """Characteristic polynomial of a rational matrix, low-first Fractions."""
    M = Matrix([[Rational(x.numerator, x.denominator) if hasattr(x, "numerator") else x for x in r] for r in rows])
    cp = M.charpoly(X).all_coeffs()
    return [Rational(c) for c in reversed(cp)]


def det(rows):
    return Matrix(rows).det()


def field_disc(p, a):
    """Discriminant of X^p - a straight from sympy."""
    return int(sym_disc(X**p - a, X))


def minpoly_of_root_expr(expr_fn, p, a):
    alpha = root(a, p)
    return Poly(sym_minpoly(expr_fn(alpha), X), X)
