"""Exception hierarchy shared by all pureorder modules."""


class PureOrderError(Exception):
    pass


class InvalidInput(PureOrderError, ValueError):
    """Bad arguments; the CLI maps this family to exit code 2."""


class NotCoprime(InvalidInput):
    pass


class BaseIsUnit(InvalidInput):
    pass


class PerfectPower(InvalidInput):
    pass


class ReducibleDefiningPoly(PerfectPower):
    pass


class DegreeNotOddPrime(InvalidInput):
    pass


class NonMonicInput(InvalidInput):
    pass


NotMonic = NonMonicInput


class ModulusMismatch(InvalidInput):
    pass


class MinpolyMismatch(InvalidInput):
    pass


class FactorBudgetExceeded(PureOrderError):
    """A composite cofactor survived trial division and Pollard rho."""

    def __init__(self, cofactor, partial=None):
        super().__init__(f"could not split composite cofactor {cofactor}")
        self.cofactor = cofactor
        self.partial = partial


class RankDeficient(PureOrderError, ValueError):
    pass


class NotContained(PureOrderError, ValueError):
    pass


class NotARing(PureOrderError, ValueError):
    pass


class AlreadyMaximal(PureOrderError, ValueError):
    pass


class NotWieferich(PureOrderError, ValueError):
    pass


NotWieferichCase = NotWieferich


class NonIntegralCharPoly(PureOrderError, ArithmeticError):
    pass


class CongruenceViolation(PureOrderError, ArithmeticError):
    def __init__(self, rule, row, col, value, detail=""):
        msg = f"{rule} violated at entry ({row}, {col}): {value}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.rule = rule
        self.row = row
        self.col = col
        self.value = value


class BasisMismatch(PureOrderError, ArithmeticError):
    """Two constructions of the same maximal order disagree."""
