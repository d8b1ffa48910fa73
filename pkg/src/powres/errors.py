"""Exception hierarchy shared by every module in the package."""


class PowresError(Exception):
    """Base class; the CLI maps every subclass to exit code 2."""


class NotPrime(PowresError, ValueError):
    pass


class NotAResidue(PowresError, ValueError):
    pass


class DivisibleByModulus(PowresError, ValueError):
    pass


class DegeneratePolynomial(PowresError, ValueError):
    pass


class CapacityError(PowresError, MemoryError):
    pass


class WrongResidueClass(PowresError, ValueError):
    pass


class NotOneModThree(WrongResidueClass):
    pass


class WindowExhausted(PowresError, ValueError):
    pass


class EpsilonOutOfRange(PowresError, ValueError):
    pass


class FactorizationTimeout(PowresError, RuntimeError):
    def __init__(self, value, cofactor):
        super().__init__(f"could not split cofactor {cofactor} of {value}")
        self.value = value
        self.cofactor = cofactor


class IncompleteReport(PowresError, ValueError):
    pass
