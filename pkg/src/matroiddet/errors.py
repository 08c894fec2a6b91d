"""Exception types shared across the package."""


class MatroidDetError(Exception):
    """Base class for all errors raised by matroiddet."""


class LoopError(MatroidDetError, ValueError):
    def __init__(self, columns):
        self.columns = tuple(columns)
        super().__init__(f"zero column(s) (loops) at {list(self.columns)}")


class GroundSetTooLarge(MatroidDetError, ValueError):
    pass


class LatticeSpanMismatch(MatroidDetError, ValueError):
    """The two generating sets do not span the same rational space."""


class OnArrangement(MatroidDetError, ValueError):
    pass


class GaleMismatch(MatroidDetError, ValueError):
    pass


class DisconnectedError(MatroidDetError, ValueError):
    pass


class NonIntegralWeight(MatroidDetError, ArithmeticError):
    pass


class MissingData(MatroidDetError, ValueError):
    def __init__(self, flats):
        self.flats = [tuple(sorted(f)) for f in flats]
        super().__init__(f"missing degree/multiplicity for flats {self.flats}")


class HomogeneityError(MatroidDetError, ValueError):
    pass


class ParameterDegenerate(MatroidDetError, ValueError):
    pass


class DegenerateRecurrence(MatroidDetError, ArithmeticError):
    pass


class AnnihilationFailure(MatroidDetError, AssertionError):
    def __init__(self, operator_index, exponent, coefficient):
        self.operator_index = operator_index
        self.exponent = tuple(exponent)
        self.coefficient = coefficient
        super().__init__(
            f"operator #{operator_index} leaves coefficient {coefficient} "
            f"at exponent ({', '.join(str(x) for x in self.exponent)})"
        )
