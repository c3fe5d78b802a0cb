class PoleError(ArithmeticError):
    """Gamma argument on (or within 1e-13 of) a non-positive integer"""

    def __init__(self, msg):
        super().__init__(msg)
        self.msg = msg


class DomainError(ValueError):
    def __init__(self, msg):
        super().__init__(msg)
        self.msg = msg


class RealityError(ArithmeticError):
    """Imaginary residue of a real-valued family above the reality threshold"""

    def __init__(self, msg):
        super().__init__(msg)
        self.msg = msg


class FitError(RuntimeError):
    def __init__(self, msg):
        super().__init__(msg)
        self.msg = msg


class NonConvergence(RuntimeError):
    def __init__(self, msg):
        super().__init__(msg)
        self.msg = msg


class BudgetExceeded(RuntimeError):
    """Quadrature ran out of evaluations. `partial` holds the QuadResult so far."""

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.msg = msg
        self.partial = partial


class UnknownProperty(KeyError):
    def __init__(self, msg):
        super().__init__(msg)
        self.msg = msg


class ConfigError(ValueError):
    def __init__(self, msg):
        super().__init__(msg)
        self.msg = msg
