"""Exception hierarchy.

Every error carries a short machine-readable ``code`` which the CLI echoes
back in its JSON payload.
"""


class QuatringError(Exception):
    code = "error"


class PreconditionError(QuatringError, ValueError):
    code = "precondition"


class NoSquareRootError(QuatringError, ValueError):
    code = "no_square_root"


class BudgetExhaustedError(QuatringError, RuntimeError):
    code = "budget_exhausted"


class NotAssociativeError(QuatringError, ValueError):
    code = "not_associative"

    def __init__(self, triple):
        self.triple = triple
        i, j, k = triple
        super().__init__(f"associativity violated at ({i},{j},{k})")


class NoIdentityError(QuatringError, ValueError):
    code = "no_identity"


class NoStandardInvolutionError(QuatringError, ValueError):
    code = "no_standard_involution"


class SingularNormError(QuatringError, ValueError):
    """The reduced norm is singular; ``radical`` spans its radical."""

    code = "singular_norm"

    def __init__(self, radical):
        self.radical = radical
        super().__init__(f"singular norm (radical of dimension {len(radical)})")


class SingularMatrixError(QuatringError, ValueError):
    code = "singular_matrix"


class NotAnOrderError(QuatringError, ValueError):
    code = "not_an_order"
