"""Exception types shared across the package.

Input problems derive from ``ValueError``; mathematical domain failures
(non-torsion vectors, singular matrices, symmetrization) from
``ArithmeticError``.  The command line maps the two families to exit codes
1 and 2.
"""


class ValidationError(ValueError):
    pass


class NonHermitianError(ValidationError):
    def __init__(self, i: int, j: int, detail: str = ""):
        self.i, self.j = i, j
        msg = f"matrix is not hermitian: entry ({i + 1},{j + 1}) differs from conj of entry ({j + 1},{i + 1})"
        super().__init__(msg + (f": {detail}" if detail else ""))


class BlockSymmetryError(ValidationError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"block A_{i + 1}{j + 1} is not the transpose of block A_{j + 1}{i + 1}")


class DomainError(ArithmeticError):
    pass


class SymmetrizationError(DomainError):
    pass


class NotTorsionError(DomainError):
    def __init__(self, message: str, rank: int, augmented_rank: int):
        self.rank = rank
        self.augmented_rank = augmented_rank
        super().__init__(message)
