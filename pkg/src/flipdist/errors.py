"""Exception taxonomy shared by all modules.

Two families: ValidationError for malformed or inconsistent inputs,
BudgetError for inputs that are well formed but beyond a documented cap
or search budget.  The CLI maps them to exit codes 1 and 2.
"""


class ValidationError(Exception):
    """Input violates a structural contract."""


class WrongCount(ValidationError):
    """Diagonal count differs from n - 3."""


class CrossingPair(ValidationError):
    """Two supposed diagonals cross."""

    def __init__(self, e1, e2):
        self.e1 = tuple(e1)
        self.e2 = tuple(e2)
        super().__init__(f"diagonals {self.e1} and {self.e2} cross")


class NotInterior(ValidationError):
    """Edge endpoints are adjacent on the polygon boundary."""

    def __init__(self, e):
        self.e = tuple(e)
        super().__init__(f"{self.e} is not an interior diagonal")


class NotADiagonal(ValidationError):
    """Edge is absent from the triangulation."""

    def __init__(self, e):
        self.e = tuple(e)
        super().__init__(f"{self.e} is not a diagonal of this triangulation")


class FormatError(ValidationError):
    """Text serialization does not parse."""


class IsRoot(ValidationError):
    """Rotation requested at the root node."""


class NotInternal(ValidationError):
    """Rotation requested at a leaf."""


class SizeMismatch(ValidationError):
    """The two operands have different sizes."""


class IllegalStep(ValidationError):
    """A flip in a sequence is not applicable."""

    def __init__(self, index, reason=""):
        self.index = index
        msg = f"step {index} is not a legal flip"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class WrongTarget(ValidationError):
    """A sequence replays fine but ends at the wrong triangulation."""


class NotASubpolygon(ValidationError):
    """Vertex set does not bound a sub-polygon of the triangulation."""


class NotMonotone(ValidationError):
    """A 2SAT clause mixes a positive and a negative literal."""


class BadClause(ValidationError):
    """A 2SAT clause is out of range or not i < j."""


class NotLaminar(ValidationError):
    """Two same-sign clause intervals strictly interleave."""

    def __init__(self, side, c1, c2):
        self.side = side
        self.c1 = c1
        self.c2 = c2
        super().__init__(f"{side} clauses {c1} and {c2} interleave")


class NotAcyclic(ValidationError):
    """A vertex set expected to induce an acyclic subgraph does not."""


class NotASubsetOfGamma(ValidationError):
    """Indices outside the pair list."""


class InvalidSequence(ValidationError):
    """A flip sequence does not replay on the given instance."""


class UnexpectedDoubleConflict(ValidationError):
    """A bidirected conflict outside the documented inventory."""

    def __init__(self, i, j, detail=""):
        self.i = i
        self.j = j
        super().__init__(f"unexpected double conflict {i} <-> {j} {detail}".rstrip())


class UnexpectedDirectedConflict(ValidationError):
    """A one-way conflict outside the allowed categories and exceptions."""

    def __init__(self, i, j, detail=""):
        self.i = i
        self.j = j
        super().__init__(f"unexpected directed conflict {i} -> {j} {detail}".rstrip())


class BudgetError(Exception):
    """Well-formed input beyond a documented cap or budget."""


class TooLarge(BudgetError):
    """n beyond the documented cap for this operation."""


class TooLargeForExact(BudgetError):
    """Vertex count beyond the exact solver cap."""


class BudgetExceeded(BudgetError):
    """Search state budget exhausted."""
