"""Exception types shared across the package."""

from __future__ import annotations


class BraidDeformError(Exception):
    """Base class for all package errors."""


class OnHyperplane(BraidDeformError):
    def __init__(self, u, v, s):
        super().__init__(f"point lies on H({u}, {v}, {s})")
        self.hyperplane = (u, v, s)


class IncompleteRegion(BraidDeformError):
    pass


class InexactDivision(BraidDeformError):
    pass


class UnknownVertex(BraidDeformError):
    pass


class NotTransitive(BraidDeformError):
    def __init__(self, witness):
        super().__init__(f"offset data is not transitive; witness {witness}")
        self.witness = witness


class BudgetExceeded(BraidDeformError):
    pass


class TooLarge(BraidDeformError):
    pass


class Overflow(BraidDeformError):
    pass


class PreconditionViolated(BraidDeformError):
    pass


class HypothesisViolated(BraidDeformError):
    pass


class NonConvergence(BraidDeformError):
    pass


class Collision(BraidDeformError):
    def __init__(self, i, s, j, t):
        super().__init__(f"x_{i}+{s} = x_{j}+{t}")
        self.letters = ((i, s), (j, t))


class InvalidSketch(BraidDeformError):
    pass


class NotApplicable(BraidDeformError):
    pass


class LabelMismatch(BraidDeformError):
    pass


class NotShiTree(BraidDeformError):
    pass


class NotLinialTree(BraidDeformError):
    pass
