"""Exception hierarchy shared by every earcomb module."""


class EarcombError(ValueError):
    """Base class for all validation and certificate errors."""


class NotPure(EarcombError):
    pass


class BadDimension(EarcombError):
    pass


class ImproperColoring(EarcombError):
    pass


class NotAShelling(EarcombError):
    """Raised with 1-based facet positions ``k`` and ``j`` of the first violation."""

    def __init__(self, k, j, message=None):
        self.k = k
        self.j = j
        super().__init__(message or f"not a shelling: facet {k} fails against facet {j}")


class BadOrder(EarcombError):
    """A claimed facet order is not a permutation of the facets."""


class TooLarge(EarcombError):
    pass


class EmptyRankSet(EarcombError):
    pass


class NotELLabeling(EarcombError):
    pass


class NotAMatroid(EarcombError):
    pass


class NotSimple(EarcombError):
    pass


class NotABasis(EarcombError):
    pass


class BadRestriction(EarcombError):
    pass


class NotABall(EarcombError):
    pass


class OutsideTheorem(EarcombError):
    """Rank set contains the top rank of a face poset; no construction exists there."""


class HypothesisViolation(EarcombError):
    """A hypothesis of the Boolean-pieces decomposition failed.

    ``which`` is 1, 2 or 3; ``witness`` is a chain (tuple of element ids)
    or piece index demonstrating the failure.
    """

    def __init__(self, which, witness, message=None):
        self.which = which
        self.witness = witness
        super().__init__(message or f"hypothesis {which} violated; witness {witness!r}")
