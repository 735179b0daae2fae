"""Exception types shared across the package."""


class FFInvError(Exception):
    """Base class for all library errors."""


class NotPrime(FFInvError):
    pass


class NotIrreducible(FFInvError):
    pass


class DegreeMismatch(FFInvError):
    pass


class TowerMismatch(FFInvError):
    pass


class DivisionByZero(FFInvError):
    pass


class DeskScaleExceeded(FFInvError):
    """Raised when an exhaustive operation would enumerate too large a field."""


class DuplicateNode(FFInvError):
    pass


class NotPermutation(FFInvError):
    pass


class NotBijectiveOnDomain(FFInvError):
    pass


class NotBijectiveOnSubspace(FFInvError):
    pass


class SingularDickson(FFInvError):
    """The associate matrix of a linearized polynomial is singular."""


class SingularBasisSystem(FFInvError):
    """The basis-conversion linear system is singular; signals internal corruption."""


class NoSolution(FFInvError):
    """A linear solve that is mathematically guaranteed to succeed did not."""


class NoSuitableRoot(FFInvError):
    """No usable root of unity for the fast circulant solver; fall back to Gaussian."""


class HypothesisViolated(FFInvError):
    """A construction hypothesis failed; carries the hypothesis name and a witness."""

    def __init__(self, hypothesis, witness=None):
        self.hypothesis = hypothesis
        self.witness = witness
        msg = hypothesis if witness is None else f"{hypothesis} (witness={witness})"
        super().__init__(msg)


class BadExponent(FFInvError):
    pass


class ZeroC(FFInvError):
    pass


class TraceZero(FFInvError):
    pass


class OracleMismatch(FFInvError):
    """A closed-form result disagreed with the brute-force oracle; flagged, not repaired."""
