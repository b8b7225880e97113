"""Exception types raised by elastinv."""


class ElastinvError(Exception):
    """Base class for all library errors."""


class FormatError(ElastinvError, ValueError):
    """Malformed tensor input (non-symmetric Voigt matrix, wrong shape, bad file)."""


class ContractError(ElastinvError, ValueError):
    """An operation was called with arguments violating its preconditions."""


class DomainError(ElastinvError, ValueError):
    """Input outside the mathematical domain of an operation (e.g. normalizing zero)."""


class InconsistentBranchError(ElastinvError, RuntimeError):
    """Reconstruction reached a branch that is provably empty.

    Seeing this means the input sits on a degenerate stratum closer than the
    dead-zone tolerance can resolve, or there is a bug.
    """

    def __init__(self, label, detail=""):
        self.label = label
        msg = f"reconstruction reached contradictory branch {label}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class UnsupportedLabelError(ElastinvError, ValueError):
    """A branch label that has no probe tensor (unknown or contradictory)."""
