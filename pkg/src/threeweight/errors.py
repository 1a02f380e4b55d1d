"""Exception hierarchy shared by every module of the workbench."""


class WorkbenchError(Exception):
    """Base class; ``kind`` is the machine-readable tag used in CLI error objects."""

    kind = "WorkbenchError"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def as_dict(self):
        return {"type": self.kind, "message": str(self), "details": self.details}


class InvalidParams(WorkbenchError):
    kind = "InvalidParams"


class UnsupportedRegime(WorkbenchError):
    kind = "UnsupportedRegime"


class RegimeError(WorkbenchError):
    kind = "RegimeError"


class DomainError(WorkbenchError):
    kind = "DomainError"


class BudgetExceeded(WorkbenchError):
    kind = "BudgetExceeded"


# The remaining errors indicate an implementation bug, never bad input.

class NonIntegerSum(WorkbenchError):
    kind = "NonIntegerSum"


class OracleMismatch(WorkbenchError):
    kind = "OracleMismatch"


class InternalInconsistency(WorkbenchError):
    kind = "InternalInconsistency"


class WitnessNotFound(WorkbenchError):
    kind = "WitnessNotFound"
