"""Exception hierarchy shared by all modules."""


class BetazError(Exception):
    """Base class for every error raised by the library."""

    kind = "error"

    def to_dict(self):
        return {"kind": self.kind, "message": str(self)}


class ValidationError(BetazError, ValueError):
    """Malformed constructor input (bad residue, non-bounded term, ...)."""

    kind = "validation"


class DomainError(BetazError, ValueError):
    """Operation applied outside its domain."""

    kind = "domain"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self):
        out = super().to_dict()
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class RefinePointError(DomainError):
    """A direction point is too coarse for the queried modulus."""

    kind = "refine-point"

    def __init__(self, message, required_modulus):
        super().__init__(message, witness=required_modulus)
        self.required_modulus = required_modulus


class InconsistentTraceError(DomainError):
    """Decisions about a point have an empty intersection."""

    kind = "inconsistent-trace"


class DslError(BetazError):
    """Syntax or sort error in an expression, with its source position."""

    def __init__(self, message, line, col, kind="syntax", expected=()):
        super().__init__(f"{line}:{col}: {message}")
        self.kind = kind
        self.line = line
        self.col = col
        self.expected = tuple(expected)

    def to_dict(self):
        out = super().to_dict()
        out.update(line=self.line, col=self.col)
        if self.expected:
            out["expected"] = list(self.expected)
        return out
