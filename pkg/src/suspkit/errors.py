class SuspkitError(Exception):
    """Base class for errors raised by suspkit."""


class ParseError(SuspkitError):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)


class CertificateError(SuspkitError):
    """A supplied certificate (inverse, isomorphism, centralizer) fails its check."""


class OracleInconsistency(SuspkitError):
    """Oracle inputs that contradict each other."""
