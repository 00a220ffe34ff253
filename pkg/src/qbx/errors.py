"""Exception hierarchy shared by the parsers, the synthesis pipeline and the CLI."""


class QbxError(Exception):
    """Base class for every error raised by this package."""


class ParseError(QbxError, ValueError):
    """Malformed input text.

    ``position`` is a 0-based character offset for expressions, ``line`` a
    1-based line number for the line-oriented formats.
    """

    def __init__(self, message, *, position=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"position {position}")
        text = f"{message} ({', '.join(where)})" if where else message
        super().__init__(text)
        self.position = position
        self.line = line


class SemanticError(QbxError, ValueError):
    """Well-formed input that violates a structural or domain constraint."""


class VerificationError(QbxError):
    """A circuit does not compute what it is supposed to."""
