"""Domain errors carrying stable machine-readable codes."""


class LatticeError(Exception):
    """Raised when an operation's inputs violate its mathematical contract.

    ``code`` is a short stable identifier (e.g. ``"dimension-mismatch"``,
    ``"not-p-type"``) suitable for programmatic dispatch; the message is
    human-readable.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code

    def __repr__(self) -> str:
        return f"LatticeError({self.code!r}, {self.args[0]!r})"
