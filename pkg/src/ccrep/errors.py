"""Exception hierarchy shared by every module of the toolkit."""


class CCError(Exception):
    """Base class for all toolkit errors."""


class ParseError(CCError):
    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class DuplicateAction(CCError):
    def __init__(self, action):
        self.action = action
        super().__init__(f"action {action!r} declared in more than one class")


class UnknownAction(CCError):
    def __init__(self, action):
        self.action = action
        super().__init__(f"action {action!r} is not in the signature")


class ModalityMismatch(CCError):
    def __init__(self, action, modality):
        self.action = action
        self.modality = modality
        super().__init__(f"modality {modality} cannot be applied to action {action!r}")


class SignatureMismatch(CCError):
    """A term, formula or system does not fit the signature an operation expects."""


class OmegaInBivariantTerm(CCError):
    def __init__(self, message="the term-level bivariant encoding is undefined on an embedded w"):
        super().__init__(message)


class PreconditionViolated(CCError):
    pass


class NotRepresentable(CCError):
    """Raised when a term over the split signature is not equivalent to any encoded term.

    ``left`` is the input and ``right`` the encoding of the best candidate; the two
    are not cc-equivalent.
    """

    def __init__(self, left, right, message=None):
        self.left = left
        self.right = right
        super().__init__(message or "not equivalent to the encoding of any process term")


class SnfExplosion(CCError):
    def __init__(self, limit):
        self.limit = limit
        super().__init__(f"normal form exceeds {limit} disjuncts")
