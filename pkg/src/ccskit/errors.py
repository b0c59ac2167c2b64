"""Exception types shared across the toolkit."""


class CcsError(Exception):
    """Base class for all toolkit errors."""


class UnboundConstant(CcsError):
    def __init__(self, name):
        super().__init__(f"constant {name!r} is not defined in the environment")
        self.name = name


class CcsSyntaxError(CcsError):
    """Malformed concrete syntax; carries the offending source span."""

    def __init__(self, message, span):
        super().__init__(f"{span.line}:{span.column}: {message}")
        self.message = message
        self.span = span


class IncompleteLts(CcsError):
    """The operation needs a fully explored transition system."""


class ExceedsCap(CcsError):
    """A state or step budget ran out before the computation finished."""


class UnguardedRecursion(ExceedsCap):
    def __init__(self, name):
        super().__init__(f"constant {name!r} recurses without a guarding prefix")
        self.name = name


class KlopIndexExceeded(ExceedsCap):
    """The distinguishing-process index grew past the materialization cap."""


class NotWeaklyEquivalent(CcsError):
    """Precondition failure: the two processes are not weakly bisimilar."""


class UnknownLaw(CcsError):
    def __init__(self, law_id):
        super().__init__(f"no law named {law_id!r} in the catalog")
        self.law_id = law_id
