"""Exception hierarchy shared by all dofb modules."""


class DofbError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DofbError):
    pass


class ValidationError(DofbError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InvalidParams(DofbError, ValueError):
    pass


class UnknownNode(DofbError, KeyError):
    def __str__(self):
        return f"unknown node {self.args[0]!r}"


class LayerMismatch(DofbError, ValueError):
    pass


class IncompatibleBoundary(DofbError, ValueError):
    pass


class MissingGain(DofbError, KeyError):
    def __str__(self):
        return f"no gain for {self.args[0]!r}"


class InternalInconsistency(DofbError, AssertionError):
    pass


class OverlapError(DofbError, ValueError):
    pass


class CapExceeded(DofbError):
    def __init__(self, node, size, cap):
        self.node, self.size, self.cap = node, size, cap
        super().__init__(
            f"pruned parent set of {node!r} has {size} nodes, above subset cap {cap}; "
            "raise --subset-cap"
        )


class MismatchedDestination(DofbError, ValueError):
    pass


class SchemeError(DofbError):
    """A scheme could not be executed; carries the offending position."""

    def __init__(self, message, hop=None, slot=None, node=None):
        self.hop, self.slot, self.node = hop, slot, node
        where = ", ".join(
            f"{k}={v}" for k, v in (("hop", hop), ("slot", slot), ("node", node)) if v is not None
        )
        super().__init__(f"{message} ({where})" if where else message)


class IllegalAction(SchemeError):
    pass


class IllegalReconstruction(SchemeError):
    pass


class CausalityViolation(SchemeError):
    pass


class UnknownRef(SchemeError):
    pass
