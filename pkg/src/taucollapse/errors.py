"""Exception hierarchy shared by the library and the command line tool."""


class TauCollapseError(Exception):
    """Base class for every error raised by this package."""


class TwistOverflow(TauCollapseError, ValueError):
    """A twist integer fell outside the signed 32-bit range."""


class ParseError(TauCollapseError, ValueError):
    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")


class InvalidRecord(TauCollapseError, ValueError):
    """A knot record or database file violates its invariants."""


class UnknownKnot(TauCollapseError, LookupError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown knot {name!r}")


class MissingInvariant(TauCollapseError, LookupError):
    def __init__(self, name, invariant):
        self.name = name
        self.invariant = invariant
        super().__init__(f"knot {name!r} has no recorded {invariant}")


class CollapseError(TauCollapseError, ValueError):
    """A collapse was requested on a node that cannot be collapsed."""


class BothTreesTrivial(TauCollapseError):
    """The Hopf pipeline was given two single-leaf trees."""

    def __init__(self):
        super().__init__(
            "unsupported case: both trees are single leaves; the Hopf "
            "construction needs at least one tree with two or more leaves"
        )


class PropagationViolation(TauCollapseError, AssertionError):
    """A collapse produced a label breaking the twist < 2*tau condition.

    This signals a bug in the engine, never bad input.
    """
