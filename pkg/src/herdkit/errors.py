"""Exception hierarchy.

Errors split into two families: axiom/precondition failures on user input
(``HeapAxiomError``, ``HerdAxiomError``, ...) and internal consistency alarms
raised when a construction that is proven well defined turns out not to be
(``FactorizationError`` fired from inside a reconstruction, ``WellDefinednessError``).
The second family always indicates a bug and is never silently repaired.
"""


class HerdkitError(Exception):
    """Base class for every error raised by herdkit."""


class FactorizationError(HerdkitError):
    """``f`` does not factor through the surjection ``p`` (ker p is not inside ker f)."""


class SingularError(HerdkitError):
    """A square matrix that was required to be invertible is singular."""


class NoAntipodeError(SingularError):
    """The fusion operator of a bimonoid is singular, so no antipode exists."""

    def __init__(self, message, fusion=None):
        super().__init__(message)
        self.fusion = fusion


class HeapAxiomError(HerdkitError):
    """A heap table violates para-associativity or one of the unit laws."""


class GroupAxiomError(HerdkitError):
    """A multiplication table is not a group."""


class HerdAxiomError(HerdkitError):
    """A herd (comonoid with ternary operation) violates one of its axioms."""


class ComoduleAxiomError(HerdkitError):
    """A coaction fails coassociativity or counitality."""


class WellDefinednessError(HerdkitError):
    """Different representatives of a class produced different values."""


class ZeroCounitError(HerdkitError):
    """The counit vanishes, so there is no vector to split it with."""


class MissingObjectError(HerdkitError):
    """A comodule required by a construction is not an object of the diagram."""


class SchemaError(HerdkitError):
    """A structure file does not match its schema.

    ``pointer`` is the JSON pointer of the offending field.
    """

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
