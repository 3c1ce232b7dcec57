"""Exception hierarchy.

Every error raised on malformed or unsuitable input derives from
``InputError``; the CLI maps those to exit code 2.
"""


class ArtifactError(Exception):
    """Base class for all package errors."""


class InputError(ArtifactError):
    """Input is malformed or violates a precondition."""

    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(InputError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.detail = message


class DanglingReference(InputError):
    def __init__(self, name: str):
        super().__init__(f"unresolved reference {name!r}")
        self.name = name


class TableArity(InputError):
    pass


class DuplicateLabel(InputError):
    pass


class NotByAutomorphisms(InputError):
    pass


class CompositionDomain(InputError):
    pass


class NotComposable(ArtifactError, KeyError):
    """Lookup of a composite for a pair that is not composable."""


class EmptyCarrier(InputError):
    pass


class NotSurjective(InputError):
    pass


class InvalidCrossedModule(InputError):
    pass


class StructureMapNotHom(InputError):
    pass


class NotBijective(InputError):
    pass


class NotFree(InputError):
    pass


class IllDefinedComposition(InputError):
    pass


class BaseNotFiberProduct(InputError):
    pass


class InvalidGerbe(InputError):
    pass


class NotBaseTrivial(InputError):
    pass


class PreconditionNotMet(InputError):
    pass


class NotFreeAtLevel(InputError):
    pass


class IllDefined(InputError):
    pass


class CarrierTooLarge(InputError):
    pass


class NoGroupElement(InputError):
    pass


class IllDefinedOnClasses(InputError):
    pass


class SquareFailure(ArtifactError):
    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


class SearchExhausted(InputError):
    pass


class NotAFibration(InputError):
    pass


class QuotientIllDefined(InputError):
    pass


class UnknownSubcommand(InputError):
    pass
