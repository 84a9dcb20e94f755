"""Exception hierarchy for the cqe proof checker.

Everything the kernel or frontend can refuse raises a subclass of CqeError,
so callers (scripts, the REPL, tests) can catch one base type and still
pattern-match on the precise failure.
"""

from __future__ import annotations


class CqeError(Exception):
    """Base class for all checker errors."""


# ---------------------------------------------------------------------------
# term/type formation and inspection
# ---------------------------------------------------------------------------

class KernelError(CqeError):
    """Base class for errors raised by term formation and inference rules."""


class IllTyped(KernelError):
    """A term cannot be formed: operator/operand or annotation mismatch."""


class UnsupportedArity(KernelError):
    """A type constructor was applied to the wrong number of arguments."""


class UnknownName(KernelError):
    """A constant or type constructor name is not registered."""


class DuplicateName(KernelError):
    """An attempt to re-register an existing constant or type constructor."""


class NotEvalFree(KernelError):
    """An operation that requires eval-free input met an evaluation node."""


class ContainsHole(KernelError):
    """An operation that requires hole-free input met a hole."""


class HoleOutsideQuotation(KernelError):
    """A hole occurred where no enclosing quotation can own it."""


class NotAVariable(KernelError):
    """A variable was required (binder position, substitution target)."""


class FreeOccurrence(KernelError):
    """A side condition 'variable not free in ...' failed."""


class SameVariable(KernelError):
    """Two variables that must be distinct were equal."""


class WrongShape(KernelError):
    """A rule's input did not have the required syntactic shape."""


class NotAtomicQuote(WrongShape):
    """Disquotation was applied to a quotation of a non-atomic term."""


class TypeMismatch(KernelError):
    """Types that must agree did not."""


class HasHoles(ContainsHole):
    """A quotation with holes was passed where a closed quotation is needed."""


class OpenBody(KernelError):
    """A definition body had free variables."""


class NotClosed(KernelError):
    """A decision conversion was applied to a term with free variables."""


class VariableCollision(KernelError):
    """Type instantiation would merge a binder with a distinct variable."""


class QuotationTypePolymorphism(KernelError):
    """Type instantiation would rewrite type variables inside a quotation."""


class NotAConstruction(KernelError):
    """A term of type epsilon is not a constructor-built syntax value."""


class Improper(KernelError):
    """A construction does not represent a well-typed expression."""


class SubstitutionBlocked(KernelError):
    """Substitution stopped at a binder or evaluation for want of evidence.

    ``needed`` lists (variable, term) pairs; a registered theorem saying the
    variable is not effective in the term would let the substitution proceed.
    """

    def __init__(self, message: str, needed=()):
        super().__init__(message)
        self.needed = tuple(needed)


# ---------------------------------------------------------------------------
# frontend
# ---------------------------------------------------------------------------

class SourceSpan:
    """Start/end positions (1-based line, 0-based column) inside one input."""

    __slots__ = ("text", "start", "end")

    def __init__(self, text: str, start: tuple[int, int], end: tuple[int, int]):
        self.text = text
        self.start = start
        self.end = end

    def __repr__(self):
        (l1, c1), (l2, c2) = self.start, self.end
        return f"{l1}:{c1}-{l2}:{c2}"


class FrontendError(CqeError):
    """Base class for parse/elaboration errors; carries an optional span."""

    def __init__(self, message: str, span: SourceSpan | None = None):
        super().__init__(message)
        self.span = span


class ParseError(FrontendError):
    """Lexical or grammatical error in a term, type, or script."""


class ElaborationError(FrontendError):
    """The parsed tree has no (unique) monomorphic typing."""


# ---------------------------------------------------------------------------
# scripts / CLI
# ---------------------------------------------------------------------------

class ScriptError(CqeError):
    """A proof-script command failed; wraps the underlying error."""

    def __init__(self, message: str, line: int, cause: Exception | None = None):
        super().__init__(message)
        self.line = line
        self.cause = cause
