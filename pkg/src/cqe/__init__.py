"""An LCF-style proof kernel for a logic with quotation and evaluation.

Terms carry two reflective forms alongside the usual four: ``Quotation``
freezes an eval-free term into a value of the syntax type ``epsilon``, and
``Evaluation`` maps a syntax value back to a term of a stated type.
Because evaluation makes substitution semantic, the kernel's substitution
either proves its steps harmless, suspends them as explicit redexes, or
refuses; inference rules about quoting, splitting, and reducing syntax
make the reflective layer reason-about-able.  ``Theorem`` values can only
be made by the rules in :mod:`cqe.kernel`, and each one records which
axioms and trusted conversions it depends on.

Parsing/printing lives in :mod:`cqe.frontend`, derived rules and the
bootstrap theory in :mod:`cqe.logic`, the construction codecs in
:mod:`cqe.constructions`, and the proof-script runner in :mod:`cqe.cli`.
"""

from .errors import (
    CqeError,
    ElaborationError,
    FrontendError,
    KernelError,
    ParseError,
    ScriptError,
    SubstitutionBlocked,
)
from .kernel import Theorem, vsubst, inst_type
from .session import current, reset
from .syntax import (
    Abstraction,
    Application,
    Constant,
    Evaluation,
    Hole,
    HolType,
    Quotation,
    Term,
    TypeApplication,
    TypeVariable,
    Variable,
    alpha_equivalent,
    free_variables,
)
from .frontend import parse_term, parse_type, print_term, print_theorem, print_type

__version__ = "0.1.0"

__all__ = [
    "Abstraction",
    "Application",
    "Constant",
    "CqeError",
    "ElaborationError",
    "Evaluation",
    "FrontendError",
    "Hole",
    "HolType",
    "KernelError",
    "ParseError",
    "Quotation",
    "ScriptError",
    "SubstitutionBlocked",
    "Term",
    "Theorem",
    "TypeApplication",
    "TypeVariable",
    "Variable",
    "alpha_equivalent",
    "current",
    "free_variables",
    "inst_type",
    "parse_term",
    "parse_type",
    "print_term",
    "print_theorem",
    "print_type",
    "reset",
    "vsubst",
]
