"""Mutable proof-session state: signature, axioms, definitions, theorems.

A session owns the type-constructor arity table, the constant signature, the
named axioms and definitions, user-named theorems, the support theorems the
derived rules instantiate, and the registry of proved not-effective facts
that the substitution discipline consults.

The initial session is built once per process (the bootstrap installs the
syntax-reflection constants, the logical connectives and their support
theorems, the datatype facts, and the arithmetic signature) and then cloned,
so ``reset()`` is cheap and tests are isolated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

_BASE_ARITIES = {
    "bool": 0,
    "ind": 0,
    "epsilon": 0,
    "type": 0,
    "num": 0,
    "fun": 2,
}


@dataclass
class Session:
    type_arities: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    axioms: dict = field(default_factory=dict)
    definitions: dict = field(default_factory=dict)
    theorems: dict = field(default_factory=dict)
    basis: dict = field(default_factory=dict)
    nei_registry: dict = field(default_factory=dict)

    def copy(self) -> "Session":
        return Session(
            dict(self.type_arities),
            dict(self.constants),
            dict(self.axioms),
            dict(self.definitions),
            dict(self.theorems),
            dict(self.basis),
            dict(self.nei_registry),
        )


_current = None
_template = None


def arity_table():
    """The active arity table, bootstrapping on first use."""
    if _current is not None:
        return _current.type_arities
    return _ensure().type_arities


def current() -> Session:
    if _current is not None:
        return _current
    return _ensure()


def reset() -> Session:
    """Discard the active session and start from a fresh bootstrap clone."""
    global _current
    _current = _build_template().copy()
    return _current


def _ensure() -> Session:
    global _current
    if _current is None:
        _current = _build_template().copy()
    return _current


def _build_template() -> Session:
    global _template, _current
    if _template is None:
        s = Session()
        s.type_arities.update(_BASE_ARITIES)
        prev = _current
        # Make the in-progress session visible so term formation performed
        # by the bootstrap itself validates against the growing signature.
        _current = s
        try:
            _populate(s)
            _template = s
        finally:
            _current = prev
    return _template


def _populate(s: Session) -> None:
    from . import constructions, logic
    from .syntax import TypeVariable, bool_ty, mk_fun

    a = TypeVariable("A")
    s.constants["="] = mk_fun(a, mk_fun(a, bool_ty()))

    constructions.install(s)
    logic.bootstrap_logic(s)
    logic.install_datatype_facts(s)
    logic.arithmetic_base(s)
    logic.define_is_peano(s)
    logic.define_is_presburger(s)
