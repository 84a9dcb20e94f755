"""Reflection of term syntax into the object logic.

Terms of type ``epsilon`` built from the constructor constants below are
*constructions* — object-level syntax trees.  This module installs those
constants, maps terms and types to the constructions denoting them, decodes
constructions back to terms where possible, and provides the meta-level
predicates the trusted conversions certify.

Names of variables, constants, and type constructors are carried by *name
literals*: a quoted token like ``"bool"`` is a constant of type ``str`` that
denotes itself.  Name literals live outside the constant signature — they
are self-introducing and cannot be redefined.
"""

from __future__ import annotations

from .errors import (
    ContainsHole,
    DuplicateName,
    Improper,
    KernelError,
    NotAConstruction,
    NotAVariable,
    NotEvalFree,
    UnsupportedArity,
)
from .syntax import (
    Abstraction,
    Application,
    Constant,
    HolType,
    Quotation,
    Hole,
    Term,
    TypeApplication,
    TypeVariable,
    Variable,
    bool_ty,
    epsilon_ty,
    mk_fun,
    str_ty,
    type_ty,
)

# constructor name -> argument types (as functions of the ambient base types)
_EPSILON_SIG = (
    ("QuoVar", ("str", "type")),
    ("QuoConst", ("str", "type")),
    ("App", ("epsilon", "epsilon")),
    ("Abs", ("epsilon", "epsilon")),
    ("Quo", ("epsilon",)),
)

_TYPE_SIG = (
    ("TyVar", ("str",)),
    ("TyBase", ("str",)),
    ("TyMonoCons", ("str", "type")),
    ("TyBiCons", ("str", "type", "type")),
)

_ATOM = {"str": str_ty, "type": type_ty, "epsilon": epsilon_ty}


def _sig_type(arg_names, result):
    ty = result
    for name in reversed(arg_names):
        ty = mk_fun(_ATOM[name](), ty)
    return ty


def install(s) -> None:
    """Register the reflection signature in a session (once)."""
    if "str" in s.type_arities:
        raise DuplicateName("type constructor already registered: 'str'")
    s.type_arities["str"] = 0
    for name, args in _EPSILON_SIG:
        if name in s.constants:
            raise DuplicateName(f"constant already registered: {name!r}")
        s.constants[name] = _sig_type(args, epsilon_ty())
    for name, args in _TYPE_SIG:
        if name in s.constants:
            raise DuplicateName(f"constant already registered: {name!r}")
        s.constants[name] = _sig_type(args, type_ty())
    s.constants["isExprType"] = mk_fun(epsilon_ty(), mk_fun(type_ty(), bool_ty()))
    s.constants["isFreeIn"] = mk_fun(epsilon_ty(), mk_fun(epsilon_ty(), bool_ty()))


def constructor_constant(name: str) -> Constant:
    for cname, args in _EPSILON_SIG:
        if cname == name:
            return Constant(name, _sig_type(args, epsilon_ty()))
    for cname, args in _TYPE_SIG:
        if cname == name:
            return Constant(name, _sig_type(args, type_ty()))
    raise NotAConstruction(f"not a constructor constant: {name!r}")


def name_literal(text: str) -> Constant:
    return Constant('"' + text + '"', str_ty())


def dest_name_literal(t: Term) -> str:
    if isinstance(t, Constant) and t.name.startswith('"') and t.name.endswith('"'):
        return t.name[1:-1]
    raise NotAConstruction(f"not a name literal: {t!r}")


def _apply(head: Constant, *args: Term) -> Term:
    t: Term = head
    for a in args:
        t = Application(t, a)
    return t


def strip_application(t: Term):
    args = []
    while isinstance(t, Application):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


# ---------------------------------------------------------------------------
# encoding
# ---------------------------------------------------------------------------


def type_to_construction(ty: HolType) -> Term:
    if isinstance(ty, TypeVariable):
        return _apply(constructor_constant("TyVar"), name_literal(ty.name))
    assert isinstance(ty, TypeApplication)
    n = len(ty.arguments)
    if n == 0:
        return _apply(constructor_constant("TyBase"), name_literal(ty.constructor))
    if n == 1:
        return _apply(
            constructor_constant("TyMonoCons"),
            name_literal(ty.constructor),
            type_to_construction(ty.arguments[0]),
        )
    if n == 2:
        return _apply(
            constructor_constant("TyBiCons"),
            name_literal(ty.constructor),
            type_to_construction(ty.arguments[0]),
            type_to_construction(ty.arguments[1]),
        )
    raise UnsupportedArity(
        f"type constructor {ty.constructor!r} has arity {n}; "
        "constructions only encode arities 0-2"
    )


def term_to_construction(t: Term) -> Term:
    """The construction denoting t, for eval-free, hole-free t."""
    if not t.eval_free:
        raise NotEvalFree("only eval-free terms have quotations")
    if t.has_hole:
        raise ContainsHole(
            "term contains holes; expand_quasiquote handles quotations with holes"
        )
    return _encode(t)


def _encode(t: Term) -> Term:
    if isinstance(t, Variable):
        return _apply(
            constructor_constant("QuoVar"),
            name_literal(t.name),
            type_to_construction(t.ty),
        )
    if isinstance(t, Constant):
        return _apply(
            constructor_constant("QuoConst"),
            name_literal(t.name),
            type_to_construction(t.ty),
        )
    if isinstance(t, Application):
        return _apply(constructor_constant("App"), _encode(t.fn), _encode(t.arg))
    if isinstance(t, Abstraction):
        return _apply(constructor_constant("Abs"), _encode(t.var), _encode(t.body))
    if isinstance(t, Quotation):
        return _apply(constructor_constant("Quo"), _encode(t.body))
    raise NotEvalFree(f"cannot encode {type(t).__name__}")


def expand_quasiquote(q: Quotation) -> Term:
    """Rewrite a quotation to constructor form, splicing hole contents verbatim.

    On a hole-free quotation this agrees with ``term_to_construction`` of the
    body.  Hole contents are left untouched at every nesting depth — they are
    already terms of type epsilon describing the syntax that belongs in the
    slot.
    """
    if not isinstance(q, Quotation):
        raise NotAConstruction("expand_quasiquote expects a Quotation")
    return _expand(q.body)


def _expand(b: Term) -> Term:
    if isinstance(b, Hole):
        return b.content
    if isinstance(b, Variable) or isinstance(b, Constant):
        return _encode(b)
    if isinstance(b, Application):
        return _apply(constructor_constant("App"), _expand(b.fn), _expand(b.arg))
    if isinstance(b, Abstraction):
        return _apply(constructor_constant("Abs"), _expand(b.var), _expand(b.body))
    if isinstance(b, Quotation):
        return _apply(constructor_constant("Quo"), _expand(b.body))
    raise NotEvalFree(f"cannot expand {type(b).__name__} inside a quotation")


# ---------------------------------------------------------------------------
# decoding
# ---------------------------------------------------------------------------


def _is_constructor_normal(t: Term) -> bool:
    head, args = strip_application(t)
    if not isinstance(head, Constant):
        return False
    for group in (_EPSILON_SIG, _TYPE_SIG):
        for name, params in group:
            if head.name == name:
                return len(args) == len(params) and all(
                    _arg_normal(p, a) for p, a in zip(params, args)
                )
    return False


def _arg_normal(param: str, a: Term) -> bool:
    if param == "str":
        return isinstance(a, Constant) and a.name.startswith('"')
    return _is_constructor_normal(a)


def type_from_construction(c: Term) -> HolType:
    head, args = strip_application(c)
    if not isinstance(head, Constant):
        raise NotAConstruction(f"not a type construction: {c!r}")
    try:
        if head.name == "TyVar":
            return TypeVariable(dest_name_literal(args[0]))
        if head.name == "TyBase":
            return TypeApplication(dest_name_literal(args[0]), ())
        if head.name == "TyMonoCons":
            return TypeApplication(
                dest_name_literal(args[0]), (type_from_construction(args[1]),)
            )
        if head.name == "TyBiCons":
            return TypeApplication(
                dest_name_literal(args[0]),
                (type_from_construction(args[1]), type_from_construction(args[2])),
            )
    except Improper:
        raise
    except KernelError as e:
        raise Improper(f"type construction denotes no type: {e}") from e
    except IndexError:
        raise NotAConstruction(f"underapplied type constructor: {c!r}") from None
    raise NotAConstruction(f"not a type construction: {c!r}")


def construction_to_term(c: Term) -> Term:
    """Decode a construction to the term it denotes.

    Partial: raises Improper when the construction is syntactically a
    constructor tree but denotes no well-formed term (ill-typed application,
    abstraction of a non-variable, unknown constant), and NotAConstruction
    when the input is not a constructor tree at all.
    """
    if not _is_constructor_normal(c):
        raise NotAConstruction(f"not in constructor form: {c!r}")
    return _decode(c)


def _decode(c: Term) -> Term:
    head, args = strip_application(c)
    name = head.name
    try:
        if name == "QuoVar":
            return Variable(dest_name_literal(args[0]), type_from_construction(args[1]))
        if name == "QuoConst":
            return Constant(dest_name_literal(args[0]), type_from_construction(args[1]))
        if name == "App":
            return Application(_decode(args[0]), _decode(args[1]))
        if name == "Abs":
            v = _decode(args[0])
            if not isinstance(v, Variable):
                raise Improper("abstraction construction binds a non-variable")
            return Abstraction(v, _decode(args[1]))
        if name == "Quo":
            return Quotation(_decode(args[0]))
    except Improper:
        raise
    except KernelError as e:
        raise Improper(f"construction denotes no term: {e}") from e
    raise NotAConstruction(f"not a construction: {c!r}")


def is_proper(c: Term) -> bool:
    if not _is_constructor_normal(c):
        raise NotAConstruction(f"not in constructor form: {c!r}")
    try:
        _decode(c)
        return True
    except Improper:
        return False


# ---------------------------------------------------------------------------
# meta-level predicates (the semantics certified by trusted conversions)
# ---------------------------------------------------------------------------


def is_expr_type_meta(c: Term, tyc: Term) -> bool:
    """Does construction c denote a term of the type that tyc denotes?

    Malformed or improper inputs yield False rather than an error: the
    object-level predicate is total.
    """
    try:
        t = construction_to_term(c)
        ty = type_from_construction(tyc)
    except (Improper, NotAConstruction):
        return False
    return t.ty == ty


def is_free_in_meta(xc: Term, bc: Term) -> bool:
    """Is the variable denoted by xc free in the expression denoted by bc?

    The test is deliberately transparent to quotation on the target side: an
    occurrence of the variable anywhere inside a quoted body counts, because
    the quoted syntax can be disquoted later and the occurrence then becomes
    live.  A variable bound by a live abstraction does not count.
    """
    head, args = strip_application(xc)
    if not (isinstance(head, Constant) and head.name == "QuoVar") or len(args) != 2:
        raise NotAVariable("first argument must denote a variable")
    try:
        v = _decode(xc)
    except Improper as e:
        raise NotAVariable(f"first argument denotes no variable: {e}") from e
    try:
        b = construction_to_term(bc)
    except (Improper, NotAConstruction):
        return False
    return _free_live(v, b) or _occurs_quoted(v, b)


def _free_live(v: Variable, t: Term) -> bool:
    if isinstance(t, Variable):
        return t == v
    if isinstance(t, Constant):
        return False
    if isinstance(t, Application):
        return _free_live(v, t.fn) or _free_live(v, t.arg)
    if isinstance(t, Abstraction):
        return t.var != v and _free_live(v, t.body)
    if isinstance(t, Quotation):
        return False
    return False


def _occurs_quoted(v: Variable, t: Term) -> bool:
    if isinstance(t, Application):
        return _occurs_quoted(v, t.fn) or _occurs_quoted(v, t.arg)
    if isinstance(t, Abstraction):
        return _occurs_quoted(v, t.body)
    if isinstance(t, Quotation):
        return _occurs_anywhere(v, t.body)
    return False


def _occurs_anywhere(v: Variable, t: Term) -> bool:
    if isinstance(t, Variable):
        return t == v
    if isinstance(t, Application):
        return _occurs_anywhere(v, t.fn) or _occurs_anywhere(v, t.arg)
    if isinstance(t, Abstraction):
        return t.var == v or _occurs_anywhere(v, t.body)
    if isinstance(t, Quotation):
        return _occurs_anywhere(v, t.body)
    return False
