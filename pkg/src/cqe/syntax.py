"""Core term language: simple types and the seven-constructor term tree.

Terms are immutable; every node validates its own formation conditions when
built, so a constructed Term is well-typed by construction.  Three node kinds
go beyond the simply typed lambda calculus:

* ``Quotation`` wraps a term and denotes that term's syntax tree.  Its body
  must not contain an evaluation except inside a hole — quoting a term whose
  value can depend on evaluation would let a formula talk about its own
  truth, which is exactly the trap the formation rule exists to close.
* ``Hole`` is an antiquotation: a live slot of type ``epsilon`` spliced into
  a quotation.  Hole contents stay part of the surrounding (unquoted)
  world — they are substituted into, their free variables are free.
* ``Evaluation`` maps a syntax value back to the value of the term it
  represents, at a stated result type.

Eval-freeness, hole bookkeeping, the term's type, and a structural hash are
computed once at construction and cached on the node.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    HoleOutsideQuotation,
    IllTyped,
    NotAVariable,
    NotEvalFree,
    UnknownName,
)

# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------


class HolType:
    """Base class for object-logic types."""

    __slots__ = ()


@dataclass(frozen=True)
class TypeVariable(HolType):
    name: str

    def __repr__(self):
        return f"'{self.name}"


@dataclass(frozen=True)
class TypeApplication(HolType):
    constructor: str
    arguments: tuple = ()

    def __post_init__(self):
        if not isinstance(self.arguments, tuple):
            object.__setattr__(self, "arguments", tuple(self.arguments))
        from . import session

        table = session.arity_table()
        if table is not None:
            arity = table.get(self.constructor)
            if arity is None:
                raise UnknownName(f"unknown type constructor: {self.constructor!r}")
            if arity != len(self.arguments):
                raise IllTyped(
                    f"type constructor {self.constructor!r} expects {arity} "
                    f"argument(s), got {len(self.arguments)}"
                )

    def __repr__(self):
        if not self.arguments:
            return self.constructor
        if self.constructor == "fun" and len(self.arguments) == 2:
            return f"({self.arguments[0]!r}->{self.arguments[1]!r})"
        args = " ".join(repr(a) for a in self.arguments)
        return f"({self.constructor} {args})"


def bool_ty() -> TypeApplication:
    return TypeApplication("bool", ())


def ind_ty() -> TypeApplication:
    return TypeApplication("ind", ())


def epsilon_ty() -> TypeApplication:
    return TypeApplication("epsilon", ())


def type_ty() -> TypeApplication:
    return TypeApplication("type", ())


def num_ty() -> TypeApplication:
    return TypeApplication("num", ())


def str_ty() -> TypeApplication:
    return TypeApplication("str", ())


def mk_fun(dom: HolType, cod: HolType) -> TypeApplication:
    return TypeApplication("fun", (dom, cod))


def dest_fun(ty: HolType) -> tuple:
    if isinstance(ty, TypeApplication) and ty.constructor == "fun" and len(ty.arguments) == 2:
        return ty.arguments
    raise IllTyped(f"not a function type: {ty!r}")


def is_fun(ty: HolType) -> bool:
    return isinstance(ty, TypeApplication) and ty.constructor == "fun" and len(ty.arguments) == 2


def type_variables_in(ty: HolType) -> frozenset:
    if isinstance(ty, TypeVariable):
        return frozenset((ty,))
    out = frozenset()
    for a in ty.arguments:
        out |= type_variables_in(a)
    return out


def match_type(generic: HolType, concrete: HolType, env: dict) -> bool:
    """Match ``concrete`` against ``generic``, binding generic's type variables."""
    if isinstance(generic, TypeVariable):
        bound = env.get(generic)
        if bound is None:
            env[generic] = concrete
            return True
        return bound == concrete
    if not isinstance(concrete, TypeApplication):
        return False
    if generic.constructor != concrete.constructor:
        return False
    if len(generic.arguments) != len(concrete.arguments):
        return False
    return all(
        match_type(g, c, env) for g, c in zip(generic.arguments, concrete.arguments)
    )


def subst_type(ty: HolType, env: dict) -> HolType:
    if isinstance(ty, TypeVariable):
        return env.get(ty, ty)
    if not ty.arguments:
        return ty
    return TypeApplication(ty.constructor, tuple(subst_type(a, env) for a in ty.arguments))


# ---------------------------------------------------------------------------
# terms
# ---------------------------------------------------------------------------


class Term:
    """Base class; see the module docstring for the node kinds."""

    __slots__ = ()

    # Caches set by each subclass's __post_init__:
    #   ty               -- the term's type (a field on Variable/Constant)
    #   eval_free        -- no Evaluation anywhere, including hole contents
    #   ef_outside_holes -- no Evaluation outside hole contents
    #   has_hole         -- some Hole occurs anywhere
    #   has_naked_hole   -- some Hole occurs outside any Quotation
    #   _hash            -- structural hash

    def _parts(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented if not isinstance(other, Term) else False
        if self._hash != other._hash:
            return False
        return self._parts() == other._parts()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return self._hash

    def __repr__(self):
        try:
            from .frontend import print_term

            return f"`{print_term(self)}`"
        except Exception:
            return f"<{type(self).__name__}>"

    def _seal(self, ty, eval_free, ef_outside_holes, has_hole, has_naked_hole):
        sa = object.__setattr__
        if not hasattr(self, "ty"):
            sa(self, "ty", ty)
        sa(self, "eval_free", eval_free)
        sa(self, "ef_outside_holes", ef_outside_holes)
        sa(self, "has_hole", has_hole)
        sa(self, "has_naked_hole", has_naked_hole)
        sa(self, "_hash", hash((type(self).__name__,) + self._parts()))


def _is_name_literal(name: str) -> bool:
    return len(name) >= 2 and name.startswith('"') and name.endswith('"')


@dataclass(frozen=True, eq=False, repr=False)
class Variable(Term):
    name: str
    ty: HolType

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise IllTyped("variable name must be a non-empty string")
        if not isinstance(self.ty, HolType):
            raise IllTyped("variable type must be a HolType")
        self._seal(self.ty, True, True, False, False)

    def _parts(self):
        return (self.name, self.ty)


@dataclass(frozen=True, eq=False, repr=False)
class Constant(Term):
    name: str
    ty: HolType

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise IllTyped("constant name must be a non-empty string")
        if _is_name_literal(self.name):
            # A name literal like "bool" denotes itself; its type is fixed.
            if self.ty != str_ty():
                raise IllTyped(f"name literal {self.name} must have type str")
        else:
            from . import session

            generic = session.current().constants.get(self.name)
            if generic is None:
                raise UnknownName(f"unknown constant: {self.name!r}")
            if not match_type(generic, self.ty, {}):
                raise IllTyped(
                    f"constant {self.name!r} at type {self.ty!r} is not an "
                    f"instance of its generic type {generic!r}"
                )
        self._seal(self.ty, True, True, False, False)

    def _parts(self):
        return (self.name, self.ty)


@dataclass(frozen=True, eq=False, repr=False)
class Application(Term):
    fn: Term
    arg: Term

    def __post_init__(self):
        fty = self.fn.ty
        if not is_fun(fty):
            raise IllTyped(f"operator is not function-typed: {fty!r}")
        dom, cod = fty.arguments
        if dom != self.arg.ty:
            raise IllTyped(
                f"operand type {self.arg.ty!r} does not match operator domain {dom!r}"
            )
        self._seal(
            cod,
            self.fn.eval_free and self.arg.eval_free,
            self.fn.ef_outside_holes and self.arg.ef_outside_holes,
            self.fn.has_hole or self.arg.has_hole,
            self.fn.has_naked_hole or self.arg.has_naked_hole,
        )

    def _parts(self):
        return (self.fn, self.arg)


@dataclass(frozen=True, eq=False, repr=False)
class Abstraction(Term):
    var: Variable
    body: Term

    def __post_init__(self):
        if not isinstance(self.var, Variable):
            raise NotAVariable("abstraction binder must be a Variable")
        self._seal(
            mk_fun(self.var.ty, self.body.ty),
            self.body.eval_free,
            self.body.ef_outside_holes,
            self.body.has_hole,
            self.body.has_naked_hole,
        )

    def _parts(self):
        return (self.var, self.body)


@dataclass(frozen=True, eq=False, repr=False)
class Quotation(Term):
    body: Term

    def __post_init__(self):
        if not self.body.ef_outside_holes:
            raise NotEvalFree(
                "cannot quote a term containing an evaluation outside holes"
            )
        self._seal(epsilon_ty(), self.body.eval_free, True, self.body.has_hole, False)

    @property
    def body_type(self) -> HolType:
        return self.body.ty

    def _parts(self):
        return (self.body,)


@dataclass(frozen=True, eq=False, repr=False)
class Hole(Term):
    content: Term
    slot_type: HolType

    def __post_init__(self):
        if self.content.ty != epsilon_ty():
            raise IllTyped("hole content must have type epsilon")
        if self.content.has_naked_hole:
            raise HoleOutsideQuotation("hole content contains a hole of its own")
        self._seal(
            self.slot_type, self.content.eval_free, True, True, True
        )

    def _parts(self):
        return (self.content, self.slot_type)


@dataclass(frozen=True, eq=False, repr=False)
class Evaluation(Term):
    content: Term
    result_type: HolType

    def __post_init__(self):
        if self.content.ty != epsilon_ty():
            raise IllTyped("evaluation content must have type epsilon")
        if self.content.has_naked_hole:
            raise HoleOutsideQuotation(
                "evaluation content contains a hole outside any quotation"
            )
        self._seal(self.result_type, False, False, self.content.has_hole, False)

    def _parts(self):
        return (self.content, self.result_type)


def type_of(t: Term) -> HolType:
    return t.ty


def is_eval_free(t: Term) -> bool:
    return t.eval_free


# ---------------------------------------------------------------------------
# free variables
# ---------------------------------------------------------------------------


def _quoted_live_frees(body: Term) -> frozenset:
    """Free variables reachable through holes inside a quotation body.

    Quoted binders are syntax, not binding structure, so nothing here is
    subtracted; nested quotations keep their holes live as well (the value of
    the outer quotation still varies with those contents).
    """
    if isinstance(body, Hole):
        return _frees(body.content)
    if isinstance(body, Application):
        return _quoted_live_frees(body.fn) | _quoted_live_frees(body.arg)
    if isinstance(body, Abstraction):
        return _quoted_live_frees(body.body)
    if isinstance(body, Quotation):
        return _quoted_live_frees(body.body)
    return frozenset()


def _frees(t: Term) -> frozenset:
    """Syntactic free-variable set, defined for every term.

    For an Evaluation node this is the free variables of the content term;
    note that for non-eval-free terms syntactic freeness understates semantic
    dependence, which is why the kernel's substitution has its own guards.
    """
    if isinstance(t, Variable):
        return frozenset((t,))
    if isinstance(t, Constant):
        return frozenset()
    if isinstance(t, Application):
        return _frees(t.fn) | _frees(t.arg)
    if isinstance(t, Abstraction):
        return _frees(t.body) - frozenset((t.var,))
    if isinstance(t, Quotation):
        if not t.has_hole:
            return frozenset()
        return _quoted_live_frees(t.body)
    if isinstance(t, Hole):
        return _frees(t.content)
    if isinstance(t, Evaluation):
        return _frees(t.content)
    raise TypeError(f"not a term: {t!r}")


def free_variables(t: Term) -> frozenset:
    """Free variables of an eval-free term.

    Quotations contribute nothing from their bodies except what is free in
    hole contents: a quoted occurrence names syntax, it does not use the
    variable.  Terms containing evaluations are rejected because "free in"
    is not a syntactic notion for them.
    """
    if not t.eval_free:
        raise NotEvalFree("free_variables is only defined for eval-free terms")
    return _frees(t)


def variables_in(t: Term) -> frozenset:
    """Every variable occurring anywhere in t (bound, free, or quoted)."""
    if isinstance(t, Variable):
        return frozenset((t,))
    if isinstance(t, Constant):
        return frozenset()
    if isinstance(t, Application):
        return variables_in(t.fn) | variables_in(t.arg)
    if isinstance(t, Abstraction):
        return variables_in(t.body) | frozenset((t.var,))
    if isinstance(t, (Quotation,)):
        return variables_in(t.body)
    if isinstance(t, (Hole, Evaluation)):
        return variables_in(t.content)
    raise TypeError(f"not a term: {t!r}")


def fresh_variant(x: Variable, avoid) -> Variable:
    """Prime x's name until it collides with nothing in ``avoid``.

    ``avoid`` is a collection of Variables; collision is by name so the
    result is also readable next to same-named variables of other types.
    """
    names = {v.name for v in avoid}
    name = x.name
    while name in names:
        name = name + "'"
    return x if name == x.name else Variable(name, x.ty)


def type_variables_in_term(t: Term) -> frozenset:
    if isinstance(t, (Variable, Constant)):
        return type_variables_in(t.ty)
    if isinstance(t, Application):
        return type_variables_in_term(t.fn) | type_variables_in_term(t.arg)
    if isinstance(t, Abstraction):
        return type_variables_in(t.var.ty) | type_variables_in_term(t.body)
    if isinstance(t, Quotation):
        return type_variables_in_term(t.body)
    if isinstance(t, Hole):
        return type_variables_in_term(t.content) | type_variables_in(t.slot_type)
    if isinstance(t, Evaluation):
        return type_variables_in_term(t.content) | type_variables_in(t.result_type)
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# alpha-equivalence
# ---------------------------------------------------------------------------


def _bound_index(v: Variable, env: tuple):
    # innermost binding of this exact variable, or None
    for i in range(len(env) - 1, -1, -1):
        if env[i] == v:
            return i
    return None


def _alpha(s: Term, t: Term, env_s: tuple, env_t: tuple) -> bool:
    if type(s) is not type(t):
        return False
    if isinstance(s, Variable):
        i = _bound_index(s, env_s)
        j = _bound_index(t, env_t)
        if i is None and j is None:
            return s == t
        return i == j
    if isinstance(s, Constant):
        return s == t
    if isinstance(s, Application):
        return _alpha(s.fn, t.fn, env_s, env_t) and _alpha(s.arg, t.arg, env_s, env_t)
    if isinstance(s, Abstraction):
        if s.var.ty != t.var.ty:
            return False
        if s.var != t.var:
            # Renaming a binder over a body whose value can depend on the
            # very name (through an evaluation) is not meaning-preserving,
            # so alpha-steps are only admitted across eval-free bodies.
            if not (s.body.eval_free and t.body.eval_free):
                return False
        return _alpha(s.body, t.body, env_s + (s.var,), env_t + (t.var,))
    if isinstance(s, Quotation):
        return _alpha_quoted(s.body, t.body, env_s, env_t)
    if isinstance(s, Hole):
        return s.slot_type == t.slot_type and _alpha(
            s.content, t.content, env_s, env_t
        )
    if isinstance(s, Evaluation):
        return s.result_type == t.result_type and _alpha(
            s.content, t.content, env_s, env_t
        )
    raise TypeError(f"not a term: {s!r}")


def _alpha_quoted(s: Term, t: Term, env_s: tuple, env_t: tuple) -> bool:
    # Quoted syntax is compared verbatim -- two quotations are equal only if
    # they quote the identical expression.  Hole contents are live and are
    # compared in the enclosing (unquoted) environment; quoted binders do
    # not extend it.
    if type(s) is not type(t):
        return False
    if isinstance(s, Hole):
        return s.slot_type == t.slot_type and _alpha(
            s.content, t.content, env_s, env_t
        )
    if isinstance(s, (Variable, Constant)):
        return s == t
    if isinstance(s, Application):
        return _alpha_quoted(s.fn, t.fn, env_s, env_t) and _alpha_quoted(
            s.arg, t.arg, env_s, env_t
        )
    if isinstance(s, Abstraction):
        return s.var == t.var and _alpha_quoted(s.body, t.body, env_s, env_t)
    if isinstance(s, Quotation):
        return _alpha_quoted(s.body, t.body, env_s, env_t)
    return s == t


def alpha_equivalent(s: Term, t: Term) -> bool:
    return s is t or _alpha(s, t, (), ())
