"""The proof kernel: theorems and the inference rules that produce them.

``Theorem`` is an opaque sequent.  Everything the checker believes reduces to
this module (plus the explicitly trusted conversions layered on top, which a
theorem records in its ``trusted`` field).  Each theorem also carries the set
of named axioms its derivation touched, so a result's assumptions are always
auditable.

Substitution here is not the textbook operation.  Because an evaluation
``eval c to ty`` re-reads the environment when the represented term is
produced, a variable can matter to a term without occurring in it — "x is not
free in t" stops being the right licence to move t under a binder, and "t has
no free x" stops being a licence to drop a substitution.  ``vsubst`` therefore
distinguishes syntactic absence (decisive only for eval-free terms) from
*proved* irrelevance: a registry of theorems of the form "x is not effective
in t" supplies the missing licences, and substitution fails loudly with the
conditions it would need rather than guessing.  Substitution into an
evaluation is never performed at all; the redex is kept suspended so the
equation can be discharged by inference later.
"""

from __future__ import annotations

from . import session
from .constructions import constructor_constant, term_to_construction, type_to_construction
from .errors import (
    ContainsHole,
    DuplicateName,
    FreeOccurrence,
    HasHoles,
    IllTyped,
    KernelError,
    NotAVariable,
    NotAtomicQuote,
    NotEvalFree,
    OpenBody,
    QuotationTypePolymorphism,
    SameVariable,
    SubstitutionBlocked,
    TypeMismatch,
    VariableCollision,
    WrongShape,
)
from .syntax import (
    Abstraction,
    Application,
    Constant,
    Evaluation,
    HolType,
    Hole,
    Quotation,
    Term,
    TypeApplication,
    TypeVariable,
    Variable,
    _frees,
    alpha_equivalent,
    bool_ty,
    epsilon_ty,
    fresh_variant,
    mk_fun,
    subst_type,
    type_variables_in,
    type_variables_in_term,
    variables_in,
)

__all__ = [
    "Theorem",
    "REFL", "TRANS", "MK_COMB", "ABS", "BETA", "ASSUME", "EQ_MP",
    "DEDUCT_ANTISYM", "INST", "INST_TYPE",
    "LAW_OF_QUO", "QUO_STEP", "VAR_DISQUO", "CONST_DISQUO", "DISQUO",
    "APP_SPLIT", "ABS_SPLIT", "QUOTABLE", "BETA_EVAL", "BETA_REVAL",
    "NOT_FREE_OR_EFFECTIVE_IN", "NEITHER_EFFECTIVE",
    "register_not_effective", "new_type_constructor", "new_constant",
    "new_axiom", "new_basic_definition",
    "vsubst", "inst_type",
    "mk_eq", "dest_eq", "mk_conj", "dest_conj", "mk_disj", "dest_disj",
    "mk_imp", "dest_imp", "mk_neg", "dest_neg", "mk_forall", "dest_forall",
    "mk_exists", "dest_exists", "mk_not_effective", "dest_not_effective",
    "mk_is_expr_type", "mk_is_free_in",
]

_MAKER = object()


class Theorem:
    """A derived sequent: hypotheses, conclusion, and its trust base."""

    __slots__ = ("hyps", "concl", "axioms", "trusted")

    def __init__(self, hyps, concl, axioms, trusted, token=None):
        if token is not _MAKER:
            raise KernelError("theorems can only be produced by inference rules")
        object.__setattr__(self, "hyps", hyps)
        object.__setattr__(self, "concl", concl)
        object.__setattr__(self, "axioms", axioms)
        object.__setattr__(self, "trusted", trusted)

    def __setattr__(self, name, value):
        raise AttributeError("theorems are immutable")

    def __repr__(self):
        try:
            from .frontend import print_term

            hyps = ", ".join(sorted(print_term(h) for h in self.hyps))
            sep = " " if hyps else ""
            return f"{hyps}{sep}|- {print_term(self.concl)}"
        except Exception:
            return f"<Theorem at {id(self):#x}>"


def _thm(hyps, concl, axioms=frozenset(), trusted=frozenset()) -> Theorem:
    hyps = frozenset(hyps)
    if concl.ty != bool_ty():
        raise IllTyped("a conclusion must have type bool")
    if concl.has_naked_hole:
        raise ContainsHole("a conclusion cannot contain a hole outside quotations")
    for h in hyps:
        if h.ty != bool_ty():
            raise IllTyped("a hypothesis must have type bool")
        if h.has_naked_hole:
            raise ContainsHole("a hypothesis cannot contain a hole outside quotations")
    return Theorem(hyps, concl, frozenset(axioms), frozenset(trusted), _MAKER)


def _prov(*thms):
    ax = frozenset()
    tr = frozenset()
    for t in thms:
        ax |= t.axioms
        tr |= t.trusted
    return ax, tr


def trusted_theorem(concl: Term, tag: str) -> Theorem:
    """Create a theorem certified by a named trusted procedure.

    This is the seam between the kernel and the conversions that decide
    syntactic predicates by computation; every theorem built here carries the
    procedure's name in its ``trusted`` set forever.
    """
    return _thm((), concl, trusted=frozenset((tag,)))


# ---------------------------------------------------------------------------
# term builders and destructors for the logical signature
# ---------------------------------------------------------------------------


def mk_eq(l: Term, r: Term) -> Term:
    eq = Constant("=", mk_fun(l.ty, mk_fun(l.ty, bool_ty())))
    return Application(Application(eq, l), r)


def _dest_binop(name: str, t: Term):
    if (
        isinstance(t, Application)
        and isinstance(t.fn, Application)
        and isinstance(t.fn.fn, Constant)
        and t.fn.fn.name == name
    ):
        return t.fn.arg, t.arg
    raise WrongShape(f"expected an application of {name!r}")


def dest_eq(t: Term):
    return _dest_binop("=", t)


def mk_bin(name: str, l: Term, r: Term) -> Term:
    c = Constant(name, mk_fun(bool_ty(), mk_fun(bool_ty(), bool_ty())))
    return Application(Application(c, l), r)


def mk_conj(l, r):
    return mk_bin("/\\", l, r)


def dest_conj(t):
    return _dest_binop("/\\", t)


def mk_disj(l, r):
    return mk_bin("\\/", l, r)


def dest_disj(t):
    return _dest_binop("\\/", t)


def mk_imp(l, r):
    return mk_bin("==>", l, r)


def dest_imp(t):
    return _dest_binop("==>", t)


def mk_neg(t: Term) -> Term:
    return Application(Constant("~", mk_fun(bool_ty(), bool_ty())), t)


def dest_neg(t: Term) -> Term:
    if isinstance(t, Application) and isinstance(t.fn, Constant) and t.fn.name == "~":
        return t.arg
    raise WrongShape("expected a negation")


def _mk_binder(name: str, v: Variable, body: Term) -> Term:
    c = Constant(name, mk_fun(mk_fun(v.ty, bool_ty()), bool_ty()))
    return Application(c, Abstraction(v, body))


def mk_forall(v, body):
    return _mk_binder("!", v, body)


def mk_exists(v, body):
    return _mk_binder("?", v, body)


def _dest_binder(name: str, t: Term):
    if (
        isinstance(t, Application)
        and isinstance(t.fn, Constant)
        and t.fn.name == name
        and isinstance(t.arg, Abstraction)
    ):
        return t.arg.var, t.arg.body
    raise WrongShape(f"expected a {name!r} binder applied to an abstraction")


def dest_forall(t):
    return _dest_binder("!", t)


def dest_exists(t):
    return _dest_binder("?", t)


def mk_is_expr_type(c: Term, ty: HolType) -> Term:
    from .syntax import type_ty

    k = Constant("isExprType", mk_fun(epsilon_ty(), mk_fun(type_ty(), bool_ty())))
    return Application(Application(k, c), type_to_construction(ty))


def mk_is_free_in(xg: Term, bg: Term) -> Term:
    k = Constant("isFreeIn", mk_fun(epsilon_ty(), mk_fun(epsilon_ty(), bool_ty())))
    return Application(Application(k, xg), bg)


def mk_not_effective(x: Variable, t: Term) -> Term:
    """The formula asserting that substituting anything for x leaves t alone.

    Spelled with a fresh witness variable:  ~(?y. ~((\\x. t) y = t)).
    """
    y = fresh_variant(Variable("y", x.ty), _frees(t) | {x})
    redex = Application(Abstraction(x, t), y)
    return mk_neg(mk_exists(y, mk_neg(mk_eq(redex, t))))


def dest_not_effective(p: Term):
    body = dest_neg(p)
    y, inner = dest_exists(body)
    l, r = dest_eq(dest_neg(inner))
    if not (isinstance(l, Application) and isinstance(l.fn, Abstraction)):
        raise WrongShape("not a not-effective statement: missing applied abstraction")
    if l.arg != y:
        raise WrongShape("not a not-effective statement: witness variable mismatch")
    x = l.fn.var
    t = l.fn.body
    if t != r:
        raise WrongShape("not a not-effective statement: body and right side differ")
    if x.ty != y.ty:
        raise WrongShape("not a not-effective statement: witness has the wrong type")
    if x == y or y in _frees(t):
        raise WrongShape("not a not-effective statement: witness is not fresh")
    return x, t


# ---------------------------------------------------------------------------
# substitution
# ---------------------------------------------------------------------------


def vsubst(pairs, t: Term, registry=None, used=None) -> Term:
    """Simultaneous substitution of terms for variables.

    ``pairs`` is an iterable of (Variable, Term) with matching types.  The
    active session's not-effective registry supplies semantic licences where
    syntax alone cannot justify a step; theorems consulted along the way are
    appended to ``used`` so callers can track what the result depends on.
    """
    theta = {}
    for x, tm in dict(pairs).items() if isinstance(pairs, dict) else pairs:
        if not isinstance(x, Variable):
            raise NotAVariable(f"substitution target is not a variable: {x!r}")
        if not isinstance(tm, Term):
            raise KernelError(f"substitution payload is not a term: {tm!r}")
        if tm.ty != x.ty:
            raise TypeMismatch(
                f"cannot substitute a term of type {tm.ty!r} for {x.name}:{x.ty!r}"
            )
        if tm.has_naked_hole:
            raise ContainsHole("cannot substitute a term with a hole outside quotations")
        if tm == x:
            continue
        if x in theta and theta[x] != tm:
            raise KernelError(f"conflicting substitutions for {x.name}")
        theta[x] = tm
    if not theta:
        return t
    if registry is None:
        registry = session.current().nei_registry
    if used is None:
        used = []
    return _vsubst(t, theta, registry, used)


def _vsubst(t: Term, theta: dict, registry, used) -> Term:
    if isinstance(t, Variable):
        return theta.get(t, t)
    if isinstance(t, Constant):
        return t
    if isinstance(t, Application):
        fn = _vsubst(t.fn, theta, registry, used)
        arg = _vsubst(t.arg, theta, registry, used)
        return t if fn is t.fn and arg is t.arg else Application(fn, arg)
    if isinstance(t, Abstraction):
        return _vsubst_abs(t, theta, registry, used)
    if isinstance(t, Quotation):
        # Quoted syntax is a fixed value; only hole contents are live.
        if not t.has_hole:
            return t
        body = _vsubst_quoted(t.body, theta, registry, used)
        return t if body is t.body else Quotation(body)
    if isinstance(t, Hole):
        c = _vsubst(t.content, theta, registry, used)
        return t if c is t.content else Hole(c, t.slot_type)
    if isinstance(t, Evaluation):
        return _vsubst_eval(t, theta, registry, used)
    raise KernelError(f"not a term: {t!r}")


def _vsubst_quoted(b: Term, theta: dict, registry, used) -> Term:
    # Binders inside a quotation are part of the quoted syntax; they bind
    # nothing in the live hole contents, so the substitution passes through
    # them untouched and capture is impossible.
    if isinstance(b, Hole):
        c = _vsubst(b.content, theta, registry, used)
        return b if c is b.content else Hole(c, b.slot_type)
    if isinstance(b, Application):
        fn = _vsubst_quoted(b.fn, theta, registry, used)
        arg = _vsubst_quoted(b.arg, theta, registry, used)
        return b if fn is b.fn and arg is b.arg else Application(fn, arg)
    if isinstance(b, Abstraction):
        body = _vsubst_quoted(b.body, theta, registry, used)
        return b if body is b.body else Abstraction(b.var, body)
    if isinstance(b, Quotation):
        body = _vsubst_quoted(b.body, theta, registry, used)
        return b if body is b.body else Quotation(body)
    return b


def _vsubst_abs(t: Abstraction, theta: dict, registry, used) -> Term:
    y, s = t.var, t.body
    live = {x: tm for x, tm in theta.items() if x != y}
    if not live:
        return t
    keep = {}
    problematic = []
    for x, tm in live.items():
        # Is the binding a no-op on the body?  Syntactic absence decides only
        # for eval-free bodies; otherwise a proved not-effective fact does.
        if s.eval_free:
            if x not in _frees(s):
                continue
        else:
            fact = registry.get((x, s))
            if fact is not None:
                used.append(fact)
                continue
        # The binding acts.  Moving tm under the binder is safe when tm
        # provably cannot vary with y.
        if tm.eval_free and y not in _frees(tm):
            keep[x] = tm
            continue
        fact = registry.get((y, tm))
        if fact is not None:
            used.append(fact)
            keep[x] = tm
            continue
        problematic.append((x, tm))
    if not keep and not problematic:
        return t
    if problematic:
        renamable = s.eval_free and all(
            tm.eval_free for tm in keep.values()
        ) and all(tm.eval_free for _, tm in problematic)
        if renamable:
            avoid = set(variables_in(s)) | {y}
            for x, tm in live.items():
                avoid |= _frees(tm)
                avoid.add(x)
            y2 = fresh_variant(y, avoid)
            s2 = _vsubst(s, {y: y2}, registry, used)
            rest = dict(keep)
            rest.update(problematic)
            return Abstraction(y2, _vsubst(s2, rest, registry, used))
        conds = []
        for x, tm in problematic:
            conds.append((y, tm))
            conds.append((x, s))
        raise SubstitutionBlocked(
            "substitution under a binder needs a not-effective fact "
            "for: " + "; ".join(f"({v.name}, {u!r})" for v, u in conds),
            needed=conds,
        )
    body = _vsubst(s, keep, registry, used)
    return t if body is s else Abstraction(y, body)


def _vsubst_eval(t: Evaluation, theta: dict, registry, used) -> Term:
    # Substitution never enters an evaluation: the represented term is only
    # known once the content is computed, so the substitution is suspended as
    # an explicit redex for the inference rules to discharge.
    items = list(theta.items())
    if len(items) == 1:
        x, tm = items[0]
        return Application(Abstraction(x, t), tm)
    order = []
    remaining = items
    while remaining:
        pick = None
        for i, (x, tm) in enumerate(remaining):
            others = [u for j, (_, u) in enumerate(remaining) if j != i]
            if all(u.eval_free for u in others) and all(
                x not in _frees(u) for u in others
            ):
                pick = i
                break
        if pick is None:
            conds = [(x, tm) for x, tm in remaining]
            raise SubstitutionBlocked(
                "no sound nesting order for a suspended multi-variable "
                "substitution into an evaluation",
                needed=conds,
            )
        order.append(remaining[pick])
        remaining = remaining[:pick] + remaining[pick + 1 :]
    core: Term = t
    for x, tm in reversed(order):
        core = Application(Abstraction(x, core), tm)
    return core


# ---------------------------------------------------------------------------
# type instantiation
# ---------------------------------------------------------------------------


def inst_type(pairs, t: Term) -> Term:
    env = {}
    for tv, ty in dict(pairs).items() if isinstance(pairs, dict) else pairs:
        if not isinstance(tv, TypeVariable):
            raise TypeMismatch(f"not a type variable: {tv!r}")
        if not isinstance(ty, HolType):
            raise TypeMismatch(f"not a type: {ty!r}")
        if ty != tv:
            env[tv] = ty
    if not env:
        return t
    return _inst_type(t, env)


def _inst_type(t: Term, env: dict) -> Term:
    if isinstance(t, Variable):
        ty = subst_type(t.ty, env)
        return t if ty == t.ty else Variable(t.name, ty)
    if isinstance(t, Constant):
        ty = subst_type(t.ty, env)
        return t if ty == t.ty else Constant(t.name, ty)
    if isinstance(t, Application):
        fn = _inst_type(t.fn, env)
        arg = _inst_type(t.arg, env)
        return t if fn is t.fn and arg is t.arg else Application(fn, arg)
    if isinstance(t, Abstraction):
        y = t.var
        y2 = _inst_type(y, env)
        clash = any(
            v != y and _inst_type(v, env) == y2 for v in _frees(t.body)
        )
        if clash:
            if not t.body.eval_free:
                raise VariableCollision(
                    f"instantiating types merges {y.name} with a free variable "
                    "of a body containing evaluations"
                )
            yr = fresh_variant(y, variables_in(t.body))
            body = vsubst(((y, yr),), t.body, registry={}, used=[])
            return _inst_type(Abstraction(yr, body), env)
        body = _inst_type(t.body, env)
        return t if y2 is y and body is t.body else Abstraction(y2, body)
    if isinstance(t, Quotation):
        # A quotation is a literal: its value names one fixed expression, so
        # there is nothing type-generic inside to instantiate.  Rather than
        # silently produce a different literal, refuse.
        touched = type_variables_in_term(t) & set(env)
        if touched:
            names = ", ".join(sorted("'" + tv.name for tv in touched))
            raise QuotationTypePolymorphism(
                f"type instantiation of {names} would alter a quotation"
            )
        return t
    if isinstance(t, Hole):
        c = _inst_type(t.content, env)
        ty = subst_type(t.slot_type, env)
        return t if c is t.content and ty == t.slot_type else Hole(c, ty)
    if isinstance(t, Evaluation):
        c = _inst_type(t.content, env)
        ty = subst_type(t.result_type, env)
        return t if c is t.content and ty == t.result_type else Evaluation(c, ty)
    raise KernelError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# the classical core rules
# ---------------------------------------------------------------------------


def REFL(t: Term) -> Theorem:
    if t.has_naked_hole:
        raise ContainsHole("cannot state equality of a term with naked holes")
    return _thm((), mk_eq(t, t))


def TRANS(th1: Theorem, th2: Theorem) -> Theorem:
    l1, r1 = dest_eq(th1.concl)
    l2, r2 = dest_eq(th2.concl)
    if not alpha_equivalent(r1, l2):
        raise WrongShape("the middle terms of a transitivity step differ")
    ax, tr = _prov(th1, th2)
    return _thm(th1.hyps | th2.hyps, mk_eq(l1, r2), ax, tr)


def MK_COMB(thf: Theorem, tha: Theorem) -> Theorem:
    lf, rf = dest_eq(thf.concl)
    la, ra = dest_eq(tha.concl)
    ax, tr = _prov(thf, tha)
    return _thm(
        thf.hyps | tha.hyps,
        mk_eq(Application(lf, la), Application(rf, ra)),
        ax,
        tr,
    )


def ABS(x: Variable, th: Theorem) -> Theorem:
    if not isinstance(x, Variable):
        raise NotAVariable("ABS needs a variable to abstract")
    l, r = dest_eq(th.concl)
    extra = []
    reg = session.current().nei_registry
    for h in th.hyps:
        if x in _frees(h):
            raise FreeOccurrence(
                f"cannot abstract over {x.name}: it occurs free in a hypothesis"
            )
        if not h.eval_free:
            fact = reg.get((x, h))
            if fact is None:
                raise SubstitutionBlocked(
                    f"a hypothesis contains an evaluation; abstraction over "
                    f"{x.name} needs a proof that it is not effective there",
                    needed=((x, h),),
                )
            extra.append(fact)
    ax, tr = _prov(th, *extra)
    return _thm(th.hyps, mk_eq(Abstraction(x, l), Abstraction(x, r)), ax, tr)


def BETA(t: Term) -> Theorem:
    # (\x. b) x = b, for any body: value-level application at the very
    # variable the binder names changes nothing, so no substitution is needed
    # and bodies containing evaluations are fine.
    if not (
        isinstance(t, Application)
        and isinstance(t.fn, Abstraction)
        and t.arg == t.fn.var
    ):
        raise WrongShape("BETA wants a redex whose argument is the bound variable")
    if t.has_naked_hole:
        raise ContainsHole("cannot state equality of a term with naked holes")
    return _thm((), mk_eq(t, t.fn.body))


def ASSUME(p: Term) -> Theorem:
    if p.ty != bool_ty():
        raise IllTyped("only a boolean term can be assumed")
    if p.has_naked_hole:
        raise ContainsHole("cannot assume a term with naked holes")
    return _thm((p,), p)


def EQ_MP(theq: Theorem, th: Theorem) -> Theorem:
    l, r = dest_eq(theq.concl)
    if not alpha_equivalent(l, th.concl):
        raise WrongShape("the equation's left side does not match the theorem")
    ax, tr = _prov(theq, th)
    return _thm(theq.hyps | th.hyps, r, ax, tr)


def DEDUCT_ANTISYM(th1: Theorem, th2: Theorem) -> Theorem:
    hyps = frozenset(
        h for h in th1.hyps if not alpha_equivalent(h, th2.concl)
    ) | frozenset(h for h in th2.hyps if not alpha_equivalent(h, th1.concl))
    ax, tr = _prov(th1, th2)
    return _thm(hyps, mk_eq(th1.concl, th2.concl), ax, tr)


def INST(pairs, th: Theorem) -> Theorem:
    reg = session.current().nei_registry
    used = []
    concl = vsubst(pairs, th.concl, reg, used)
    hyps = [vsubst(pairs, h, reg, used) for h in th.hyps]
    ax, tr = _prov(th, *used)
    return _thm(hyps, concl, ax, tr)


def INST_TYPE(pairs, th: Theorem) -> Theorem:
    concl = inst_type(pairs, th.concl)
    hyps = [inst_type(pairs, h) for h in th.hyps]
    return _thm(hyps, concl, th.axioms, th.trusted)


# ---------------------------------------------------------------------------
# quotation and evaluation rules
# ---------------------------------------------------------------------------


def _want_quotation(q) -> Quotation:
    if not isinstance(q, Quotation):
        raise WrongShape("expected a quotation")
    if q.has_hole:
        raise HasHoles("this rule is only defined for hole-free quotations")
    return q


def LAW_OF_QUO(q: Term) -> Theorem:
    """A quotation equals the construction denoting its body, in one step."""
    q = _want_quotation(q)
    return _thm((), mk_eq(q, term_to_construction(q.body)))


def QUO_STEP(q: Term) -> Theorem:
    """Unfold one layer of a quotation into syntax constructors."""
    q = _want_quotation(q)
    b = q.body
    if isinstance(b, Application):
        rhs = Application(
            Application(constructor_constant("App"), Quotation(b.fn)),
            Quotation(b.arg),
        )
    elif isinstance(b, Abstraction):
        rhs = Application(
            Application(constructor_constant("Abs"), Quotation(b.var)),
            Quotation(b.body),
        )
    elif isinstance(b, Quotation):
        rhs = Application(constructor_constant("Quo"), Quotation(b.body))
    else:
        rhs = term_to_construction(b)
    return _thm((), mk_eq(q, rhs))


def VAR_DISQUO(q: Term) -> Theorem:
    if not isinstance(q, Quotation) or not isinstance(q.body, Variable):
        raise NotAtomicQuote("expected the quotation of a variable")
    return _thm((), mk_eq(Evaluation(q, q.body.ty), q.body))


def CONST_DISQUO(q: Term) -> Theorem:
    if not isinstance(q, Quotation) or not isinstance(q.body, Constant):
        raise NotAtomicQuote("expected the quotation of a constant")
    return _thm((), mk_eq(Evaluation(q, q.body.ty), q.body))


def DISQUO(q: Term, ty: HolType | None = None) -> Theorem:
    if not isinstance(q, Quotation) or not isinstance(q.body, (Variable, Constant)):
        raise NotAtomicQuote("expected the quotation of a variable or constant")
    if ty is not None and ty != q.body.ty:
        raise TypeMismatch(
            f"stated type {ty!r} differs from the quoted atom's type {q.body.ty!r}"
        )
    if isinstance(q.body, Variable):
        return VAR_DISQUO(q)
    return CONST_DISQUO(q)


def _want_epsilon(t: Term, role: str) -> None:
    if t.ty != epsilon_ty():
        raise IllTyped(f"{role} must have type epsilon")
    if t.has_naked_hole:
        raise ContainsHole(f"{role} contains a hole outside quotations")


def APP_SPLIT(a: Term, b: Term, alpha: HolType, beta: HolType) -> Theorem:
    """Evaluating a syntactic application is applying the evaluations."""
    _want_epsilon(a, "the operator construction")
    _want_epsilon(b, "the operand construction")
    ante = mk_conj(
        mk_is_expr_type(a, mk_fun(alpha, beta)), mk_is_expr_type(b, alpha)
    )
    lhs = Evaluation(
        Application(Application(constructor_constant("App"), a), b), beta
    )
    rhs = Application(Evaluation(a, mk_fun(alpha, beta)), Evaluation(b, alpha))
    return _thm((), mk_imp(ante, mk_eq(lhs, rhs)))


def ABS_SPLIT(x: Variable, a: Term, beta: HolType) -> Theorem:
    """Evaluating a syntactic abstraction is abstracting the evaluation.

    Sound only when the bound variable cannot leak into the body's syntax:
    the antecedent demands the variable not be free in the represented body.
    """
    if not isinstance(x, Variable):
        raise NotAVariable("ABS_SPLIT needs the variable being bound")
    _want_epsilon(a, "the body construction")
    if not a.eval_free:
        raise NotEvalFree("the body construction must be eval-free to be quoted")
    ante = mk_conj(
        mk_is_expr_type(a, beta),
        mk_neg(mk_is_free_in(Quotation(x), Quotation(a))),
    )
    lhs = Evaluation(
        Application(Application(constructor_constant("Abs"), Quotation(x)), a),
        mk_fun(x.ty, beta),
    )
    rhs = Abstraction(x, Evaluation(a, beta))
    return _thm((), mk_imp(ante, mk_eq(lhs, rhs)))


def QUOTABLE(a: Term) -> Theorem:
    """Evaluating a wrapped construction at type epsilon unwraps it."""
    _want_epsilon(a, "the construction")
    ante = mk_is_expr_type(a, epsilon_ty())
    lhs = Evaluation(Application(constructor_constant("Quo"), a), epsilon_ty())
    return _thm((), mk_imp(ante, mk_eq(lhs, a)))


def BETA_EVAL(x: Variable, b: Term, beta: HolType) -> Theorem:
    """(\\x. eval b to beta) x  =  eval b to beta.

    The trivial-instantiation law for suspended substitutions; b may itself
    contain evaluations.
    """
    if not isinstance(x, Variable):
        raise NotAVariable("BETA_EVAL needs the bound variable")
    _want_epsilon(b, "the evaluated construction")
    ev = Evaluation(b, beta)
    return _thm((), mk_eq(Application(Abstraction(x, ev), x), ev))


def BETA_REVAL(x: Variable, b: Term, a: Term, beta: HolType) -> Theorem:
    """Push a suspended substitution inside an evaluation — guardedly.

    The antecedent requires (i) the substituted construction to denote a term
    of the evaluation's type and (ii) the bound variable not to be free in
    the syntax denoted by ``(\\x. b) a``.  Without (ii) the substitution would
    act a second time on the syntax the evaluation produces.
    """
    if not isinstance(x, Variable):
        raise NotAVariable("BETA_REVAL needs the bound variable")
    _want_epsilon(b, "the evaluated construction")
    if a.ty != x.ty:
        raise TypeMismatch("the argument's type must match the bound variable's")
    redex = Application(Abstraction(x, b), a)
    if not redex.eval_free:
        raise NotEvalFree(
            "the applied abstraction must be eval-free so it can be quoted"
        )
    ante = mk_conj(
        mk_is_expr_type(redex, beta),
        mk_neg(mk_is_free_in(Quotation(x), Quotation(redex))),
    )
    lhs = Application(Abstraction(x, Evaluation(b, beta)), a)
    rhs = Evaluation(redex, beta)
    return _thm((), mk_imp(ante, mk_eq(lhs, rhs)))


def NOT_FREE_OR_EFFECTIVE_IN(x: Variable, b: Term) -> Theorem:
    """For eval-free b with no free x, substituting for x cannot change b."""
    if not isinstance(x, Variable):
        raise NotAVariable("expected a variable")
    if not b.eval_free:
        raise NotEvalFree(
            "syntactic absence only implies ineffectiveness for eval-free terms"
        )
    if x in _frees(b):
        raise FreeOccurrence(f"{x.name} is free in the term")
    return _thm((), mk_not_effective(x, b))


def NEITHER_EFFECTIVE(x: Variable, y: Variable, a: Term, b: Term) -> Theorem:
    """Commute an application past an inner binder when one side is inert.

    (\\x. \\y. b) a = \\y. ((\\x. b) a)  provided y is not effective in a or
    x is not effective in b (either licence suffices, hence the disjunction).
    """
    if not isinstance(x, Variable) or not isinstance(y, Variable):
        raise NotAVariable("expected variables")
    if x == y:
        raise SameVariable("the two bound variables must differ")
    if a.ty != x.ty:
        raise TypeMismatch("the argument's type must match the outer variable's")
    if a.has_naked_hole or b.has_naked_hole:
        raise ContainsHole("arguments cannot contain holes outside quotations")
    ante = mk_disj(mk_not_effective(y, a), mk_not_effective(x, b))
    lhs = Application(Abstraction(x, Abstraction(y, b)), a)
    rhs = Abstraction(y, Application(Abstraction(x, b), a))
    return _thm((), mk_imp(ante, mk_eq(lhs, rhs)))


# ---------------------------------------------------------------------------
# session-extending operations
# ---------------------------------------------------------------------------


def register_not_effective(th: Theorem) -> Theorem:
    """Admit a proved not-effective fact into the substitution registry."""
    if th.hyps:
        raise WrongShape("only a hypothesis-free theorem can be registered")
    x, t = dest_not_effective(th.concl)
    session.current().nei_registry[(x, t)] = th
    return th


def new_type_constructor(name: str, arity: int) -> None:
    s = session.current()
    if name in s.type_arities:
        raise DuplicateName(f"type constructor already registered: {name!r}")
    if not isinstance(arity, int) or arity < 0:
        raise KernelError("arity must be a non-negative integer")
    s.type_arities[name] = arity


def new_constant(name: str, ty: HolType) -> Constant:
    s = session.current()
    if name.startswith('"'):
        raise DuplicateName("names starting with a quote are reserved for literals")
    if name in s.constants:
        raise DuplicateName(f"constant already registered: {name!r}")
    s.constants[name] = ty
    return Constant(name, ty)


def new_axiom(name: str, p: Term) -> Theorem:
    s = session.current()
    if name in s.axioms:
        raise DuplicateName(f"axiom already registered: {name!r}")
    if p.ty != bool_ty():
        raise IllTyped("an axiom must be a boolean term")
    if p.has_naked_hole:
        raise ContainsHole("an axiom cannot contain a hole outside quotations")
    th = _thm((), p, axioms=frozenset((name,)))
    s.axioms[name] = th
    return th


def new_basic_definition(name: str, body: Term) -> Theorem:
    s = session.current()
    if not body.eval_free:
        raise NotEvalFree("a definition body must be eval-free")
    if body.has_naked_hole:
        raise ContainsHole("a definition body cannot contain naked holes")
    if _frees(body):
        names = ", ".join(sorted(v.name for v in _frees(body)))
        raise OpenBody(f"definition body has free variables: {names}")
    if not type_variables_in_term(body) <= type_variables_in(body.ty):
        raise IllTyped("a type variable of the body escapes the defined constant's type")
    c = new_constant(name, body.ty)
    th = _thm((), mk_eq(c, body))
    s.definitions[name] = th
    return th
