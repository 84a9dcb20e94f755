"""Term/type formation, equality, free variables, and alpha-equivalence."""

import pytest

from cqe.errors import (
    HoleOutsideQuotation,
    IllTyped,
    NotAVariable,
    NotEvalFree,
    UnknownName,
)
from cqe.syntax import (
    Abstraction,
    Application,
    Constant,
    Evaluation,
    Hole,
    Quotation,
    TypeApplication,
    TypeVariable,
    Variable,
    alpha_equivalent,
    bool_ty,
    dest_fun,
    epsilon_ty,
    free_variables,
    fresh_variant,
    is_fun,
    match_type,
    mk_fun,
    num_ty,
    subst_type,
    type_variables_in,
    type_variables_in_term,
    variables_in,
)

from genterms import TermGen


def tv(name="x", ty=None):
    return Variable(name, ty or bool_ty())


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------


def test_type_arity_enforced():
    with pytest.raises(IllTyped):
        TypeApplication("bool", (bool_ty(),))
    with pytest.raises(IllTyped):
        TypeApplication("fun", (bool_ty(),))
    with pytest.raises(UnknownName):
        TypeApplication("mystery", ())


def test_fun_type_helpers():
    f = mk_fun(bool_ty(), num_ty())
    assert is_fun(f) and dest_fun(f) == (bool_ty(), num_ty())
    assert not is_fun(bool_ty())
    with pytest.raises(IllTyped):
        dest_fun(bool_ty())


def test_match_and_subst_type():
    a = TypeVariable("'A")
    generic = mk_fun(a, mk_fun(a, bool_ty()))
    env = {}
    assert match_type(generic, mk_fun(num_ty(), mk_fun(num_ty(), bool_ty())), env)
    assert env[a] == num_ty()
    assert not match_type(generic, mk_fun(num_ty(), mk_fun(bool_ty(), bool_ty())), {})
    assert subst_type(generic, {a: num_ty()}) == mk_fun(
        num_ty(), mk_fun(num_ty(), bool_ty())
    )
    assert type_variables_in(generic) == frozenset({a})


# ---------------------------------------------------------------------------
# term formation
# ---------------------------------------------------------------------------


def test_application_requires_matching_types():
    f = tv("f", mk_fun(bool_ty(), bool_ty()))
    with pytest.raises(IllTyped):
        Application(f, tv("n", num_ty()))
    with pytest.raises(IllTyped):
        Application(tv("p"), tv("q"))  # not a function at all
    assert Application(f, tv("p")).ty == bool_ty()


def test_abstraction_binder_must_be_variable():
    with pytest.raises(NotAVariable):
        Abstraction(Constant("T", bool_ty()), tv("p"))
    lam = Abstraction(tv("x"), tv("x"))
    assert lam.ty == mk_fun(bool_ty(), bool_ty())


def test_constant_instances_checked_against_signature():
    with pytest.raises(UnknownName):
        Constant("no_such_constant", bool_ty())
    with pytest.raises(IllTyped):
        Constant("T", num_ty())
    # generic constants admit any instance of their generic type
    eq_num = Constant("=", mk_fun(num_ty(), mk_fun(num_ty(), bool_ty())))
    assert eq_num.ty == mk_fun(num_ty(), mk_fun(num_ty(), bool_ty()))
    with pytest.raises(IllTyped):
        Constant("=", mk_fun(num_ty(), mk_fun(bool_ty(), bool_ty())))


def test_name_literals_are_str_typed():
    lit = Constant('"anything at all"', TypeApplication("str", ()))
    assert lit.name == '"anything at all"'
    with pytest.raises(IllTyped):
        Constant('"anything"', bool_ty())


def test_quotation_rejects_evaluations_outside_holes():
    ev = Evaluation(tv("c", epsilon_ty()), bool_ty())
    with pytest.raises(NotEvalFree):
        Quotation(ev)
    # but an evaluation inside a hole's content is fine
    q = Quotation(Hole(Evaluation(tv("c", epsilon_ty()), epsilon_ty()), bool_ty()))
    assert q.ty == epsilon_ty() and q.has_hole


def test_hole_and_evaluation_content_must_be_epsilon():
    with pytest.raises(IllTyped):
        Hole(tv("p"), bool_ty())
    with pytest.raises(IllTyped):
        Evaluation(tv("p"), bool_ty())
    with pytest.raises(HoleOutsideQuotation):
        Evaluation(Hole(tv("c", epsilon_ty()), epsilon_ty()), bool_ty())


def test_quotation_body_type():
    q = Quotation(tv("p"))
    assert q.ty == epsilon_ty() and q.body_type == bool_ty()


# ---------------------------------------------------------------------------
# equality and hashing
# ---------------------------------------------------------------------------


def test_structural_equality_and_hash():
    a = Application(Abstraction(tv("x"), tv("x")), Constant("T", bool_ty()))
    b = Application(Abstraction(tv("x"), tv("x")), Constant("T", bool_ty()))
    assert a == b and hash(a) == hash(b)
    assert a != Application(Abstraction(tv("y"), tv("y")), Constant("T", bool_ty()))
    assert tv("x") != tv("x", num_ty())
    assert tv("x") != Constant("T", bool_ty())


def test_generated_terms_equal_their_rebuilds():
    gen = TermGen(seed=7)
    rebuilt = TermGen(seed=7)
    for _ in range(60):
        assert gen.term(depth=3) == rebuilt.term(depth=3)


# ---------------------------------------------------------------------------
# free variables
# ---------------------------------------------------------------------------


def test_free_variables_basics():
    x, y = tv("x"), tv("y")
    assert free_variables(Application(Application(Constant("/\\", mk_fun(bool_ty(), mk_fun(bool_ty(), bool_ty()))), x), y)) == {x, y}
    assert free_variables(Abstraction(x, x)) == frozenset()
    assert free_variables(Abstraction(x, y)) == {y}


def test_quotation_frees_are_hole_contents_only():
    x = tv("x")
    c = tv("c", epsilon_ty())
    # a quoted variable is syntax, not a use
    assert free_variables(Quotation(x)) == frozenset()
    # hole contents stay live, at any quotation depth
    assert free_variables(Quotation(Hole(c, bool_ty()))) == {c}
    deep = Quotation(Quotation(Hole(c, bool_ty())))
    assert free_variables(deep) == {c}
    # quoted binders bind nothing in hole contents
    shadow = Quotation(Abstraction(c, Hole(c, bool_ty())))
    assert free_variables(shadow) == {c}


def test_free_variables_refuses_evaluations():
    ev = Evaluation(tv("c", epsilon_ty()), bool_ty())
    with pytest.raises(NotEvalFree):
        free_variables(ev)


def test_variables_in_sees_quoted_occurrences():
    x = tv("x")
    q = Quotation(Abstraction(x, x))
    assert x in variables_in(q)
    assert free_variables(q) == frozenset()


def test_fresh_variant_primes():
    x = tv("x")
    assert fresh_variant(x, {x}).name == "x'"
    assert fresh_variant(x, {x, tv("x'")}).name == "x''"
    assert fresh_variant(x, set()) == x


def test_type_variables_in_term():
    a = TypeVariable("'A")
    v = tv("x", a)
    assert type_variables_in_term(Abstraction(v, v)) == frozenset({a})
    assert type_variables_in_term(tv("x")) == frozenset()


# ---------------------------------------------------------------------------
# alpha-equivalence
# ---------------------------------------------------------------------------


def test_alpha_renames_eval_free_binders():
    lam_x = Abstraction(tv("x"), tv("x"))
    lam_y = Abstraction(tv("y"), tv("y"))
    assert alpha_equivalent(lam_x, lam_y)
    assert not alpha_equivalent(lam_x, Abstraction(tv("y"), tv("x")))


def test_alpha_capture_respected():
    # \x. \y. x  vs  \y. \y. y : the inner occurrence binds differently
    t1 = Abstraction(tv("x"), Abstraction(tv("y"), tv("x")))
    t2 = Abstraction(tv("y"), Abstraction(tv("y"), tv("y")))
    assert not alpha_equivalent(t1, t2)
    t3 = Abstraction(tv("a"), Abstraction(tv("b"), tv("a")))
    assert alpha_equivalent(t1, t3)


def test_alpha_strict_inside_quotations():
    qx = Quotation(Abstraction(tv("x"), tv("x")))
    qy = Quotation(Abstraction(tv("y"), tv("y")))
    assert not alpha_equivalent(qx, qy)
    assert alpha_equivalent(qx, Quotation(Abstraction(tv("x"), tv("x"))))


def test_alpha_of_evaluations_requires_identical_binders():
    c = tv("c", epsilon_ty())
    ev = Evaluation(c, bool_ty())
    same = alpha_equivalent(Abstraction(tv("n", epsilon_ty()), ev), Abstraction(tv("n", epsilon_ty()), ev))
    assert same
    # renaming a binder over an evaluation is not a syntactic no-op
    assert not alpha_equivalent(
        Abstraction(tv("n", epsilon_ty()), ev), Abstraction(tv("m", epsilon_ty()), ev)
    )


def test_alpha_hole_contents_follow_live_binders():
    c1, c2 = tv("c1", epsilon_ty()), tv("c2", epsilon_ty())
    t1 = Abstraction(c1, Quotation(Hole(c1, bool_ty())))
    t2 = Abstraction(c2, Quotation(Hole(c2, bool_ty())))
    assert alpha_equivalent(t1, t2)
    # same skeleton, but the content is a different live variable
    t3 = Abstraction(c2, Quotation(Hole(c1, bool_ty())))
    assert not alpha_equivalent(t1, t3)


def test_alpha_is_reflexive_on_generated_terms():
    gen = TermGen(seed=11, evals=True, holes=True)
    for _ in range(80):
        t = gen.term(depth=3)
        assert alpha_equivalent(t, t)
