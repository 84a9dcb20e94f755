"""Derived rules, the bootstrap theory, and the decision conversions."""

import pytest

from cqe import session
from cqe.constructions import type_to_construction
from cqe.errors import (
    FreeOccurrence,
    IllTyped,
    KernelError,
    NotClosed,
    NotEvalFree,
    WrongShape,
)
from cqe.frontend import parse_term
from cqe.kernel import (
    ASSUME,
    INST,
    REFL,
    mk_conj,
    mk_disj,
    mk_eq,
    mk_imp,
    mk_neg,
)
from cqe.logic import (
    AP_TERM,
    AP_THM,
    BETA_CONV,
    CONJ,
    CONJUNCT1,
    CONJUNCT2,
    DISCH,
    DISJ1,
    DISJ2,
    DISJ_CASES,
    EQT_ELIM,
    EQT_INTRO,
    EVAL_CONV,
    GEN,
    IS_EXPR_TYPE_CONV,
    IS_FREE_IN_CONV,
    IS_PEANO_CONV,
    IS_PRESBURGER_CONV,
    MP,
    NOT_ELIM,
    NOT_INTRO,
    PROVE_HYP,
    SPEC,
    SUBS,
    SYM,
    UNDISCH,
    datatype_facts,
    theorem,
)
from cqe.syntax import (
    Abstraction,
    Application,
    Constant,
    Evaluation,
    Quotation,
    Variable,
    alpha_equivalent,
    bool_ty,
    epsilon_ty,
    mk_fun,
    num_ty,
    type_ty,
)


T = Constant("T", bool_ty())
F = Constant("F", bool_ty())


def bv(name):
    return Variable(name, bool_ty())


# ---------------------------------------------------------------------------
# the bootstrap theory
# ---------------------------------------------------------------------------


def test_bootstrap_names_present():
    s = session.current()
    for name in ("T", "F", "/\\", "\\/", "==>", "~", "!", "?"):
        assert name in s.constants
    for name in ("TRUTH", "EXCLUDED_MIDDLE", "num_INDUCTION"):
        assert name in s.theorems


def test_truth_and_excluded_middle():
    truth = theorem("TRUTH")
    assert truth.concl == T and not truth.hyps
    lem = theorem("EXCLUDED_MIDDLE")
    p = bv("p")
    assert lem.concl == mk_disj(p, mk_neg(p))
    assert lem.axioms == {"BOOL_CASES_AX"}
    assert not lem.trusted


def test_num_induction_statement():
    th = theorem("num_INDUCTION")
    want = parse_term(
        "!P:(num->bool). P _0 /\\ (!n:num. P n ==> P (SUC n))"
        " ==> (!n:num. P n)"
    )
    assert alpha_equivalent(th.concl, want)
    assert th.axioms == {"num_INDUCTION"}


def test_datatype_facts_are_axiomatic_and_shaped():
    facts = datatype_facts()
    # one distinctness conjunct per unordered pair of the five term
    # constructors: C(5,2) = 10
    distinct = theorem("epsilon_distinct")
    assert _count_conjuncts(distinct.concl) == 10
    assert _count_conjuncts(theorem("type_distinct").concl) == 6
    for name in (
        "epsilon_distinct",
        "epsilon_injective",
        "epsilon_induction",
        "type_distinct",
        "type_injective",
        "type_induction",
    ):
        assert name in facts
        assert theorem(name).axioms == {name}


def _count_conjuncts(t):
    head = t
    n = 1
    while (
        isinstance(head, Application)
        and isinstance(head.fn, Application)
        and isinstance(head.fn.fn, Constant)
        and head.fn.fn.name == "/\\"
    ):
        n += 1
        head = head.arg
    return n


def test_theorem_lookup():
    assert theorem("TRUTH").concl == T
    with pytest.raises(KernelError):
        theorem("no_such_theorem")


# ---------------------------------------------------------------------------
# equality and propositional rules
# ---------------------------------------------------------------------------


def test_sym_and_ap():
    p = bv("p")
    eq = ASSUME(mk_eq(p, T))
    assert SYM(eq).concl == mk_eq(T, p)
    neg = Constant("~", mk_fun(bool_ty(), bool_ty()))
    assert AP_TERM(neg, eq).concl == mk_eq(Application(neg, p), Application(neg, T))
    f = Variable("f", mk_fun(bool_ty(), num_ty()))
    g = Variable("g", mk_fun(bool_ty(), num_ty()))
    eq2 = ASSUME(mk_eq(f, g))
    assert AP_THM(eq2, T).concl == mk_eq(Application(f, T), Application(g, T))


def test_beta_conv_handles_any_argument():
    x, y = bv("x"), bv("y")
    redex = Application(Abstraction(x, mk_conj(x, y)), T)
    th = BETA_CONV(redex)
    assert th.concl == mk_eq(redex, mk_conj(T, y))
    with pytest.raises(WrongShape):
        BETA_CONV(T)


def test_eqt_intro_elim():
    p = bv("p")
    th = ASSUME(p)
    eq = EQT_INTRO(th)
    assert eq.concl == mk_eq(p, T)
    back = EQT_ELIM(eq)
    assert back.concl == p


def test_prove_hyp_and_subs():
    p, q = bv("p"), bv("q")
    th = ASSUME(p)
    discharged = PROVE_HYP(theorem("TRUTH"), th)
    assert discharged.hyps == {p}  # T was not among the hypotheses: no-op
    eq = ASSUME(mk_eq(p, q))
    subbed = SUBS(eq, ASSUME(mk_conj(p, p)))
    assert subbed.concl == mk_conj(q, q)


def test_mp_conj_disj():
    p, q = bv("p"), bv("q")
    imp = ASSUME(mk_imp(p, q))
    out = MP(imp, ASSUME(p))
    assert out.concl == q and out.hyps == {mk_imp(p, q), p}
    both = CONJ(ASSUME(p), ASSUME(q))
    assert both.concl == mk_conj(p, q)
    assert CONJUNCT1(both).concl == p
    assert CONJUNCT2(both).concl == q
    assert DISJ1(ASSUME(p), q).concl == mk_disj(p, q)
    assert DISJ2(p, ASSUME(q)).concl == mk_disj(p, q)


def test_disch_undisch():
    p, q = bv("p"), bv("q")
    th = DISCH(p, ASSUME(q))
    assert th.concl == mk_imp(p, q) and th.hyps == {q}
    # discharging something not among the hypotheses is allowed
    th2 = DISCH(p, theorem("TRUTH"))
    assert th2.concl == mk_imp(p, T) and not th2.hyps
    assert UNDISCH(th2).hyps == {p}


def test_disj_cases():
    p, q, r = bv("p"), bv("q"), bv("r")
    d = ASSUME(mk_disj(p, q))
    case = ASSUME(r)
    out = DISJ_CASES(d, case, case)
    assert out.concl == r
    assert mk_disj(p, q) in out.hyps


def test_not_intro_elim():
    p = bv("p")
    th = ASSUME(mk_imp(p, F))
    n = NOT_INTRO(th)
    assert n.concl == mk_neg(p)
    back = NOT_ELIM(n)
    assert back.concl == mk_imp(p, F)


# ---------------------------------------------------------------------------
# quantifier rules
# ---------------------------------------------------------------------------


def test_spec_on_plain_predicates():
    th = theorem("num_INDUCTION")
    P = Variable("P", mk_fun(num_ty(), bool_ty()))
    out = SPEC(P, th)
    want = parse_term(
        "P:(num->bool) _0 /\\ (!n:num. P n ==> P (SUC n)) ==> (!n:num. P n)"
    )
    assert alpha_equivalent(out.concl, want)


def test_spec_with_abstraction_reduces_only_the_head_redex():
    n = Variable("n", num_ty())
    pred = Abstraction(n, mk_eq(n, n))
    out = SPEC(pred, theorem("num_INDUCTION"))
    want = parse_term(
        "(\\n:num. n = n) _0 /\\ (!n:num. (\\n:num. n = n) n"
        " ==> (\\n:num. n = n) (SUC n)) ==> (!n:num. (\\n:num. n = n) n)"
    )
    assert alpha_equivalent(out.concl, want)


def test_gen_and_spec_round_trip():
    p = bv("p")
    th = GEN(p, REFL(p))
    assert alpha_equivalent(th.concl, parse_term("!p:bool. p = p"))
    inst = SPEC(T, th)
    assert inst.concl == mk_eq(T, T)


def test_gen_refuses_variables_free_in_hypotheses():
    p = bv("p")
    with pytest.raises(FreeOccurrence):
        GEN(p, ASSUME(p))


def test_spec_suspends_at_quotation_argument():
    # specializing a quantified evaluation at a quotation leaves suspended
    # redexes rather than pushing the quotation inside the eval
    x = Variable("x", epsilon_ty())
    lem_style = GEN(
        x,
        INST(
            [(bv("p"), Evaluation(x, bool_ty()))],
            theorem("EXCLUDED_MIDDLE"),
        ),
    )
    q = Quotation(mk_disj(T, F))
    out = SPEC(q, lem_style)
    susp = Application(Abstraction(x, Evaluation(x, bool_ty())), q)
    assert out.concl == mk_disj(susp, mk_neg(susp))


# ---------------------------------------------------------------------------
# decision conversions
# ---------------------------------------------------------------------------


def test_is_expr_type_conv_positive_and_negative():
    c = Quotation(mk_disj(T, F))
    tyc = type_to_construction(bool_ty())
    is_expr = Constant(
        "isExprType", mk_fun(epsilon_ty(), mk_fun(type_ty(), bool_ty()))
    )
    th = IS_EXPR_TYPE_CONV(c, tyc)
    assert th.concl == Application(Application(is_expr, c), tyc)
    assert th.trusted == {"IS_EXPR_TYPE_CONV"}
    neg = IS_EXPR_TYPE_CONV(c, type_to_construction(num_ty()))
    assert neg.concl == mk_neg(
        Application(Application(is_expr, c), type_to_construction(num_ty()))
    )


def test_is_expr_type_conv_guards():
    free = Variable("c", epsilon_ty())
    with pytest.raises(NotClosed):
        IS_EXPR_TYPE_CONV(free, type_to_construction(bool_ty()))
    with pytest.raises(IllTyped):
        IS_EXPR_TYPE_CONV(T, type_to_construction(bool_ty()))
    with pytest.raises(NotEvalFree):
        IS_EXPR_TYPE_CONV(
            Application(
                Abstraction(free, free), Evaluation(Quotation(T), epsilon_ty())
            ),
            type_to_construction(bool_ty()),
        )


def test_is_free_in_conv():
    x = bv("x")
    pos = IS_FREE_IN_CONV(Quotation(x), Quotation(mk_conj(x, T)))
    want_pos = parse_term("isFreeIn Q_ x:bool _Q Q_ x:bool /\\ T _Q")
    assert pos.concl == want_pos
    neg = IS_FREE_IN_CONV(Quotation(x), Quotation(Abstraction(x, x)))
    assert neg.concl == mk_neg(
        parse_term("isFreeIn Q_ x:bool _Q Q_ \\x:bool. x _Q")
    )
    assert neg.trusted == {"IS_FREE_IN_CONV"}


def test_eval_conv_computes_denotations():
    e = Evaluation(Quotation(mk_conj(T, F)), bool_ty())
    th = EVAL_CONV(e)
    assert th.concl == mk_eq(e, mk_conj(T, F))
    assert th.trusted == {"EVAL_CONV"}
    # open results are fine: the quoted variable is the result
    x = bv("x")
    th2 = EVAL_CONV(Evaluation(Quotation(x), bool_ty()))
    assert th2.concl == mk_eq(Evaluation(Quotation(x), bool_ty()), x)
    # the stated type must be the denoted term's type
    with pytest.raises((IllTyped, KernelError)):
        EVAL_CONV(Evaluation(Quotation(T), num_ty()))


def test_eval_conv_whnf_normalizes_first():
    x = Variable("x", epsilon_ty())
    e = Evaluation(Application(Abstraction(x, x), Quotation(T)), bool_ty())
    th = EVAL_CONV(e)
    assert th.concl == mk_eq(e, T)


def test_peano_and_presburger_convs():
    num = num_ty()
    n = Variable("n", num)
    nb = mk_fun(num, bool_ty())
    add = Constant("+", mk_fun(num, mk_fun(num, num)))
    mul = Constant("*", mk_fun(num, mk_fun(num, num)))
    suc = Constant("SUC", mk_fun(num, num))
    zero = Constant("_0", num)
    # n + n = n is Presburger (and so Peano)
    pred1 = Abstraction(
        n, mk_eq(Application(Application(add, n), n), n)
    )
    q1 = Quotation(pred1)
    assert IS_PEANO_CONV(q1).concl == parse_term("isPeano Q_ \\n:num. (+) n n = n _Q")
    assert IS_PRESBURGER_CONV(q1).concl == parse_term(
        "isPresburger Q_ \\n:num. (+) n n = n _Q"
    )
    # n * n = n mentions multiplication: Peano yes, Presburger no
    pred2 = Abstraction(
        n, mk_eq(Application(Application(mul, n), n), n)
    )
    q2 = Quotation(pred2)
    assert IS_PEANO_CONV(q2).concl.fn.name == "isPeano"
    pres = IS_PRESBURGER_CONV(q2)
    assert pres.concl == mk_neg(
        Application(Constant("isPresburger", mk_fun(epsilon_ty(), bool_ty())), q2)
    )
    # a predicate over the wrong type is not arithmetic at all
    pred3 = Abstraction(bv("p"), bv("p"))
    assert IS_PEANO_CONV(Quotation(pred3)).concl.fn.name == "~"


def test_conv_provenance_tags_flow_through_rules():
    c = Quotation(mk_disj(T, F))
    th = IS_EXPR_TYPE_CONV(c, type_to_construction(bool_ty()))
    combined = CONJ(th, EVAL_CONV(Evaluation(c, bool_ty())))
    assert combined.trusted == {"IS_EXPR_TYPE_CONV", "EVAL_CONV"}
