"""Command-line proof-script checker.

A script is a sequence of one-line commands::

    # comments run to end of line (outside backticks)
    constant weird : epsilon->bool
    axiom ax1 := `weird Q_ T _Q`
    define two := `SUC (SUC _0)`
    thm step := (MP (INST `p:bool` `T` imp_something) other_thm)
    register_nei ax_saying_not_effective
    check step matches `T \\/ ~T`
    echo all done

Proof expressions are s-expressions ``(RULE arg ...)`` whose arguments are
backtick-quoted terms or types (which one is decided by the rule's
signature), theorem names, or nested proof expressions.  ``INST`` and
``INST_TYPE`` take alternating variable/replacement pairs before the final
theorem.

``cqe check`` runs a script and fails on the first error, ``cqe repl`` is
the same loop hooked to stdin, and ``cqe export`` runs a script and writes
every theorem it defines — name, surface text, hypotheses, conclusion, and
the axiom/trusted provenance — in a stable, replayable form.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from . import kernel, logic, session
from .errors import (
    CqeError,
    FrontendError,
    ScriptError,
    SubstitutionBlocked,
)
from .frontend import (
    parse_term,
    parse_type,
    print_term,
    print_theorem,
    print_type,
    term_to_tree,
    tree_to_json,
    tree_to_sexp,
)
from .syntax import TypeVariable, Variable, alpha_equivalent

# ---------------------------------------------------------------------------
# rule signatures: how to coerce proof-expression arguments
# ---------------------------------------------------------------------------

TERM, TYPE, VAR, THM = "term", "type", "variable", "theorem"

# name -> (callable, argument kinds, minimum arity)
RULE_SIGS = {
    # kernel
    "REFL": (kernel.REFL, [TERM], 1),
    "TRANS": (kernel.TRANS, [THM, THM], 2),
    "MK_COMB": (kernel.MK_COMB, [THM, THM], 2),
    "ABS": (kernel.ABS, [VAR, THM], 2),
    "BETA": (kernel.BETA, [TERM], 1),
    "ASSUME": (kernel.ASSUME, [TERM], 1),
    "EQ_MP": (kernel.EQ_MP, [THM, THM], 2),
    "DEDUCT_ANTISYM": (kernel.DEDUCT_ANTISYM, [THM, THM], 2),
    "LAW_OF_QUO": (kernel.LAW_OF_QUO, [TERM], 1),
    "QUO_STEP": (kernel.QUO_STEP, [TERM], 1),
    "VAR_DISQUO": (kernel.VAR_DISQUO, [TERM], 1),
    "CONST_DISQUO": (kernel.CONST_DISQUO, [TERM], 1),
    "DISQUO": (kernel.DISQUO, [TERM, TYPE], 1),
    "APP_SPLIT": (kernel.APP_SPLIT, [TERM, TERM, TYPE, TYPE], 4),
    "ABS_SPLIT": (kernel.ABS_SPLIT, [VAR, TERM, TYPE], 3),
    "QUOTABLE": (kernel.QUOTABLE, [TERM], 1),
    "BETA_EVAL": (kernel.BETA_EVAL, [VAR, TERM, TYPE], 3),
    "BETA_REVAL": (kernel.BETA_REVAL, [VAR, TERM, TERM, TYPE], 4),
    "NOT_FREE_OR_EFFECTIVE_IN": (kernel.NOT_FREE_OR_EFFECTIVE_IN, [VAR, TERM], 2),
    "NEITHER_EFFECTIVE": (kernel.NEITHER_EFFECTIVE, [VAR, VAR, TERM, TERM], 4),
    # derived
    "SYM": (logic.SYM, [THM], 1),
    "AP_TERM": (logic.AP_TERM, [TERM, THM], 2),
    "AP_THM": (logic.AP_THM, [THM, TERM], 2),
    "BETA_CONV": (logic.BETA_CONV, [TERM], 1),
    "PROVE_HYP": (logic.PROVE_HYP, [THM, THM], 2),
    "EQT_INTRO": (logic.EQT_INTRO, [THM], 1),
    "EQT_ELIM": (logic.EQT_ELIM, [THM], 1),
    "SUBS": (logic.SUBS, [THM, THM], 2),
    "MP": (logic.MP, [THM, THM], 2),
    "CONJ": (logic.CONJ, [THM, THM], 2),
    "CONJUNCT1": (logic.CONJUNCT1, [THM], 1),
    "CONJUNCT2": (logic.CONJUNCT2, [THM], 1),
    "DISCH": (logic.DISCH, [TERM, THM], 2),
    "UNDISCH": (logic.UNDISCH, [THM], 1),
    "SPEC": (logic.SPEC, [TERM, THM], 2),
    "GEN": (logic.GEN, [VAR, THM], 2),
    "DISJ1": (logic.DISJ1, [THM, TERM], 2),
    "DISJ2": (logic.DISJ2, [TERM, THM], 2),
    "DISJ_CASES": (logic.DISJ_CASES, [THM, THM, THM], 3),
    "NOT_INTRO": (logic.NOT_INTRO, [THM], 1),
    "NOT_ELIM": (logic.NOT_ELIM, [THM], 1),
    # trusted decision conversions
    "IS_EXPR_TYPE_CONV": (logic.IS_EXPR_TYPE_CONV, [TERM, TERM], 2),
    "IS_FREE_IN_CONV": (logic.IS_FREE_IN_CONV, [TERM, TERM], 2),
    "EVAL_CONV": (logic.EVAL_CONV, [TERM], 1),
    "IS_PEANO_CONV": (logic.IS_PEANO_CONV, [TERM], 1),
    "IS_PRESBURGER_CONV": (logic.IS_PRESBURGER_CONV, [TERM], 1),
}


# ---------------------------------------------------------------------------
# proof expressions
# ---------------------------------------------------------------------------

_PTOKEN = re.compile(
    r"\s+|(?P<lp>\()|(?P<rp>\))|(?P<lit>`[^`]*`)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)"
)


def _proof_tokens(text: str, lineno: int):
    toks = []
    pos = 0
    while pos < len(text):
        m = _PTOKEN.match(text, pos)
        if m is None:
            raise ScriptError(
                f"bad character {text[pos]!r} in proof expression", lineno
            )
        if m.lastgroup == "lp":
            toks.append(("lp", "("))
        elif m.lastgroup == "rp":
            toks.append(("rp", ")"))
        elif m.lastgroup == "lit":
            toks.append(("lit", m.group()[1:-1]))
        elif m.lastgroup == "name":
            toks.append(("name", m.group()))
        pos = m.end()
    return toks


def _parse_proof(text: str, lineno: int):
    toks = _proof_tokens(text, lineno)
    node, i = _parse_call(toks, 0, lineno)
    if i != len(toks):
        raise ScriptError("trailing input after proof expression", lineno)
    return node


def _parse_call(toks, i, lineno):
    if i >= len(toks) or toks[i][0] != "lp":
        raise ScriptError("expected '(' to open a proof expression", lineno)
    i += 1
    if i >= len(toks) or toks[i][0] != "name":
        raise ScriptError("expected a rule name after '('", lineno)
    rule = toks[i][1]
    i += 1
    args = []
    while i < len(toks) and toks[i][0] != "rp":
        kind = toks[i][0]
        if kind == "lp":
            node, i = _parse_call(toks, i, lineno)
            args.append(node)
        else:
            args.append(toks[i])
            i += 1
    if i >= len(toks):
        raise ScriptError("unclosed '(' in proof expression", lineno)
    return ("call", rule, args), i + 1


def _parse_arg_term(text: str, lineno: int):
    try:
        return parse_term(text)
    except FrontendError as e:
        raise ScriptError(f"in `{text}`: {e}", lineno, cause=e) from e


def _parse_arg_type(text: str, lineno: int):
    try:
        return parse_type(text)
    except FrontendError as e:
        raise ScriptError(f"in `{text}`: {e}", lineno, cause=e) from e


def _thm_by_name(name: str, lineno: int):
    try:
        return logic.theorem(name)
    except CqeError as e:
        raise ScriptError(str(e), lineno, cause=e) from e


def _eval_proof(node, lineno: int):
    if node[0] == "name":
        return _thm_by_name(node[1], lineno)
    if node[0] != "call":
        raise ScriptError("expected a theorem, got a quoted literal", lineno)
    _, rule, args = node
    if rule in ("INST", "INST_TYPE"):
        return _eval_inst(rule, args, lineno)
    entry = RULE_SIGS.get(rule)
    if entry is None:
        raise ScriptError(f"unknown rule {rule!r}", lineno)
    fn, kinds, least = entry
    if not (least <= len(args) <= len(kinds)):
        want = (
            str(least) if least == len(kinds) else f"{least} to {len(kinds)}"
        )
        raise ScriptError(
            f"{rule} takes {want} arguments, got {len(args)}", lineno
        )
    vals = [
        _coerce(rule, a, k, lineno) for a, k in zip(args, kinds)
    ]
    try:
        return fn(*vals)
    except SubstitutionBlocked as e:
        raise ScriptError(_blocked_message(rule, e), lineno, cause=e) from e
    except CqeError as e:
        raise ScriptError(f"{rule}: {type(e).__name__}: {e}", lineno, cause=e) from e


def _eval_inst(rule, args, lineno):
    if len(args) < 3 or len(args) % 2 == 0:
        raise ScriptError(
            f"{rule} takes variable/replacement pairs and then a theorem", lineno
        )
    th = _coerce(rule, args[-1], THM, lineno)
    pairs = []
    for vnode, tnode in zip(args[:-1:2], args[1:-1:2]):
        if rule == "INST":
            v = _coerce(rule, vnode, VAR, lineno)
            t = _coerce(rule, tnode, TERM, lineno)
        else:
            v = _coerce(rule, vnode, TYPE, lineno)
            if not isinstance(v, TypeVariable):
                raise ScriptError(
                    f"{rule}: expected a type variable, got {print_type(v)}", lineno
                )
            t = _coerce(rule, tnode, TYPE, lineno)
        pairs.append((v, t))
    fn = kernel.INST if rule == "INST" else kernel.INST_TYPE
    try:
        return fn(pairs, th)
    except SubstitutionBlocked as e:
        raise ScriptError(_blocked_message(rule, e), lineno, cause=e) from e
    except CqeError as e:
        raise ScriptError(f"{rule}: {type(e).__name__}: {e}", lineno, cause=e) from e


def _coerce(rule, node, kind, lineno):
    if kind == THM:
        if node[0] == "name":
            return _thm_by_name(node[1], lineno)
        if node[0] == "call":
            return _eval_proof(node, lineno)
        raise ScriptError(f"{rule}: expected a theorem, got `{node[1]}`", lineno)
    if node[0] != "lit":
        raise ScriptError(f"{rule}: expected a quoted {kind}", lineno)
    if kind == TYPE:
        return _parse_arg_type(node[1], lineno)
    t = _parse_arg_term(node[1], lineno)
    if kind == VAR and not isinstance(t, Variable):
        raise ScriptError(
            f"{rule}: expected a variable, got {print_term(t)}", lineno
        )
    return t


def _blocked_message(rule, e: SubstitutionBlocked) -> str:
    hint = "; register_nei an axiom or theorem saying so to proceed" if e.needed else ""
    return f"{rule}: {e}{hint}"


# ---------------------------------------------------------------------------
# script commands
# ---------------------------------------------------------------------------


def _strip_comment(line: str) -> str:
    in_tick = False
    for i, c in enumerate(line):
        if c == "`":
            in_tick = not in_tick
        elif c == "#" and not in_tick:
            return line[:i]
    return line


_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_CMD_RES = {
    "constant": re.compile(r"constant\s+(\S+)\s*:\s*(.+?)\s*$"),
    "axiom": re.compile(rf"axiom\s+({_NAME})\s*:=\s*`([^`]*)`\s*$"),
    "define": re.compile(rf"define\s+(\S+)\s*:=\s*`([^`]*)`\s*$"),
    "register_nei": re.compile(rf"register_nei\s+({_NAME})\s*$"),
    "thm": re.compile(rf"thm\s+({_NAME})\s*:=\s*(\(.*\))\s*$"),
    "check": re.compile(rf"check\s+({_NAME})\s+matches\s+`([^`]*)`\s*$"),
}


def _want_color(stream) -> bool:
    if os.environ.get("CQE_NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


class Runner:
    """Executes script commands against the current session."""

    def __init__(self, trace=False, quiet=False, out=None, color=None):
        self.trace = trace
        self.quiet = quiet
        self.out = out if out is not None else sys.stdout
        self.color = _want_color(self.out) if color is None else color
        self.defined = []  # theorem names, in definition order
        self.steps = 0
        self.checks = 0

    def _paint(self, s, code):
        return f"\x1b[{code}m{s}\x1b[0m" if self.color else s

    def emit(self, s):
        print(s, file=self.out)

    def run_text(self, text: str):
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = _strip_comment(raw).strip()
            if not line:
                continue
            self.command(line, lineno)

    def command(self, line: str, lineno: int):
        word = line.split(None, 1)[0]
        if word == "echo":
            if not self.quiet:
                self.emit(line[4:].strip())
            return
        rx = _CMD_RES.get(word)
        if rx is None:
            raise ScriptError(f"unknown command {word!r}", lineno)
        m = rx.match(line)
        if m is None:
            raise ScriptError(f"malformed {word} command", lineno)
        try:
            getattr(self, "_cmd_" + word)(m, lineno)
        except ScriptError:
            raise
        except CqeError as e:
            raise ScriptError(f"{type(e).__name__}: {e}", lineno, cause=e) from e
        self.steps += 1

    # -- individual commands

    def _cmd_constant(self, m, lineno):
        name, tytext = m.group(1), m.group(2)
        ty = _parse_arg_type(tytext, lineno)
        kernel.new_constant(name, ty)
        if self.trace:
            self.emit(f"constant {name} : {print_type(ty)}")

    def _cmd_axiom(self, m, lineno):
        name, text = m.group(1), m.group(2)
        th = kernel.new_axiom(name, _parse_arg_term(text, lineno))
        if self.trace:
            self.emit(f"axiom {name} : {print_theorem(th)}")

    def _cmd_define(self, m, lineno):
        name, text = m.group(1), m.group(2)
        th = kernel.new_basic_definition(name, _parse_arg_term(text, lineno))
        if self.trace:
            self.emit(f"define {name} : {print_theorem(th)}")

    def _cmd_register_nei(self, m, lineno):
        name = m.group(1)
        kernel.register_not_effective(_thm_by_name(name, lineno))
        if self.trace:
            self.emit(f"register_nei {name}")

    def _cmd_thm(self, m, lineno):
        name, expr = m.group(1), m.group(2)
        s = session.current()
        if name in s.theorems or name in s.axioms:
            raise ScriptError(f"theorem name already used: {name!r}", lineno)
        th = _eval_proof(_parse_proof(expr, lineno), lineno)
        s.theorems[name] = th
        self.defined.append(name)
        if self.trace:
            self.emit(f"{name} : {print_theorem(th)}")

    def _cmd_check(self, m, lineno):
        name, text = m.group(1), m.group(2)
        th = _thm_by_name(name, lineno)
        target = _parse_arg_term(text, lineno)
        if th.hyps:
            raise ScriptError(
                f"check {name}: theorem still has hypotheses: {print_theorem(th)}",
                lineno,
            )
        if not alpha_equivalent(th.concl, target):
            raise ScriptError(
                f"check {name}: conclusion is {print_term(th.concl)}\n"
                f"  but the script expects {print_term(target)}",
                lineno,
            )
        self.checks += 1
        if not self.quiet:
            self.emit(f"check {name}: " + self._paint("ok", "32"))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _cmd_check(args) -> int:
    text = _read(args.file)
    session.reset()
    runner = Runner(trace=args.trace)
    runner.run_text(text)
    runner.emit(
        runner._paint(f"ok: {runner.steps} commands, {runner.checks} checks", "32")
    )
    return 0


def _theorem_tree(name: str, th) -> tuple:
    hyp_trees = sorted((term_to_tree(h) for h in th.hyps), key=tree_to_sexp)
    return (
        "theorem",
        name,
        ("text", print_theorem(th)),
        ("hyps",) + tuple(hyp_trees),
        ("concl", term_to_tree(th.concl)),
        ("axioms",) + tuple(sorted(th.axioms)),
        ("trusted",) + tuple(sorted(th.trusted)),
    )


def _cmd_export(args) -> int:
    text = _read(args.file)
    session.reset()
    runner = Runner(quiet=True)
    runner.run_text(text)
    s = session.current()
    lines = []
    for name in sorted(runner.defined):
        tree = _theorem_tree(name, s.theorems[name])
        lines.append(
            tree_to_sexp(tree) if args.format == "sexp" else tree_to_json(tree)
        )
    data = "\n".join(lines) + ("\n" if lines else "")
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(data)
    print(f"wrote {len(lines)} theorems to {args.out}")
    return 0


def _cmd_repl(args) -> int:
    session.reset()
    runner = Runner(trace=True)
    runner.emit("cqe proof checker; :state :thms :quit")
    if args.load:
        try:
            runner.run_text(_read(args.load))
        except ScriptError as e:
            runner.emit(f"{args.load}:{e.line}: error: {e}")
    n = 0
    while True:
        sys.stdout.write("cqe> ")
        sys.stdout.flush()
        raw = sys.stdin.readline()
        if not raw:
            break
        line = _strip_comment(raw).strip()
        n += 1
        if not line:
            continue
        if line == ":quit":
            break
        if line == ":state":
            s = session.current()
            runner.emit(
                f"{len(s.constants)} constants, {len(s.axioms)} axioms, "
                f"{len(s.theorems)} theorems, {len(s.nei_registry)} registered"
            )
            continue
        if line == ":thms":
            for name in sorted(session.current().theorems):
                runner.emit(name)
            continue
        try:
            runner.command(line, n)
        except ScriptError as e:
            runner.emit(runner._paint(f"error: {e}", "31"))
        except CqeError as e:
            runner.emit(runner._paint(f"error: {type(e).__name__}: {e}", "31"))
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="cqe",
        description="Proof checker for a logic with quotation and evaluation.",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p_check = sub.add_parser("check", help="run a proof script")
    p_check.add_argument("file", help="script to run")
    p_check.add_argument(
        "--trace", action="store_true", help="print every theorem as it is proved"
    )

    p_repl = sub.add_parser("repl", help="interactive command loop")
    p_repl.add_argument("--load", metavar="FILE", help="script to run first")

    p_exp = sub.add_parser("export", help="run a script and export its theorems")
    p_exp.add_argument("file", help="script to run")
    p_exp.add_argument("--out", required=True, help="output path")
    p_exp.add_argument(
        "--format", choices=["sexp", "json-like"], default="sexp"
    )

    args = ap.parse_args(argv)
    handler = {"check": _cmd_check, "export": _cmd_export, "repl": _cmd_repl}[args.cmd]
    try:
        return handler(args)
    except ScriptError as e:
        target = getattr(args, "file", None) or getattr(args, "load", None) or "<input>"
        print(f"{target}:{e.line}: error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"cqe: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
