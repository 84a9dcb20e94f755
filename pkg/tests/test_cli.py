"""The command-line checker: scripts, exit codes, exports, and the repl."""

import io
import os

import pytest

from cqe import session
from cqe.cli import RULE_SIGS, Runner, main
from cqe.errors import ScriptError

SCRIPTS = os.path.join(os.path.dirname(__file__), "..", "src", "cqe", "scripts")


def script(name):
    return os.path.join(SCRIPTS, name)


def write(tmp_path, text):
    p = tmp_path / "script.cqe"
    p.write_text(text, encoding="utf-8")
    return str(p)


# ---------------------------------------------------------------------------
# happy paths
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "name", ["lem.cqe", "lem_instance.cqe", "peano.cqe", "presburger.cqe"]
)
def test_shipped_scripts_pass(name, capsys):
    assert main(["check", script(name)]) == 0
    out = capsys.readouterr().out
    assert "ok:" in out


def test_check_counts_commands_and_checks(tmp_path, capsys):
    path = write(
        tmp_path,
        """
        # a comment line
        thm r := (REFL `T`)
        check r matches `T = T`
        echo all done
        """,
    )
    assert main(["check", path]) == 0
    out = capsys.readouterr().out
    assert "all done" in out
    # checks are tallied separately from the other commands
    assert "ok: 2 commands, 1 checks" in out


def test_trace_prints_each_theorem(tmp_path, capsys):
    path = write(tmp_path, "thm r := (REFL `T`)\n")
    assert main(["check", "--trace", path]) == 0
    assert "|- T = T" in capsys.readouterr().out


def test_constant_axiom_define_register(tmp_path, capsys):
    path = write(
        tmp_path,
        """
        constant won : bool
        axiom won_ax := `won`
        define loses := `~won`
        thm a := (ASSUME `loses`)
        """,
    )
    assert main(["check", path]) == 0


# ---------------------------------------------------------------------------
# failure modes and exit codes
# ---------------------------------------------------------------------------


def test_missing_file_is_exit_2(capsys):
    assert main(["check", "/nonexistent/nowhere.cqe"]) == 2
    assert "cqe:" in capsys.readouterr().err


def test_failed_check_is_exit_1(tmp_path, capsys):
    path = write(
        tmp_path,
        "thm r := (REFL `T`)\ncheck r matches `F = F`\n",
    )
    assert main(["check", path]) == 1
    err = capsys.readouterr().err
    assert "error" in err and ":2:" in err


def test_parse_error_reports_line(tmp_path, capsys):
    path = write(tmp_path, "thm r := (REFL `T /\\`)\n")
    assert main(["check", path]) == 1
    assert ":1:" in capsys.readouterr().err


def test_unknown_rule_rejected(tmp_path, capsys):
    path = write(tmp_path, "thm r := (FROBNICATE `T`)\n")
    assert main(["check", path]) == 1
    assert "FROBNICATE" in capsys.readouterr().err


def test_wrong_arity_rejected(tmp_path, capsys):
    path = write(tmp_path, "thm r := (REFL `T` `F`)\n")
    assert main(["check", path]) == 1


def test_duplicate_theorem_name_rejected(tmp_path, capsys):
    path = write(
        tmp_path, "thm r := (REFL `T`)\nthm r := (REFL `F`)\n"
    )
    assert main(["check", path]) == 1
    assert "already" in capsys.readouterr().err


def test_unknown_theorem_reference(tmp_path, capsys):
    path = write(tmp_path, "thm a := (SYM missing)\n")
    assert main(["check", path]) == 1


def test_blocked_substitution_suggests_registration(tmp_path, capsys):
    path = write(
        tmp_path,
        "thm ind := (SPEC `P:(num->bool)` num_INDUCTION)\n"
        "thm bad := (INST `P:(num->bool)` `eval f:epsilon to (num->bool)` ind)\n",
    )
    assert main(["check", path]) == 1
    err = capsys.readouterr().err
    assert "register_nei" in err


def test_register_nei_unblocks(tmp_path, capsys):
    path = write(
        tmp_path,
        """
        thm ind := (SPEC `P:(num->bool)` num_INDUCTION)
        axiom nei := `~(?y:num. ~((\\n:num. eval f:epsilon to (num->bool)) y = eval f:epsilon to (num->bool)))`
        register_nei nei
        thm ok := (INST `P:(num->bool)` `eval f:epsilon to (num->bool)` ind)
        """,
    )
    assert main(["check", path]) == 0


# ---------------------------------------------------------------------------
# argument coercion
# ---------------------------------------------------------------------------


def test_rule_table_covers_kernel_and_derived_rules():
    for name in ("REFL", "TRANS", "LAW_OF_QUO", "BETA_REVAL", "SPEC", "MP",
                 "EVAL_CONV", "IS_PEANO_CONV"):
        assert name in RULE_SIGS
    # the pair-list instantiators are dispatched separately
    assert "INST" not in RULE_SIGS and "INST_TYPE" not in RULE_SIGS


def test_type_argument_coercion(tmp_path):
    path = write(
        tmp_path,
        "thm b := (BETA_REVAL `x:epsilon` `x:epsilon` `Q_ T _Q` `bool`)\n",
    )
    assert main(["check", path]) == 0


def test_var_argument_must_be_variable(tmp_path, capsys):
    path = write(tmp_path, "thm g := (GEN `T` TRUTH)\n")
    assert main(["check", path]) == 1
    assert "variable" in capsys.readouterr().err.lower()


def test_inst_takes_pair_lists(tmp_path, capsys):
    path = write(
        tmp_path,
        "thm i := (INST `p:bool` `T` `q:bool` EXCLUDED_MIDDLE)\n",
    )
    assert main(["check", path]) == 1
    assert "pairs" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def test_export_sexp_deterministic(tmp_path, capsys):
    out1 = tmp_path / "a.sexp"
    out2 = tmp_path / "b.sexp"
    assert main(["export", script("lem.cqe"), "--out", str(out1)]) == 0
    assert main(["export", script("lem.cqe"), "--out", str(out2)]) == 0
    d1 = out1.read_bytes()
    assert d1 == out2.read_bytes()
    assert d1.endswith(b"\n")
    text = d1.decode()
    assert text.count('("theorem" ') == text.count("\n")
    # replaying the same source yields byte-identical output even after
    # unrelated session work
    session.reset()
    Runner(quiet=True).run_text("thm extra := (REFL `T`)")
    out3 = tmp_path / "c.sexp"
    assert main(["export", script("lem.cqe"), "--out", str(out3)]) == 0
    assert out3.read_bytes() == d1


def test_export_json_like(tmp_path, capsys):
    out = tmp_path / "a.json"
    rc = main(
        ["export", script("lem.cqe"), "--out", str(out), "--format", "json-like"]
    )
    assert rc == 0
    body = out.read_text()
    assert '"theorem"' in body and '"lem"' in body


def test_export_includes_provenance(tmp_path, capsys):
    out = tmp_path / "p.sexp"
    assert main(["export", script("peano.cqe"), "--out", str(out)]) == 0
    body = out.read_text()
    assert "nei_peano" in body  # axiom provenance is recorded
    assert '("trusted"' in body


# ---------------------------------------------------------------------------
# repl
# ---------------------------------------------------------------------------


def test_repl_session(monkeypatch, capsys):
    lines = io.StringIO(
        "thm r := (REFL `T`)\n:state\n:thms\n:quit\n"
    )
    monkeypatch.setattr("sys.stdin", lines)
    assert main(["repl"]) == 0
    out = capsys.readouterr().out
    assert "|- T = T" in out
    assert "constants" in out
    assert "r" in out.splitlines()[-2:][0] or "r" in out


def test_repl_recovers_from_errors(monkeypatch, capsys):
    lines = io.StringIO("thm bad := (REFL)\nthm r := (REFL `T`)\n:quit\n")
    monkeypatch.setattr("sys.stdin", lines)
    assert main(["repl"]) == 0
    out = capsys.readouterr().out
    assert "error" in out
    assert "|- T = T" in out


def test_repl_load(monkeypatch, capsys):
    lines = io.StringIO(":quit\n")
    monkeypatch.setattr("sys.stdin", lines)
    assert main(["repl", "--load", script("lem.cqe")]) == 0
    assert "lem" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# runner internals
# ---------------------------------------------------------------------------


def test_runner_comments_respect_backticks():
    runner = Runner(quiet=True)
    runner.run_text('thm r := (ASSUME `isPeano Q_ T _Q = F`)  # trailing note\n')
    assert "r" in session.current().theorems


def test_runner_raises_script_error_with_line():
    runner = Runner(quiet=True)
    with pytest.raises(ScriptError) as info:
        runner.run_text("\n\nthm r := (REFL `T` )\nnonsense command\n")
    assert info.value.line == 4
