import pytest
from click.testing import CliRunner

from orthoproof.cli import main

GOOD_SCRIPT = """\
theorem arrow mode=NOM
goal: |- p -> p
1: p |- p by assume
2: |- p -> p by imp_i from 1
qed
"""

BAD_SCRIPT = """\
theorem wrong mode=NOM
goal: |- p
1: p |- p by assume
2: |- p by imp_i from 1
qed
"""

TWO_CHAIN = "oml 2\nleq 0 1\nneg 0 1\n"


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args, **kw):
    return runner.invoke(main, args, **kw)


# --- check -------------------------------------------------------------------

def test_check_accepted_script(runner, tmp_path):
    p = tmp_path / "arrow.nom"
    p.write_text(GOOD_SCRIPT)
    res = invoke(runner, ["check", str(p)])
    assert res.exit_code == 0
    assert "arrow [NOM]: accepted" in res.output


def test_check_rejected_script(runner, tmp_path):
    p = tmp_path / "bad.nom"
    p.write_text(BAD_SCRIPT)
    res = invoke(runner, ["check", str(p)])
    assert res.exit_code == 1
    assert "rejected" in res.output


def test_check_parse_error_is_an_input_error(runner, tmp_path):
    p = tmp_path / "broken.nom"
    p.write_text("theorem t mode=NOM\ngoal: p |-\nqed\n")
    res = invoke(runner, ["check", str(p)])
    assert res.exit_code == 2
    assert "error:" in res.output


def test_check_multiple_files_tsv(runner, tmp_path):
    a = tmp_path / "a.nom"
    b = tmp_path / "b.nom"
    a.write_text(GOOD_SCRIPT)
    b.write_text(BAD_SCRIPT)
    res = invoke(runner, ["check", str(a), str(b), "--format", "tsv"])
    assert res.exit_code == 1
    lines = res.output.strip().splitlines()
    assert lines[0].split("\t") == [str(a), "arrow", "NOM", "accepted"]
    assert lines[1].split("\t") == [str(b), "wrong", "NOM", "rejected"]


def test_check_missing_file_is_a_usage_error(runner):
    res = invoke(runner, ["check", "/nonexistent.nom"])
    assert res.exit_code == 2


# --- validate / decide2 / countermodel / classical ---------------------------

def test_validate_valid(runner):
    res = invoke(runner, ["validate", "q, p |- q", "--lattice", "2^2"])
    assert res.exit_code == 0
    assert "VALID on 2^2" in res.output


def test_validate_countermodel_default_lattice(runner):
    res = invoke(runner, ["validate", "q, p |- q"])
    assert res.exit_code == 1
    assert res.output.startswith("MO2:")


def test_validate_unknown_lattice(runner):
    res = invoke(runner, ["validate", "p |- p", "--lattice", "MO3"])
    assert res.exit_code == 2
    assert "unknown lattice" in res.output


def test_validate_lattice_file(runner, tmp_path):
    f = tmp_path / "two.oml"
    f.write_text(TWO_CHAIN)
    res = invoke(runner, ["validate", "p |- p", "--lattice-file", str(f)])
    assert res.exit_code == 0
    assert "VALID on two" in res.output


def test_validate_bad_sequent(runner):
    res = invoke(runner, ["validate", "p |-"])
    assert res.exit_code == 2


def test_decide2_orthomodular_law_sequent(runner):
    res = invoke(runner, ["decide2", "q |- p \\/ (~p /\\ (p \\/ q))"])
    assert res.exit_code == 0
    assert res.output == "VALID (complete for 2 letters)\n"


def test_decide2_invalid_sequent(runner):
    res = invoke(runner, ["decide2", "p |- q"])
    assert res.exit_code == 1


def test_decide2_three_letters_rejected(runner):
    res = invoke(runner, ["decide2", "p, q, r |- p"])
    assert res.exit_code == 2
    assert "letters" in res.output


def test_countermodel_order_sensitivity_witness(runner):
    res = invoke(runner, ["countermodel", "q, p |- q"])
    assert res.exit_code == 1
    assert res.output == "MO2: p=1 q=3 fold=1 succ=3\n"


def test_countermodel_none_found(runner):
    res = invoke(runner, ["countermodel", "p |- p"])
    assert res.exit_code == 0
    assert "no countermodel found in battery" in res.output


def test_classical_validity(runner):
    res = invoke(runner, ["classical", "q, p |- q"])
    assert res.exit_code == 0
    assert "two-valued" in res.output
    res = invoke(runner, ["classical", "p |- q"])
    assert res.exit_code == 1
    assert res.output.startswith("2:")


# --- hilbert-verify -----------------------------------------------------------

def test_hilbert_verify_passes(runner):
    res = invoke(runner, ["hilbert-verify", "--dim", "2", "--trials", "25",
                          "--seed", "3"])
    assert res.exit_code == 0
    assert res.output.rstrip().endswith("PASS")
    for name in ("sasaki-closure-agreement", "fold-criterion-agreement",
                 "measurement-consistency"):
        assert name in res.output


def test_hilbert_verify_deterministic(runner):
    args = ["hilbert-verify", "--dim", "3", "--trials", "10", "--seed", "42"]
    first = invoke(runner, args)
    second = invoke(runner, args)
    assert first.output == second.output


def test_hilbert_verify_seed_from_environment(runner):
    by_flag = invoke(runner, ["hilbert-verify", "--dim", "2", "--trials", "8",
                              "--seed", "9"])
    by_env = invoke(runner, ["hilbert-verify", "--dim", "2", "--trials", "8"],
                    env={"ORTHOPROOF_SEED": "9"})
    assert by_flag.output == by_env.output


def test_hilbert_verify_tsv(runner):
    res = invoke(runner, ["hilbert-verify", "--dim", "2", "--trials", "5",
                          "--format", "tsv"])
    assert res.exit_code == 0
    rows = [line.split("\t") for line in res.output.strip().splitlines()]
    assert len(rows) == 3
    assert all(r[4] == "pass" for r in rows)


# --- catalog -------------------------------------------------------------------

def test_catalog_lists_every_entry(runner):
    res = invoke(runner, ["catalog", "--format", "tsv"])
    assert res.exit_code == 0
    rows = [line.split("\t") for line in res.output.strip().splitlines()]
    assert len(rows) >= 45
    assert rows[0][0] == "P2.1"
    ids = [r[0] for r in rows]
    assert "T3.8.OM1" in ids and "P5.7.EE" in ids


def test_catalog_plain_mentions_modes(runner):
    res = invoke(runner, ["catalog"])
    assert "T3.2.AX1" in res.output
    line = next(l for l in res.output.splitlines() if l.startswith("T3.2.AX1"))
    assert "[NOM_E]" in line


# --- repl ----------------------------------------------------------------------

def repl(runner, text, mode=None):
    args = ["repl"] if mode is None else ["repl", "--mode", mode]
    return invoke(runner, args, input=text)


def test_repl_assume_then_imp_i(runner):
    res = repl(runner, "assume p\nimp_i\nquit\n")
    assert res.exit_code == 0
    assert "1: p |- p" in res.output
    assert "2: |- p -> p" in res.output


def test_repl_exch_rejected_in_nom(runner):
    res = repl(runner, "assume a, b\nexch\nquit\n")
    assert "rejected: exch: not available in mode NOM" in res.output


def test_repl_exch_allowed_with_exchange(runner):
    res = repl(runner, "assume a, b\nexch\nquit\n", mode="NOM_E")
    assert "2: b, a |- b" in res.output


def test_repl_derived_forward_adds_a_line(runner):
    text = ("hyp h1: g |- p\nhyp h2: g |- p -> q\n"
            "g |- p by hyp h1\ng |- p -> q by hyp h2\n"
            "derived P2.1 from 1 2\nquit\n")
    res = repl(runner, text)
    assert "3: g |- q" in res.output


def test_repl_goal_reached_notice(runner):
    res = repl(runner, "goal: |- p -> p\nassume p\nimp_i\nquit\n")
    assert "goal reached." in res.output


def test_repl_export_recheck_roundtrip(runner, tmp_path):
    out = tmp_path / "session.nom"
    res = repl(runner, f"goal: |- p -> p\nassume p\nimp_i\nexport {out}\nquit\n")
    assert f"exported to {out}: accepted" in res.output
    res2 = invoke(runner, ["check", str(out)])
    assert res2.exit_code == 0
    assert "repl [NOM]: accepted" in res2.output


def test_repl_export_with_unreached_goal_is_rejected(runner, tmp_path):
    out = tmp_path / "stub.nom"
    res = repl(runner, f"goal: |- q -> q\nassume p\nexport {out}\nquit\n")
    assert f"exported to {out}: rejected" in res.output
    res2 = invoke(runner, ["check", str(out)])
    assert res2.exit_code == 1


def test_repl_quantifier_forward_steps(runner):
    text = ("R(y) |- R(y) by assume\n"
            "all_i x=y\n"
            "all_e t=c\n"
            "quit\n")
    res = repl(runner, text, mode="NOM_Q")
    assert "2: R(y) |- forall y. R(y)" not in res.output  # eigenvariable in context
    assert "rejected:" in res.output
    text2 = ("goal: |- forall y. R(y) -> R(y)\n"
             "R(y) |- R(y) by assume\n"
             "imp_i\n"
             "all_i x=y\n"
             "all_e t=c\n"
             "quit\n")
    res2 = repl(runner, text2, mode="NOM_Q")
    assert "2: |- R(y) -> R(y)" in res2.output
    assert "3: |- forall y. R(y) -> R(y)" in res2.output
    assert "goal reached." in res2.output
    assert "4: |- R(c) -> R(c)" in res2.output


def test_repl_forward_underdetermined_entry_asks_for_full_form(runner):
    res = repl(runner, "assume p\nderived C4.6.intro1\nquit\n")
    assert "state the target sequent" in res.output


def test_repl_forward_default_refs_need_enough_lines(runner):
    res = repl(runner, "imp_i\nquit\n")
    assert "rejected:" in res.output and "only 0 available" in res.output


def test_repl_full_form_line_rejected_with_kernel_message(runner):
    res = repl(runner, "|- p by assume\nquit\n")
    assert "rejected:" in res.output


def test_repl_show_and_help_and_hyp_validation(runner):
    res = repl(runner, "help\nhyp broken\nhyp h1: p |- p\nshow\nquit\n")
    assert "commands:" in res.output
    assert "usage: hyp NAME: SEQ" in res.output
    assert "mode: NOM" in res.output
    assert "goal: (unset)" in res.output


def test_repl_export_nothing(runner):
    res = repl(runner, "export /tmp/ignored.nom\nquit\n")
    assert "nothing to export" in res.output


def test_repl_bad_formula_is_reported_not_fatal(runner):
    res = repl(runner, "goal: p |-\nassume p\nquit\n")
    assert "rejected:" in res.output
    assert "1: p |- p" in res.output
