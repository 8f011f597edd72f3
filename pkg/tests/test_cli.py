import subprocess
import sys

import pytest

from pdgames.cli import run_command
from pdgames.textio import load


def run(*argv):
    res = run_command(list(argv))
    head, _, tail = res.report.partition("---\n")
    values = dict(line.split("=", 1) for line in tail.splitlines() if line)
    return res.exit_code, values, head


def test_triangle_member_positive():
    code, values, _ = run("triangle", "member", "game:lemma42:anbn.chain", "⊥ a b ( # )")
    assert code == 0 and values["verdict"] == "true"


def test_triangle_member_negative():
    code, values, _ = run("triangle", "member", "game:lemma42:anbn.chain", "⊥ b a ( # )")
    assert code == 1 and values["verdict"] == "false"


def test_limit_report():
    code, values, _ = run("limit", "game:prop45.A1", "⊥ a b c ( # )")
    assert code == 0
    assert values["strictlyUnbounded"] == "true"
    assert values["limit"] == "⊥₁ a ( # )"
    assert values["completeness"] == "Complete"


def test_validate_rejects_bottom_pop(tmp_path):
    f = tmp_path / "bad.pda"
    f.write_text("states: p\ninput: a\nstack: ⊥\nbottom: ⊥\ninitial: p\np , a , ⊥ -> pop(p)\n")
    code, values, head = run("validate", str(f))
    assert code == 2 and values["valid"] == "false"
    assert "pops the bottom symbol" in head


def test_validate_catalog_objects():
    for name in ("dpda:eraser", "game:prop45", "game:lemma42:anbn.chain"):
        assert run("validate", name)[0] == 0


def test_parse_errors_exit_2(tmp_path):
    f = tmp_path / "broken.pda"
    f.write_text("states: p\nwhat: ever\n")
    assert run("validate", str(f))[0] == 2
    assert run("limit", "dpda:eraser", "not a lasso")[0] == 2
    assert run("classify", "no-such-thing")[0] == 2
    assert run("frobnicate")[0] == 2


def test_classify_and_accepts():
    code, values, _ = run("classify", "dpda:eraser")
    assert values == {"deterministic": "true", "realTime": "true", "states": "1"}
    assert run("accepts", "dpda:anbn", "aabb")[0] == 0
    assert run("accepts", "dpda:anbn", "aab")[0] == 1
    assert run("accepts", "dpda:L1", "abc(d)")[0] == 0
    assert run("accepts", "lang:V", "aabbc")[0] == 0


def test_game_commands():
    assert run("game", "solve", "game:prop45", "q:⊥ a b c")[1]["verdict"] == "EveWins"
    code, values, _ = run("game", "solve", "game:prop46", "q:⊥aabc")
    assert code == 1 and values["verdict"] == "AdamWins"
    code, values, _ = run("game", "solve", "game:prop45", "q:⊥abc", "--depth", "1")
    assert code == 3 and values["verdict"] == "Unknown"
    code, values, head = run("game", "slice", "game:lemma42:anbn", "q", "4", "--alphabet", "a b ←")
    assert code == 0 and values["count"] == "10"
    assert "a b" in head.splitlines()
    assert run("game", "slice", "game:prop45", "q", "3", "--depth", "2", "--height", "3")[0] == 3


def test_export_and_complement_round_trip(tmp_path):
    from pdgames.catalog import lookup
    from pdgames.triangle import complement_chain

    out = tmp_path / "g.game"
    assert run("catalog", "export", "game:prop45", "-o", str(out))[0] == 0
    assert load(out) == lookup("game:prop45")

    code, values, _ = run("triangle", "complement", "game:prop45", "-o", str(tmp_path / "cc"))
    assert code == 0
    assert load(values["path"]) == complement_chain(lookup("game:prop45.chain"))
    assert run("triangle", "member", values["path"], "⊥ a b b c ( # )")[0] == 0
    assert run("catalog", "export", "lang:V")[0] == 2


def test_suite_mutation_is_caught():
    code, values, head = run("suite", "--only", "4", "--mutate", "prop46-partition")
    assert code == 1 and values["failedCriteria"] == "4"
    assert head.startswith("[FAIL] 4.")


def test_suite_step_ceiling(monkeypatch):
    monkeypatch.setenv("WORKBENCH_STEP_CEILING", "10")
    code, values, _ = run("suite", "--only", "2,5")
    assert code == 3 and values["exhausted"] == "2"


def test_reports_are_deterministic():
    a = run_command(["game", "slice", "game:lemma42:anbn", "q", "3", "--alphabet", "a b ←"]).report
    b = run_command(["game", "slice", "game:lemma42:anbn", "q", "3", "--alphabet", "a b ←"]).report
    assert a == b


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pdgames", "triangle", "member", "game:prop45.chain", "⊥ a a b b b c c c ( # )"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "verdict=true" in proc.stdout
