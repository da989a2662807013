import json

import pytest

from cptlab import corpus
from cptlab.cli import main


@pytest.fixture(scope="module")
def registry():
    return corpus.builtin_examples()


def test_registry_is_populated(registry):
    assert len(registry) >= 8
    for entry in registry.values():
        assert entry.expected
        assert entry.run is not None


def test_every_entry_matches_expectations(registry):
    for name, entry in registry.items():
        rep = entry.run(12, 3)
        assert rep.passed, (name, rep.lines)


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_check_pass_exit_zero(tmp_path, capsys):
    f = _write(tmp_path, "maxwell.cpt", corpus.MAXWELL_SRC)
    code = main(["check", f, "--group", "Lp", "--mode", "classical",
                 "--samples", "3"])
    assert code == 0
    assert "pass" in capsys.readouterr().out


def test_check_fail_exit_one(tmp_path, capsys):
    bad = """space dim 4 signature 1,3
field u : vector
mode commutative
formula f = u[0]*u[0] + u[1]
theory t { f }
"""
    f = _write(tmp_path, "bad.cpt", bad)
    code = main(["check", f, "--samples", "2"])
    assert code == 1


def test_parse_error_exit_three(tmp_path, capsys):
    f = _write(tmp_path, "broken.cpt", "space huh\n")
    code = main(["check", f])
    assert code == 3
    assert "error" in capsys.readouterr().err


def test_harness_not_applicable_exit_two(tmp_path, capsys):
    src = """space dim 4 signature 1,3
field phi : trivial(2) charge +
mode commutative
formula f = i*phi[0]
theory t { f } density
"""
    f = _write(tmp_path, "na.cpt", src)
    code = main(["harness", f, "--theorem", "cpt", "--dollar", "star",
                 "--samples", "2"])
    assert code == 2
    assert "not applicable" in capsys.readouterr().out


def test_harness_pass(tmp_path, capsys):
    f = _write(tmp_path, "kg.cpt", corpus.KLEIN_GORDON_SRC)
    code = main(["harness", f, "--theorem", "cpt", "--dollar", "star",
                 "--samples", "3"])
    assert code == 0
    out = capsys.readouterr().out
    assert "CPT" in out


def test_transform_table(tmp_path, capsys):
    f = _write(tmp_path, "scalar.cpt", corpus.COMPLEX_SCALAR_SRC)
    code = main(["transform", f, "--element", "total-reflection",
                 "--action", "quantum"])
    assert code == 0
    out = capsys.readouterr().out
    assert "(-i)*conj(phi)[0]" in out


def test_classify_command(tmp_path, capsys):
    f = _write(tmp_path, "scalar.cpt", corpus.COMPLEX_SCALAR_SRC)
    code = main(["classify", f, "--element", "pt", "--action", "quantum"])
    assert code == 0
    assert "CPT" in capsys.readouterr().out


def test_axioms_command(capsys):
    assert main(["axioms", "--signature", "1,2", "--samples", "15"]) == 0
    assert main(["axioms", "--signature", "1,1", "--samples", "15"]) == 1
    out = capsys.readouterr().out
    assert "PT-2" in out
    assert main(["axioms", "--galilean", "--dim", "3", "--samples", "10"]) == 1
    assert main(["axioms"]) == 3


def test_counterexample_command(capsys):
    assert main(["counterexample", "2d", "--samples", "4"]) == 0
    out = capsys.readouterr().out
    assert "alpha^4 = -1" in out
    assert main(["counterexample", "galilean", "--dim", "3", "--samples", "4"]) == 0


def test_examples_command(capsys):
    assert main(["examples", "--list"]) == 0
    assert main(["examples", "complex-scalar", "--samples", "4"]) == 0
    assert main(["examples", "nonsense"]) == 3


def test_json_output(tmp_path, capsys):
    f = _write(tmp_path, "kg.cpt", corpus.KLEIN_GORDON_SRC)
    code = main(["check", f, "--samples", "2", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "pass"
    assert payload["reports"]


def test_usage_error(capsys):
    assert main(["check"]) == 3
    assert main(["bogus-command"]) == 3


def test_output_byte_identical_across_runs(tmp_path, capsys):
    f = _write(tmp_path, "scalar.cpt", corpus.COMPLEX_SCALAR_SRC)
    outs = []
    for _ in range(2):
        code = main(["transform", f, "--element", "pt", "--action", "quantum",
                     "--seed", "7"])
        assert code == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    for _ in range(2):
        assert main(["axioms", "--signature", "1,2", "--samples", "10",
                     "--seed", "3", "--json"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[2] == outs[3]
