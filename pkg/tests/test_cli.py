import io
import json
from contextlib import redirect_stdout
from importlib import resources

import jsonschema
import pytest

from lingalg import cli


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def schema(name):
    return json.loads(
        resources.files("lingalg").joinpath(f"schemas/{name}.schema.json").read_text()
    )


def validate(name, text):
    payload = json.loads(text)
    jsonschema.validate(payload, schema(name))
    return payload


def data_path(name):
    return str(resources.files("lingalg").joinpath(f"data/{name}"))


# ---------------------------------------------------------------------------
# per-subcommand behavior and schema conformance
# ---------------------------------------------------------------------------


def test_tree_counts_only():
    code, out = run_cli(["tree", "--depth", "3", "--counts-only"])
    assert code == 0
    payload = validate("tree", out)
    assert payload["counts"] == [[1, 0], [0, 1], [1, 1], [1, 2]]
    assert payload["nodes"] is None


def test_tree_with_nodes():
    code, out = run_cli(["tree", "--depth", "4"])
    payload = validate("tree", out)
    assert code == 0
    assert len(payload["nodes"]) == sum(z + o for z, o in payload["counts"])
    root = payload["nodes"][0]
    assert root == {"id": 0, "state": "zero", "step": 0, "parent": None, "rule": None}


def test_tree_symmetric_counts_swap():
    _, plain = run_cli(["tree", "--depth", "6", "--counts-only"])
    _, mirrored = run_cli(["tree", "--depth", "6", "--counts-only", "--symmetric"])
    a = json.loads(plain)["counts"]
    b = json.loads(mirrored)["counts"]
    assert [[o, z] for z, o in a] == b
    validate("tree", mirrored)


def test_fib_number_and_matrix():
    code, out = run_cli(["fib", "--n", "7"])
    assert code == 0
    assert validate("fib", out) == {"n": 7, "fib": 13}
    code, out = run_cli(["fib", "--n", "6", "--matrix"])
    assert validate("fib", out) == {"n": 6, "matrix": [[13, 8], [8, 5]]}


def test_dicke_ops():
    code, out = run_cli(["dicke", "--N", "4", "--l", "1", "--op", "sigma+"])
    payload = validate("dicke", out)
    assert payload["state"] == {"N": 4, "l": 2}
    assert abs(payload["coefficient"] - 2.449489742783) < 1e-9

    _, out = run_cli(["dicke", "--N", "4", "--l", "4", "--op", "sigma+"])
    payload = validate("dicke", out)
    assert payload["coefficient"] == 0.0 and payload["state"] is None

    _, out = run_cli(["dicke", "--N", "10", "--l", "3", "--op", "s3"])
    assert validate("dicke", out)["value"] == -2.0

    _, out = run_cli(["dicke", "--N", "10000", "--l", "10", "--op", "contraction"])
    assert validate("dicke", out)["deviation"] == 0.002


def test_bogoliubov_report():
    code, out = run_cli(["bogoliubov", "--theta", "0.5", "--n-max", "40", "--report"])
    assert code == 0
    payload = validate("bogoliubov", out)
    mode = payload["per_mode"][0]
    assert abs(mode["number_expectation"] - 0.271540317408) < 1e-9
    assert abs(mode["entropy"] - 0.659452959168) < 1e-9
    assert len(mode["weights"]) == 41


def test_bogoliubov_parallel_matches_serial():
    _, serial = run_cli(["bogoliubov", "--theta", "0.3", "--modes", "4", "--n-max", "30"])
    _, parallel = run_cli(
        ["bogoliubov", "--theta", "0.3", "--modes", "4", "--n-max", "30",
         "--parallel-modes", "4"]
    )
    assert serial == parallel
    payload = validate("bogoliubov", serial)
    assert payload["totals"]["number"] == pytest.approx(
        4 * payload["per_mode"][0]["number_expectation"], rel=1e-12
    )


def test_entropy_sweep_csv():
    code, out = run_cli(["entropy", "--theta-sweep", "0.1:0.5:0.1", "--n-max", "40"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "theta,entropy,number,overlap_with_bare"
    assert len(lines) == 6
    last = lines[-1].split(",")
    assert float(last[0]) == 0.5
    assert abs(float(last[1]) - 0.659452959168) < 1e-9


def test_heat_report():
    code, out = run_cli(
        ["heat", "--omega", "1.0", "--beta", "1.0", "--ramp", "0.6534:0.7534:101"]
    )
    assert code == 0
    payload = validate("heat", out)
    assert payload["stationary_residual"] <= 1e-4
    assert payload["max_residual"] > payload["stationary_residual"]


def test_derive_golden_bytes():
    code, out = run_cli(
        [
            "derive",
            "--lexicon", data_path("wh_question.lexicon.json"),
            "--script", data_path("wh_question.script.json"),
        ]
    )
    assert code == 0
    golden = resources.files("lingalg").joinpath("data/wh_question.golden.json").read_text()
    assert out == golden
    payload = validate("derive", out)
    assert payload["pf"] == ["which", "books", "did", "you", "read"]


def test_derive_crash_exits_2(tmp_path):
    lexicon = [
        {"id": "p", "phon": "p", "features": ["+N", "cat:N"]},
        {"id": "q", "phon": "q", "features": ["+N", "cat:N"]},
        {"id": "r", "phon": "r", "features": ["+V", "cat:V"]},
        {"id": "s", "phon": "s", "features": ["+V", "cat:V"]},
    ]
    script = [
        {"op": "em", "left": {"select": "p"}, "right": {"select": "q"}, "as": "np"},
        {"op": "em", "left": {"select": "r"}, "right": {"select": "s"}, "as": "vp"},
        {"op": "em", "left": {"ref": "np"}, "right": {"ref": "vp"}, "as": "clause"},
        {"op": "transfer", "root": {"ref": "clause"}},
    ]
    lex_file = tmp_path / "lex.json"
    script_file = tmp_path / "script.json"
    lex_file.write_text(json.dumps(lexicon))
    script_file.write_text(json.dumps(script))
    code, out = run_cli(["derive", "--lexicon", str(lex_file), "--script", str(script_file)])
    assert code == 2
    payload = validate("derive", out)
    assert payload["errors"][0]["reason"] == "unlabelable"


def test_derive_pic_crash(tmp_path):
    lexicon = json.loads(
        resources.files("lingalg").joinpath("data/wh_question.lexicon.json").read_text()
    )
    script = [
        {"op": "em", "left": {"select": "read"}, "right": {"select": "books"}, "as": "vp"},
        {"op": "em", "left": {"select": "did"}, "right": {"ref": "vp"}, "as": "clause"},
        {"op": "close", "root": {"ref": "clause"}},
        {"op": "im", "root": {"ref": "clause"}, "target": {"leaves": ["books"]}},
    ]
    lex_file = tmp_path / "lex.json"
    script_file = tmp_path / "script.json"
    lex_file.write_text(json.dumps(lexicon))
    script_file.write_text(json.dumps(script))
    code, out = run_cli(["derive", "--lexicon", str(lex_file), "--script", str(script_file)])
    assert code == 2
    assert json.loads(out)["errors"][0]["reason"] == "phase-error"


# ---------------------------------------------------------------------------
# process contract: determinism, exit codes, env overrides
# ---------------------------------------------------------------------------


def test_byte_identical_reruns():
    for argv in (
        ["tree", "--depth", "5"],
        ["bogoliubov", "--theta", "0.4", "--n-max", "30"],
        ["heat", "--omega", "1.0", "--beta", "0.7", "--ramp", "0.4:0.6:21"],
    ):
        _, first = run_cli(argv)
        _, second = run_cli(argv)
        assert first == second


def test_usage_error_exits_64():
    with pytest.raises(SystemExit) as err:
        run_cli(["not-a-command"])
    assert err.value.code == 64
    with pytest.raises(SystemExit) as err:
        run_cli(["tree"])  # missing --depth
    assert err.value.code == 64


def test_computation_error_exits_1():
    code, _ = run_cli(["tree", "--depth", "99"])
    assert code == 1
    code, _ = run_cli(["bogoliubov", "--theta", "5.0", "--n-max", "10"])
    assert code == 1
    code, _ = run_cli(["derive", "--lexicon", "/nonexistent.json", "--script", "/x.json"])
    assert code == 1


def test_env_override_sets_default_cutoff(monkeypatch):
    monkeypatch.setenv("LINGALG_N_MAX", "25")
    _, out = run_cli(["bogoliubov", "--theta", "0.4"])
    assert json.loads(out)["n_max"] == 25


def test_floats_printed_at_12_significant_digits():
    _, out = run_cli(["bogoliubov", "--theta", "0.5", "--n-max", "40"])
    num = json.loads(out)["per_mode"][0]["number_expectation"]
    assert num == float(f"{0.2715403174076219:.12g}")
