from __future__ import annotations

import json
from fractions import Fraction

import pytest

from hkdensity.cli import main
from hkdensity.exact import PiecewisePoly, Polynomial, rat

F = Fraction

KOSZUL_BETTI = {
    "betti": {"d": 2, "betti": [{"i": 1, "j": 1, "b": 2}, {"i": 2, "j": 2, "b": 1}]},
    "ring": {"type": "ci", "gens": [1, 1], "rels": []},
}

TENT_JSON = PiecewisePoly.build(
    [0, 1, 2], [Polynomial.of(0, 1), Polynomial.of(2, -1)]
).to_json()

TENT_PAIR = {
    "F": PiecewisePoly.monomial_tail(F(1), 1).to_json(),
    "f": TENT_JSON,
    "d": 2,
}

A2_INVARIANT_PAIR = {
    "semigroup": {
        "rank": 2,
        "gens": [[1, 1], [2, 0], [0, 2]],
        "weights": [1, 1],
        "p": 2,
    },
    "ideal": [[1, 1], [2, 0], [0, 2]],
}

HN_LINE = {"d": 1, "components": [{"slope": "-1", "rank": 1}]}


def write(tmp_path, name, payload) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_density_betti_roundtrip(tmp_path, capsys):
    inp = write(tmp_path, "koszul.json", KOSZUL_BETTI)
    code, out, err = run_cli(capsys, ["density-betti", "--in", inp])
    assert code == 0 and err == ""
    assert out.endswith("\n")
    payload = json.loads(out)
    assert payload["integral"] == "1"
    assert payload["support_end"] == "2"
    assert PiecewisePoly.from_json(payload["density"]) == PiecewisePoly.from_json(
        TENT_JSON
    )


def test_density_betti_explicit_normalization(tmp_path, capsys):
    # same table fed with ehat/n0 given directly instead of a ring
    alt = {"betti": KOSZUL_BETTI["betti"], "ehat": "1", "n0": 1}
    code_a, out_a, _ = run_cli(
        capsys, ["density-betti", "--in", write(tmp_path, "a.json", KOSZUL_BETTI)]
    )
    code_b, out_b, _ = run_cli(
        capsys, ["density-betti", "--in", write(tmp_path, "b.json", alt)]
    )
    assert code_a == code_b == 0
    assert out_a == out_b


def test_density_empirical_level_one(tmp_path, capsys):
    inp = write(tmp_path, "a2.json", A2_INVARIANT_PAIR)
    code, out, err = run_cli(
        capsys, ["density-empirical", "--in", inp, "--level", "1"]
    )
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["integral"] == "3/2"
    assert payload["q"] == 2
    f = PiecewisePoly.from_json(payload["f_step"])
    assert f(0) == F(1, 2)
    assert f(F(1, 2)) == F(3, 2)
    assert f(1) == 1
    g = PiecewisePoly.from_json(payload["g_interp"])
    assert g.is_continuous()


def test_compare_csv_and_thread_byte_identity(tmp_path, capsys):
    inp = write(tmp_path, "a2.json", A2_INVARIANT_PAIR)
    argv = ["compare", "--spec", inp, "--levels", "1,2"]
    code_a, out_a, _ = run_cli(capsys, argv + ["--threads", "1"])
    code_b, out_b, _ = run_cli(capsys, argv + ["--threads", "3"])
    assert code_a == code_b == 0
    assert out_a == out_b
    lines = out_a.splitlines()
    assert lines[0] == "level,q,sup_distance,sup_distance_decimal,integral,integral_decimal"
    assert len(lines) == 3
    first = lines[1].split(",")
    assert first[0] == "1" and first[1] == "2"
    # every exact column reparses; decimal column mirrors it
    for row in lines[1:]:
        cells = row.split(",")
        assert float(rat(cells[2])) == float(cells[3])
        assert float(rat(cells[4])) == float(cells[5])


def test_segre_command(tmp_path, capsys):
    a = write(tmp_path, "a.json", TENT_PAIR)
    b = write(tmp_path, "b.json", TENT_PAIR)
    code, out, err = run_cli(capsys, ["segre", "--a", a, "--b", b])
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["d"] == 3
    assert payload["ehk"] == "4/3"


def test_rescale_command(tmp_path, capsys):
    inp = write(tmp_path, "tent.json", TENT_JSON)
    code, out, _ = run_cli(
        capsys, ["rescale", "--in", inp, "--l0", "2", "--rank", "4"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["integral"] == "1/4"
    assert payload["support_end"] == "1"


def test_catalog_command(tmp_path, capsys):
    code, out, err = run_cli(capsys, ["catalog", "--family", "E8"])
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["verdict"]["table_status"] == "agrees"
    assert payload["verdict"]["ehk"] == "239/120"
    code, out, _ = run_cli(capsys, ["catalog", "--family", "A", "--n", "2"])
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"]["table_status"] == "discrepancy"
    assert payload["minor_check"]["verdict"] == "ok"


def test_hn2_command(tmp_path, capsys):
    inp = write(tmp_path, "hn.json", HN_LINE)
    code, out, err = run_cli(capsys, ["hn2", "--in", inp, "--twists", "1,1"])
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["integral"] == "1"
    assert PiecewisePoly.from_json(payload["density"]) == PiecewisePoly.from_json(
        TENT_JSON
    )


def test_integrate_command(tmp_path, capsys):
    inp = write(tmp_path, "tent.json", TENT_JSON)
    code, out, _ = run_cli(capsys, ["integrate", "--in", inp])
    assert code == 0
    payload = json.loads(out)
    assert payload["integral"] == "1"
    assert payload["integral_decimal"] == "1.0"


def test_sample_spacing(tmp_path, capsys):
    inp = write(tmp_path, "tent.json", TENT_JSON)
    code, out, _ = run_cli(capsys, ["sample", "--in", inp, "--count", "4"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,x_decimal,value,value_decimal"
    xs = [row.split(",")[1] for row in lines[1:]]
    assert xs == ["0.0", "0.55", "1.1", "1.65", "2.2"]
    assert len(lines) == 6


def test_out_file_matches_stdout(tmp_path, capsys):
    inp = write(tmp_path, "tent.json", TENT_JSON)
    code, out, _ = run_cli(capsys, ["integrate", "--in", inp])
    assert code == 0
    dest = tmp_path / "result.json"
    code2 = main(["integrate", "--in", inp, "--out", str(dest)])
    capsys.readouterr()
    assert code2 == 0
    assert dest.read_text() == out


def test_repeat_runs_byte_identical(tmp_path, capsys):
    inp = write(tmp_path, "koszul.json", KOSZUL_BETTI)
    outs = set()
    for _ in range(3):
        code, out, _ = run_cli(capsys, ["density-betti", "--in", inp])
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_exit_code_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, err = run_cli(capsys, ["density-betti", "--in", str(bad)])
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "InputError"
    code, _, _ = run_cli(capsys, ["no-such-command"])
    assert code == 1
    code, _, _ = run_cli(capsys, ["density-betti"])  # missing --in
    assert code == 1


def test_exit_code_validation_with_residual(tmp_path, capsys):
    broken = {
        "betti": {
            "d": 2,
            "betti": [{"i": 1, "j": 1, "b": 3}, {"i": 2, "j": 2, "b": 1}],
        },
        "ehat": "1",
        "n0": 1,
    }
    inp = write(tmp_path, "broken.json", broken)
    code, out, err = run_cli(capsys, ["density-betti", "--in", inp])
    assert code == 2 and out == ""
    report = json.loads(err)
    assert report["error"] == "BettiIdentityError"
    assert "residual" in report
    assert any(rat(c) != 0 for c in report["residual"])


def test_exit_code_capacity(tmp_path, capsys):
    inp = write(tmp_path, "a2.json", A2_INVARIANT_PAIR)
    code, out, err = run_cli(
        capsys,
        ["density-empirical", "--in", inp, "--level", "6", "--max-points", "100"],
    )
    assert code == 3 and out == ""
    assert json.loads(err)["error"] == "CapacityError"
