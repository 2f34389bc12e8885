import json
from importlib import resources

import pytest

from clustrop import jsonio
from clustrop.cli import main
from clustrop.glsseed import gls_exchange_matrix
from clustrop.rootsys import cartan_matrix

NINE = "3,2,3,2,1,2,3,2,1"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_seed_writes_c3_matrix(capsys, tmp_path):
    out = tmp_path / "m.json"
    code, _, _ = run(capsys, "seed", "--type", "C3", "--word", NINE, "--out", str(out))
    assert code == 0
    obj = json.loads(out.read_text())
    assert jsonio.matrix_from_obj(obj) == gls_exchange_matrix(cartan_matrix("C", 3), (3, 2, 3, 2, 1, 2, 3, 2, 1))


def test_mutate_restrict_pipeline(capsys, tmp_path):
    m = tmp_path / "m.json"
    r = tmp_path / "r.json"
    assert run(capsys, "seed", "--type", "C3", "--word", NINE, "--out", str(m))[0] == 0
    assert run(capsys, "restrict", "--in", str(m), "--keep", "1,2,3,6,8", "--out", str(r))[0] == 0
    code, stdout, _ = run(capsys, "mutate", "--in", str(r), "--seq", "6,2,3")
    assert code == 0
    obj = json.loads(stdout)
    assert obj["rows"]["3"] == [-1, 2, 0, -2, 0]


def test_mutation_labels_not_positions(capsys, tmp_path):
    r = tmp_path / "r.json"
    assert run(capsys, "seed", "--type", "C3", "--word", NINE, "--out", str(r))[0] == 0
    code, stdout, _ = run(capsys, "restrict", "--in", str(r), "--keep", "1,2,3,6,8")
    obj = json.loads(stdout)
    assert obj["cols"] == [1, 2, 3, 6, 8]  # labels survive restriction


def test_usage_error_exit_code(capsys):
    code, _, err = run(capsys, "mutate", "--seq", "1")
    assert code == 1 and "usage error" in err


def test_parse_error_names_field(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"cols": [1,2], "frozen": [], "d": [1,1]}')
    code, _, err = run(capsys, "mutate", "--in", str(bad), "--seq", "1")
    assert code == 1 and "rows" in err


def test_polytope_qgf_positive_and_negative(capsys, tmp_path):
    good = tmp_path / "p.json"
    good.write_text(json.dumps({"vertices": [["2", "2"], ["2", "-2"], ["-2", "2"], ["-2", "-2"]]}))
    code, stdout, _ = run(capsys, "polytope", "qgf", "--in", str(good))
    assert code == 0
    assert json.loads(stdout)["size"] == 2
    bad = tmp_path / "q.json"
    bad.write_text(json.dumps({"vertices": [["1", "2"], ["1", "-2"], ["-1", "2"], ["-1", "-2"]]}))
    code, stdout, _ = run(capsys, "polytope", "qgf", "--in", str(bad))
    assert code == 2
    assert json.loads(stdout)["certified"] is False


def test_polytope_lattice_points(capsys, tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"vertices": [["1/2", "0"], ["0", "1/2"], ["-1/2", "0"], ["0", "-1/2"]]}))
    code, stdout, _ = run(capsys, "polytope", "lattice-points", "--in", str(p), "--q", "2")
    assert code == 0 and json.loads(stdout)["count"] == 5


def test_polytope_slice(capsys, tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"vertices": [["1", "1"], ["1", "-1"], ["-1", "1"], ["-1", "-1"]]}))
    code, stdout, _ = run(capsys, "polytope", "slice", "--in", str(p), "--normal", "1,0", "--offset", "0")
    assert code == 0
    obj = json.loads(stdout)
    assert obj["section"]["dim"] == 1 and obj["plus"]["dim"] == 2


def test_trop_mutate_command(capsys, tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"cols": [1, 2], "frozen": [2], "d": [1, 1], "rows": {"1": [0, -2]}}))
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"vertices": [["0", "0"], ["-1", "2"], ["1", "0"], ["1", "2"]]}))
    code, stdout, _ = run(capsys, "trop-mutate", "--in", str(p), "--matrix", str(m), "--k", "1")
    assert code == 0 and json.loads(stdout)["convex"] is True


def test_search_budget_exit_code(capsys, tmp_path):
    r = tmp_path / "r.json"
    assert run(capsys, "seed", "--type", "C3", "--word", NINE, "--out", str(r))[0] == 0
    code, stdout, _ = run(
        capsys, "search-large-entry", "--in", str(r), "--target", "1000000", "--budget", "50", "--beam", "4"
    )
    assert code == 3 and json.loads(stdout)["found"] is False


def test_class_bfs_exit_codes(capsys, tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"cols": [1, 2], "frozen": [], "d": [1, 1], "rows": {"1": [0, 1], "2": [-1, 0]}}))
    code, stdout, _ = run(capsys, "class-bfs", "--in", str(m))
    assert code == 0 and json.loads(stdout)["status"] == "finite"
    code, stdout, _ = run(capsys, "class-bfs", "--in", str(m), "--node-cap", "1")
    assert json.loads(stdout)["status"] in ("finite", "cap_exhausted")


def test_certify_distinct_command(capsys, tmp_path):
    fam = json.loads((resources.files("clustrop") / "fixtures" / "family_2stage.json").read_text())["family"]
    f = tmp_path / "f.json"
    f.write_text(json.dumps(fam))
    out = tmp_path / "cert.json"
    code, _, _ = run(capsys, "certify-distinct", "--family", str(f), "--out", str(out))
    assert code == 0
    cert = json.loads(out.read_text())
    assert cert["pairwise_distinct"] is True
    assert [st["entry"] for st in cert["stages"]] == [-2, -4]


def test_fixtures_run(capsys):
    code, stdout, _ = run(capsys, "fixtures", "run")
    assert code == 0
    assert "13/13 fixtures passed" in stdout


def test_outputs_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "seed", "--type", "G2", "--word", "1,2,1,2,1,2", "--out", str(a))
    run(capsys, "seed", "--type", "G2", "--word", "1,2,1,2,1,2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_round_trip_matrix_format(capsys, tmp_path):
    m = tmp_path / "m.json"
    run(capsys, "seed", "--type", "B3", "--word", NINE, "--out", str(m))
    eps = jsonio.matrix_from_obj(json.loads(m.read_text()))
    assert jsonio.dumps(jsonio.matrix_to_obj(eps)) == m.read_text()


def test_round_trip_polytope_format(tmp_path):
    obj = {"vertices": [["-1", "0"], ["0", "-1"], ["1/2", "1/2"]]}
    P = jsonio.polytope_from_obj(obj)
    again = jsonio.polytope_from_obj(json.loads(jsonio.dumps(jsonio.polytope_to_obj(P))))
    assert P == again


def test_round_trip_family_format():
    fam_obj = json.loads((resources.files("clustrop") / "fixtures" / "family_2stage.json").read_text())["family"]
    fam = jsonio.family_from_obj(fam_obj)
    again = jsonio.family_from_obj(json.loads(jsonio.dumps(jsonio.family_to_obj(fam))))
    assert again.matrix == fam.matrix
    assert again.polytope == fam.polytope
    assert again.stages == fam.stages


def test_rational_parse_rejects_garbage():
    with pytest.raises(jsonio.FormatError):
        jsonio.rat_from_str("1/0")
    with pytest.raises(jsonio.FormatError):
        jsonio.rat_from_str("pi")
