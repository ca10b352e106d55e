from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction


from kverlinde.cli import main
from kverlinde.scalars import CycloNum
from kverlinde.series import TSeries


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


VERLINDE = {"type": "A", "rank": 1, "genus": 2, "level": 1}


def test_index_verlinde(tmp_path):
    spec = write(tmp_path, "v.json", VERLINDE)
    out = tmp_path / "out.json"
    assert main(["index", spec, "--out", str(out)]) == 0
    body = json.loads(out.read_text())
    assert body["rational"] == ["4"]
    assert TSeries.from_json(body["result"]["total"]) == 4


def test_index_missing_level(tmp_path, capsys):
    spec = write(tmp_path, "bad.json", {"type": "A", "rank": 1, "genus": 2})
    assert main(["index", spec]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "spec"
    assert any("level" in e["message"] for e in err["details"])


def test_index_lists_every_violation(tmp_path, capsys):
    spec = write(tmp_path, "bad.json", {"type": "B", "rank": 9, "genus": -1, "level": "x"})
    assert main(["index", spec]) == 2
    details = json.loads(capsys.readouterr().err)["details"]
    assert len(details) >= 4


def test_index_level_below_bound(tmp_path, capsys):
    spec = write(tmp_path, "bad.json", dict(VERLINDE, level=-2))
    assert main(["index", spec]) == 2
    assert "-h^vee" in capsys.readouterr().err


def test_index_semantic_errors(tmp_path, capsys):
    spec = write(tmp_path, "bad.json", dict(VERLINDE, deformation={"highest_weight": [1, 0]}, type="A", rank=3))
    assert main(["index", spec]) == 2
    spec = write(tmp_path, "bad2.json", {"type": "A", "rank": 5, "genus": 0, "level": 1})
    assert main(["index", spec]) == 2


def test_index_csv_and_both_backends(tmp_path):
    spec = write(
        tmp_path,
        "s.json",
        {"type": "A", "rank": 1, "genus": 2, "level": 2, "deformation": {"highest_weight": [2]}, "order": 2,
         "output": {"format": "csv"}},
    )
    out = tmp_path / "o.csv"
    assert main(["index", spec, "--backend", "both", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "k,t_order,value_rational,value_float_re,value_float_im"
    assert len(lines) == 4
    for line in lines[1:]:
        k, j, rat, re_, im_ = line.split(",")
        assert k == "2"
        assert abs(float(re_) - float(Fraction(rat))) < 1e-8 * max(1.0, abs(float(re_)))
        assert abs(float(im_)) < 1e-8


def test_index_json_round_trip(tmp_path):
    spec = write(
        tmp_path,
        "s.json",
        {"type": "A", "rank": 2, "genus": 1, "level": 1, "deformation": {"highest_weight": [1, 0]}, "order": 2,
         "boundary": [{"highest_weight": [1, 0], "dual": True}], "output": {"breakdown": True}},
    )
    out = tmp_path / "o.json"
    assert main(["index", spec, "--backend", "both", "--out", str(out)]) == 0
    body = json.loads(out.read_text())
    total = TSeries.from_json(body["result"]["total"])
    for c, js in zip(total.coeffs, body["result"]["total"]["coeffs"]):
        assert CycloNum.from_json(js) == c
        assert CycloNum.from_json(c.to_json()).to_json() == js
    assert len(body["float"]) == 3 and "breakdown" in body["result"]


def test_verify_unknown_suite():
    assert main(["verify", "nope"]) == 2


def test_verify_lambda(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "lambda", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["passed"]


def test_pairing_trivial_deformation(tmp_path):
    spec = write(tmp_path, "p.json", {"type": "A", "rank": 1, "genus": 2, "levels": [1, 2, 3, 4, 5, 6], "order": 1})
    out = tmp_path / "p.out"
    assert main(["pairing", spec, "--out", str(out)]) == 0
    body = json.loads(out.read_text())
    assert all(r["value_rational"] == "0" for r in body["rows"] if r["t_order"] == 1)
    assert body["quasi_poly"]["fitted"]["degree"] == 3


def test_pairing_not_in_lattice(tmp_path):
    spec = write(tmp_path, "p.json", {"type": "A", "rank": 1, "genus": 1, "weights": [["1/2"]], "levels": [1, 2]})
    assert main(["pairing", spec]) == 2


def test_pairing_csv_sidecar(tmp_path):
    spec = write(
        tmp_path,
        "p.json",
        {"type": "A", "rank": 1, "genus": 0, "weights": [["1/2"]], "levels": [2, 4, 6, 8], "order": 1,
         "deformation": {"highest_weight": [1]}, "mode": "derivative", "output": {"format": "csv"}},
    )
    out = tmp_path / "t.csv"
    assert main(["pairing", spec, "--out", str(out)]) == 0
    assert out.read_text().startswith("k,t_order,")
    block = json.loads((tmp_path / "t.csv.quasipoly.json").read_text())
    assert "fitted" in block


def test_thread_count_does_not_change_output(tmp_path):
    spec = write(
        tmp_path,
        "s.json",
        {"type": "A", "rank": 2, "genus": 2, "level": 2, "deformation": {"highest_weight": [1, 1]}, "order": 2,
         "output": {"breakdown": True}},
    )
    outs = []
    for threads in ("1", "3"):
        out = tmp_path / f"o{threads}.json"
        assert main(["index", spec, "--backend", "both", "--threads", threads, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point(tmp_path):
    spec = write(tmp_path, "v.json", VERLINDE)
    res = subprocess.run([sys.executable, "-m", "kverlinde", "index", spec], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["rational"] == ["4"]
