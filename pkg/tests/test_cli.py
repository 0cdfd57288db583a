import io
import json
import subprocess
import sys

import pytest

from schubreal import schemas
from schubreal.cli import run

GR24 = {"space": "Gr", "d": 2, "m": 4,
        "conditions": [{"point": p, "shape": [1]} for p in ["0", "1", "2", "3"]]}
OG3 = {"space": "OG", "n": 3, "seed": 0,
       "conditions": [{"point": p, "shape": [1]} for p in ["-3", "-1/2", "0", "1", "5/2", "4"]]}
Y_EX = {"d": 2, "m": 5, "rows": [["1", "0", "0", "2", "0"], ["0", "1", "0", "0", "1/2"]]}


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    doc = json.loads(out)
    schema = schemas.ERROR_OUTPUT if "error" in doc and "message" in doc else schemas.OUTPUTS[argv[0]]
    schemas.validate(doc, schema)
    return code, doc


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)
    return _write


class TestVerifyFlags:
    def test_examples(self):
        code, doc = call_json("verify-flags", "--n", 2, "--points", "0,1,infinity")
        assert code == 0 and doc["passed"]
        code, doc = call_json("verify-flags", "--n", 4, "--points", "-3/2")
        assert code == 0 and doc["points"] == ["-3/2"]

    def test_malformed(self):
        code, doc = call_json("verify-flags", "--n", 2, "--points", "abc")
        assert code == 2 and doc["error"]

    def test_text_output(self):
        code, out, _ = call("verify-flags", "--n", 1)
        assert code == 0 and "pass" in out


class TestPartitions:
    def test_sigma(self):
        code, doc = call_json("partitions", "--n", 3, "--sigma", "2")
        e = doc["entries"][0]
        assert code == 0 and e["bar"] == [2, -1, -3] and e["tilde"] == [3, 1, 0]

    def test_box_and_weight(self):
        code, doc = call_json("partitions", "--n", 3, "--weight", 3, "--box", "2,3")
        assert doc["entries"][0]["rect_syt_count"] == 5
        assert [e["sigma"] for e in doc["entries"][1:]] == [[3], [2, 1]]

    def test_bad_input(self):
        assert call_json("partitions", "--n", 3, "--sigma", "2,2")[0] == 2
        assert call_json("partitions")[0] == 2


class TestWronskiPmap:
    def test_wronski(self, write):
        path = write("x.json", {"d": 2, "m": 4, "rows": [["1", "0", "0", "0"], ["0", "0", "1", "0"]]})
        code, doc = call_json("wronski", path)
        assert code == 0 and doc["wronskian"][:2] == ["0", "1"]
        cells = {c["point"]: c for c in doc["cells"]}
        assert cells["infinity"]["cell"] == [2, 1] and cells["0"]["cell"] == [1]

    def test_pmap_examples(self, write):
        code, doc = call_json("pmap", write("y.json", Y_EX))
        assert code == 0 and doc["p"][:4] == ["1", "0", "0", "-1"]
        code, doc = call_json("pmap", write("y.json", {"d": 2, "m": 5, "rows": [["1", "0", "0", "0", "0"],
                                                                                ["0", "0", "1", "0", "0"]]}))
        assert code == 1 and doc["error"] == "NotIsotropic"
        code, doc = call_json("pmap", write("y.json", {"d": 2, "m": 5, "rows": [["1", "0", "0", "0", "0"],
                                                                                ["0", "1", "0", "0", "0"]]}))
        assert code == 0 and doc["p"][0] == "1" and set(doc["p"][1:]) <= {"0"}

    def test_pmap_negative_point(self, write):
        code, doc = call_json("pmap", write("y.json", Y_EX), "--points", "-3/2,infinity")
        assert code == 0 and all(c["passed"] for c in doc["cells"])

    def test_bad_files(self, write, tmp_path):
        assert call_json("pmap", str(tmp_path / "missing.json"))[0] == 2
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert call_json("wronski", str(bad))[0] == 2
        assert call_json("wronski", write("z.json", {"d": 2, "m": 4, "rows": [["1", "x", "0", "0"]]}))[0] == 2


class TestSample:
    def test_examples(self):
        code, doc = call_json("sample-isotropic", "--n", 2, "--count", 1, "--seed", 0)
        assert code == 0 and len(doc["points"]) == 1
        code, doc = call_json("sample-isotropic", "--n", 3, "--count", 100, "--seed", 7)
        assert code == 0 and len(doc["points"]) == 100
        code, doc = call_json("sample-isotropic", "--n", 1, "--count", 3)
        assert code == 0 and all(p["d"] == 1 and p["m"] == 3 for p in doc["points"])

    def test_byte_identical(self):
        a = call("sample-isotropic", "--n", 3, "--count", 5, "--seed", 4, "--json")[1]
        b = call("sample-isotropic", "--n", 3, "--count", 5, "--seed", 4, "--json")[1]
        assert a == b

    def test_samples_feed_pmap(self, write):
        _, doc = call_json("sample-isotropic", "--n", 3, "--count", 3, "--seed", 1)
        for i, pt in enumerate(doc["points"]):
            assert call_json("pmap", write(f"p{i}.json", pt))[0] == 0


class TestSolve:
    def test_gr24(self, write):
        code, doc = call_json("solve", write("p.json", GR24))
        assert code == 0 and doc["count"] == 2 and doc["expected_count"] == 2
        assert all(s["real"] and s["transverse"] for s in doc["solutions"])

    def test_og3(self, write):
        code, doc = call_json("solve", write("p.json", OG3))
        assert code == 0 and doc["count"] == 2

    def test_budget_violation(self, write):
        bad = dict(GR24, conditions=GR24["conditions"][:3])
        code, doc = call_json("solve", write("p.json", bad))
        assert code == 2 and "d(m-d)" in doc["message"]

    def test_schema_violation(self, write):
        assert call_json("solve", write("p.json", {"space": "Gr", "conditions": []}))[0] == 2

    def test_config_file(self, write):
        cfg = write("c.json", {"seed": 5})
        code, doc = call_json("solve", write("p.json", GR24), "--config", cfg)
        assert code == 0 and doc["count"] == 2
        assert call_json("solve", write("p.json", GR24), "--config", write("c2.json", {"nope": 1}))[0] == 2

    def test_byte_identical(self, write):
        path = write("p.json", OG3)
        assert call("solve", path, "--json")[1] == call("solve", path, "--json")[1]

    def test_backends(self, write):
        path = write("p.json", GR24)
        a = json.loads(call("solve", path, "--json", "--backend", "python")[1])
        assert a["count"] == 2


class TestFiber:
    def test_og(self):
        code, doc = call_json("fiber", "--n", 2, "--roots", "0,1,2")
        assert code == 0 and doc["count"] == 1 and doc["max_target_distance"] < 1e-9

    def test_gr(self):
        code, doc = call_json("fiber", "--d", 2, "--m", 4, "--target", "0,2,3,1")
        assert code == 0 and doc["infinity_deficiency"] == 1 and doc["count"] == 2

    def test_unsupported(self):
        code, doc = call_json("fiber", "--n", 2, "--target", "1,0,1")
        assert code == 2 and doc["error"] == "UnsupportedTarget"

    def test_missing_space(self):
        assert call_json("fiber", "--roots", "0,1")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "schubreal", "partitions", "--box", "2,2", "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["entries"][0]["rect_syt_count"] == 2


def test_argparse_errors_exit_2():
    proc = subprocess.run([sys.executable, "-m", "schubreal", "verify-flags"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_byte_identical_across_processes(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps(OG3))
    cmd = [sys.executable, "-m", "schubreal", "solve", str(path), "--json"]
    a, b = (subprocess.run(cmd, capture_output=True, check=False).stdout for _ in range(2))
    assert a == b and json.loads(a)["count"] == 2
