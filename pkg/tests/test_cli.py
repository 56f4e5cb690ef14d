import csv
import io
import json
import subprocess
import sys

import pytest

from schubmather.cache import ENV_VAR, TableCache, cache_key
from schubmather.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


D5 = ("--lie-type", "D", "--n", "5")


def test_compute_single_entry():
    assert run("compute", *D5, "--alpha", "3,5", "--beta", "3,4") == (0, "6\n")
    assert run("compute", "--lie-type", "C", "--n", "3", "--alpha", "2", "--beta", "1") == (0, "5\n")


def test_compute_json_entry():
    code, text = run("compute", *D5, "--alpha", "3,5", "--beta", "3,4", "--format", "json")
    doc = json.loads(text)
    assert code == 0
    assert doc["entries"] == [{"beta": [3, 4], "gamma": 6}]
    assert doc["family"] == "OG''"


def test_compute_without_beta_prints_row():
    code, text = run("compute", "--lie-type", "C", "--n", "3", "--alpha", "1")
    assert code == 0
    assert [line.split() for line in text.splitlines()] == [["1", "1"], ["1,3", "3"], ["1,2", "8"], ["1,2,3", "4"]]


def test_inadmissible_exit_code(capsys):
    code, _ = run("compute", *D5, "--alpha", "2,3", "--beta", "1,2")
    assert code == 2
    err = capsys.readouterr().err
    assert "not admissible" in err and "failed:" in err


def test_beta_not_contained(capsys):
    code, _ = run("compute", *D5, "--alpha", "1,5", "--beta", "2,3")
    assert code == 2


def test_beta_on_other_component():
    code, _ = run("compute", *D5, "--alpha", "3,5", "--beta", "3")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ("compute", "--lie-type", "D", "--n", "0", "--alpha", "1"),
    ("compute", "--lie-type", "D", "--n", "5", "--alpha", "5,3"),
    ("compute", "--lie-type", "E", "--n", "5", "--alpha", "1"),
    ("compute", "--lie-type", "D", "--n", "5", "--alpha", "x"),
    ("table", *D5, "--alpha", "3,5", "--policy", "sideways"),
    ("check", "--types", "A"),
    ("fiber-euler", *D5, "--alpha", "3,5"),
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        code, _ = run(*argv)
        raise SystemExit(code)
    assert exc.value.code == 64


def test_table_formats_agree():
    args = ("table", *D5, "--alpha", "3,5")
    _, text = run(*args, "--format", "json")
    doc = json.loads(text)
    _, csv_text = run(*args, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(csv_text)))
    assert [(r["beta"], int(r["gamma"])) for r in rows] == [
        (";".join(map(str, e["beta"])), e["gamma"]) for e in doc["entries"]
    ]
    _, plain = run(*args)
    assert [int(line.split()[-1]) for line in plain.splitlines()] == [e["gamma"] for e in doc["entries"]]


def test_table_json_schema():
    _, text = run("table", "--lie-type", "C", "--n", "3", "--alpha", "2", "--format", "json")
    doc = json.loads(text)
    assert set(doc) == {"lie_type", "n", "family", "alpha", "entries", "meta"}
    assert doc["family"] == "none"
    assert {"policy", "weights", "version"} <= set(doc["meta"])
    assert json.loads(json.dumps(doc)) == doc


def test_complement_indexing():
    code, text = run("table", "--lie-type", "C", "--n", "4", "--alpha", "1,2,4", "--indexing", "complement",
                     "--format", "json")
    assert code == 0
    assert json.loads(text)["alpha"] == [3]


def test_labels():
    _, text = run("table", *D5, "--alpha", "3,5", "--labels")
    names = [line.split()[0] for line in text.splitlines()]
    assert len(names) == 14 and len(set(names)) == 14


def test_all_tables_matrix():
    code, text = run("all-tables", *D5)
    assert code == 0
    lines = text.splitlines()
    assert len(lines) == 6
    row = dict(zip(lines[0].split(), lines[1].split()[1:]))
    assert lines[1].split()[0] == "3,5"
    assert row["3,4"] == "6" and row["3,5"] == "1"


def test_all_tables_json_and_csv():
    _, text = run("all-tables", "--lie-type", "C", "--n", "3", "--format", "json")
    docs = json.loads(text)["documents"]
    assert [d["alpha"] for d in docs]
    _, csv_text = run("all-tables", "--lie-type", "C", "--n", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(csv_text)))
    assert len(rows) == sum(len(d["entries"]) for d in docs)


def test_all_tables_empty():
    assert run("all-tables", "--lie-type", "C", "--n", "1") == (0, "no admissible sequences\n")


def test_fiber_euler():
    code, text = run("fiber-euler", *D5, "--alpha", "3,5", "--beta", "1,2,3,4", "--format", "json")
    doc = json.loads(text)
    assert code == 0
    assert doc["d_value"] == doc["fixed_point_count"] == 3
    assert doc["capacity"] == [0, 2] and doc["verdict"] == "match"


def test_fixed_points_dump():
    code, text = run("fixed-points", *D5, "--alpha", "3,5")
    doc = json.loads(text)
    assert code == 0 and doc["count"] == 24 == len(doc["points"])


def test_explain():
    code, text = run("explain", "--lie-type", "D", "--n", "14", "--alpha", "2,3,6,8")
    doc = json.loads(text)
    assert code == 0
    assert [s["dim"] for s in doc["stages"]] == [2, 3, 4, 14]


def test_user_weights_and_policy():
    base = run("table", *D5, "--alpha", "3,5", "--format", "json")[1]
    other = run("table", *D5, "--alpha", "3,5", "--format", "json", "--weights", "3,17,29,101,4",
                "--policy", "order:0")[1]
    strip = lambda t: json.loads(t)["entries"]  # noqa: E731
    assert strip(base) == strip(other)
    assert json.loads(other)["meta"]["weights"] == [3, 17, 29, 101, 4]


def test_colliding_user_weights_retry():
    code, text = run("table", "--lie-type", "C", "--n", "3", "--alpha", "2", "--weights", "1,1,2", "--format", "json")
    assert code == 0
    assert json.loads(text)["meta"]["weights"] != [1, 1, 2]


def test_cache_coherence(tmp_path):
    args = ("table", *D5, "--alpha", "3,5", "--format", "json", "--cache-dir", str(tmp_path))
    _, first = run(*args)
    assert len(list(tmp_path.glob("*.json"))) == 1
    _, second = run(*args)
    _, fresh = run("table", *D5, "--alpha", "3,5", "--format", "json", "--no-cache")
    assert first == second == fresh


def test_corrupt_cache_is_a_miss(tmp_path):
    cache = TableCache(tmp_path)
    key = cache_key("D", 5, "OG''", (3, 5), "smallest-eligible")
    _, fresh = run("table", *D5, "--alpha", "3,5", "--format", "json", "--no-cache")
    doc = json.loads(fresh)
    bad = json.loads(json.dumps(doc))
    bad["entries"][1]["gamma"] = 7
    cache.put(key, doc)
    record = json.loads(cache.path(key).read_text())
    record["value"] = bad
    cache.path(key).write_text(json.dumps(record))
    assert cache.get(key) is None
    _, text = run("table", *D5, "--alpha", "3,5", "--format", "json", "--cache-dir", str(tmp_path))
    assert text == fresh


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    run("table", "--lie-type", "C", "--n", "3", "--alpha", "2")
    assert list(tmp_path.glob("*.json"))


def test_check_small():
    code, text = run("check", "--n-max", "3")
    assert code == 0
    assert text and all(line.startswith("PASS") for line in text.splitlines())


def test_check_flags_bad_weights():
    code, text = run("check", "--n-max", "3", "--types", "C", "--weights", "1,1,2")
    assert code == 3
    assert any(line.startswith("FAIL") for line in text.splitlines())


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "schubmather", "compute", *D5, "--alpha", "3,5", "--beta", "3,4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "6\n"
    proc = subprocess.run([sys.executable, "-m", "schubmather", "compute", *D5, "--alpha", "2,3", "--beta", "1,2"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
