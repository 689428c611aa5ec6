import json
import subprocess
import sys

import jsonschema
import pytest

from rspin import cli, schemas
from rspin.graphs import StableGraph

LOOP = StableGraph.build([1], [(0, 0)], 2).to_json()
SEPARATING = StableGraph.build([1, 1], [(0, 1)], 2).to_json()
BAD = StableGraph.build([0], [(0, 0)], 2).to_json()

RING = {"field": "Q", "vars": ["t", "eps"], "ideal": [[5, 0], [0, 2], [1, 1]]}
QUASI = {"ring": RING, "p": "t^2", "q": "t", "r": 3,
         "components": [{"x": {"1": 1}}, {"const": "t^2"}, {"y": {"1": "t"}},
                        {"y": {"2": 1, "1": "eps"}}]}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def graph_file(tmp_path):
    def write(data, name="g.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)
    return write


def test_enumerate_loop(capsys, graph_file):
    code, out, _ = run(capsys, "enumerate", "--graph", graph_file(LOOP))
    assert code == 0
    types = json.loads(out)
    assert len(types) == 2
    assert types[1]["nonfree"] == [{"edge": 0, "u": 1, "v": 1}]
    schemas.validate(types, "spin-types")


def test_chain(capsys):
    code, out, _ = run(capsys, "chain", "--r", "2", "--n", "1", "--residue", "1")
    assert code == 0
    assert json.loads(out) == {"coeffs": [-1], "m": 1, "degrees": [2]}


def test_chain_domain_error(capsys):
    code, _, err = run(capsys, "chain", "--r", "2", "--n", "1", "--residue", "5")
    assert code == 1
    assert json.loads(err)["error"] == "domain"


def test_validate_bad_graph(capsys, graph_file):
    code, out, err = run(capsys, "validate", "--graph", graph_file(BAD))
    assert code == 1
    report = json.loads(out)
    assert report["valid"] is False
    assert any("unstable" in d for d in json.loads(err)["diagnostics"])


def test_validate_good_graph(capsys):
    code, out, _ = run(capsys, "validate", "--graph", json.dumps(SEPARATING))
    assert code == 0 and json.loads(out) == {"valid": True, "genus": 2, "diagnostics": []}


@pytest.mark.parametrize("argv", [
    ["enumerate", "--graph", '{"r": 2}'],
    ["enumerate", "--graph", "{not json"],
    ["enumerate", "--graph", "/nonexistent/graph.json"],
    ["local", "classify", "--input", '{"ring": {"vars": ["t"], "ideal": [[2]]}}'],
])
def test_malformed_input_exits_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    obj = json.loads(err)
    assert obj["error"] == "input"
    schemas.validate(obj, "error")


def test_enumerate_invalid_graph_is_domain_error(capsys):
    code, _, err = run(capsys, "enumerate", "--graph", json.dumps(BAD))
    assert code == 1 and "unstable" in json.loads(err)["message"]


def test_aut_count_deform(capsys):
    g = json.dumps(LOOP)
    code, out, _ = run(capsys, "aut", "--graph", g)
    assert code == 0
    assert [row["aut_order"] for row in json.loads(out)] == [2, 2]
    code, out, _ = run(capsys, "count", "--graph", g)
    assert [row["count"] for row in json.loads(out)] == [8, 4]
    code, out, _ = run(capsys, "deform", "--graph", g, "--type",
                       '{"nonfree": [{"edge": 0, "u": 1}]}')
    (row,) = json.loads(out)
    assert row["presentation"]["generators"] == ["P1", "Q1", "t2", "t3"]
    assert row["presentation"]["relations"] == ["P1 - Q1"]


def test_type_with_wrong_degrees(capsys):
    code, _, err = run(capsys, "count", "--graph", json.dumps(LOOP), "--type",
                       '{"nonfree": [{"edge": 0, "u": 1}], "degrees": {"0": 3}}')
    assert code == 1


def test_limit(capsys):
    fam = {"r": 2, "graph": SEPARATING, "nodes": [{"edge": 0, "order": 1, "residue": 1}]}
    code, out, _ = run(capsys, "limit", "--family", json.dumps(fam))
    assert code == 0
    assert json.loads(out) == {"nonfree": [{"edge": 0, "u": 1, "v": 1}],
                               "degrees": {"0": 0, "1": 0}}
    fam["nodes"][0]["residue"] = 0
    code, _, err = run(capsys, "limit", "--family", json.dumps(fam))
    assert code == 1 and "inconsistent" in json.loads(err)["message"]


def test_local_classify(capsys):
    code, out, _ = run(capsys, "local", "classify", "--input", json.dumps(QUASI))
    assert code == 0
    rep = json.loads(out)
    assert rep["relations_hold"] and rep["classification"] == "quasi-spin"
    assert (rep["u"], rep["v"], rep["cokernel_length"]) == (1, 2, 2)
    assert rep["good_cokernel"]


def test_local_classify_failing_relations(capsys):
    bad = json.loads(json.dumps(QUASI))
    bad["components"][0] = {"x": {"1": 1}, "const": "t^2"}
    code, out, _ = run(capsys, "local", "classify", "--input", json.dumps(bad))
    assert code == 0
    rep = json.loads(out)
    assert rep["relations_hold"] is False and 0 in rep["failing_indices"]


def test_local_isom(capsys):
    doc = {"ring": {"vars": ["t"], "ideal": [[4]]},
           "first": {"p": "t", "q": "t^2"}, "second": {"p": "2*t", "q": "t^2/2"}}
    code, out, _ = run(capsys, "local", "isom", "--input", json.dumps(doc))
    assert code == 0
    rep = json.loads(out)
    assert rep["isomorphic"] and rep["mu"] == {"0": "2"}
    doc["second"] = {"p": "t^2", "q": "t"}
    code, out, _ = run(capsys, "local", "isom", "--input", json.dumps(doc))
    assert json.loads(out) == {"isomorphic": False, "mu": None}
    doc["second"] = {"p": "t", "q": "t"}
    code, _, err = run(capsys, "local", "isom", "--input", json.dumps(doc))
    assert code == 1 and "pi mismatch" in json.loads(err)["message"]


def test_stdin_input(capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(LOOP)))
    code, out, _ = run(capsys, "enumerate", "--graph", "-")
    assert code == 0 and len(json.loads(out)) == 2


def test_table_format(capsys):
    code, out, _ = run(capsys, "--format", "table", "count", "--graph", json.dumps(LOOP))
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["count", "type"]
    assert len(lines) == 3
    code, out, _ = run(capsys, "chain", "--r", "4", "--n", "1", "--residue", "1",
                       "--format", "table")
    assert "coeffs" in out and "[-3, -2, -1]" in out


def test_schema_command(capsys):
    code, out, _ = run(capsys, "schema", "graph")
    assert code == 0 and json.loads(out) == schemas.GRAPH
    jsonschema.Draft202012Validator.check_schema(json.loads(out))


def test_all_schemas_are_valid():
    for schema in schemas.SCHEMAS.values():
        jsonschema.Draft202012Validator.check_schema(schema)


def test_output_is_byte_identical(graph_file):
    path = graph_file(StableGraph.build([1, 1], [(0, 1), (0, 1), (0, 0)], 2).to_json())
    cmd = [sys.executable, "-m", "rspin.cli", "deform", "--graph", path]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_help_documents_formats(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--help"])
    out = capsys.readouterr().out
    assert "spin-map" in out and "SPIN_SEED" in out
