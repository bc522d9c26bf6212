import json
import subprocess
import sys

import pytest

from pnmatch.cli import main
from pnmatch.gallery import mixed_pars_net, tensor_of_axiom, tensor_par_net, two_triangles_bridge
from pnmatch.graph import graph_to_json
from pnmatch.proofnet import to_json


@pytest.fixture
def run(tmp_path, capsys):
    """Call the CLI in-process; returns (exit code, parsed stdout)."""
    counter = iter(range(10**6))

    def call(*argv, doc=None):
        argv = list(argv)
        if doc is not None:
            path = tmp_path / f"in{next(counter)}.json"
            path.write_text(json.dumps(doc))
            argv.append(str(path))
        code = main(argv)
        out = capsys.readouterr().out
        return code, (json.loads(out) if out.strip() else None)

    return call


def net_doc(ps):
    return to_json(ps)


def test_check_correct_net(run):
    code, out = run("check", doc=net_doc(tensor_par_net()))
    assert code == 0 and out == {"correct": True, "mix_count": 1}


def test_check_incorrect_net_gives_witness(run):
    code, out = run("check", doc=net_doc(tensor_of_axiom()))
    assert code == 1 and out["correct"] is False
    assert set(out["witness"]["links"]) == {0, 1}


def test_check_mll_mode(run):
    assert run("check", doc=net_doc(mixed_pars_net()))[0] == 0
    code, out = run("check", "--mode", "mll", doc=net_doc(mixed_pars_net()))
    assert code == 1 and out["mix_count"] == 2


def test_check_graph(run):
    g, m = two_triangles_bridge()
    assert run("check", doc=graph_to_json(g, m)) == (0, {"unique": True})


def test_seq_and_validate_roundtrip(run, tmp_path):
    net = tmp_path / "net.json"
    net.write_text(json.dumps(net_doc(tensor_par_net())))
    code, out = run("seq", str(net))
    assert code == 0 and out["derivation"]["kind"] == "par"
    code, rep = run("validate", "--net", str(net), doc=out)
    assert code == 0 and rep["valid"] and rep["builds_net"]
    code, out = run("seq", "--all", doc=net_doc(mixed_pars_net()))
    assert code == 0 and out["count"] == 8


def test_seq_all_cap(run, capsys):
    code, out = run("seq", "--all", "--cap", "2", doc=net_doc(mixed_pars_net()))
    assert code == 2 and out is None


def test_kingdom(run):
    code, out = run("kingdom", doc=net_doc(tensor_par_net()))
    assert code == 0 and [3, 4] in out["order"]
    assert run("validate", doc=out)[1]["valid"]


@pytest.mark.parametrize("target", ["rb", "graphify"])
def test_translate_net(run, target):
    code, out = run("translate", "--to", target, doc=net_doc(tensor_par_net()))
    assert code == 0 and "vertices" in out
    assert run("check", doc=out)[1]["unique"] is True


def test_translate_graph(run):
    g, m = two_triangles_bridge()
    code, out = run("translate", "--to", "proofify", doc=graph_to_json(g, m))
    assert code == 0
    assert run("check", "--mode", "mll", doc=out)[0] == 0


def test_trail(run):
    doc = {"vertices": 3, "edges": [[0, 1], [1, 2], [2, 0]]}
    code, out = run("trail", doc=doc)
    assert code == 0 and len(out["trail"]["edges"]) == 3
    code, out = run("trail", doc=dict(doc, pairs=[[0, 2]]))
    assert code == 1 and out == {"trail": None}
    assert run("validate", doc=out)[1]["valid"]


def test_gen_is_reproducible(run):
    a = run("gen", "--size", "30", "--seed", "5")
    b = run("gen", "--size", "30", "--seed", "5")
    assert a == b and len(a[1]["links"]) == 30
    assert run("check", doc=a[1])[0] == 0
    code, out = run("gen", "--kind", "upm", "--size", "0")
    assert code == 0 and out["vertices"] == 0


def test_gen_upm_decomposes(run):
    _, g = run("gen", "--kind", "upm", "--size", "6", "--seed", "2")
    code, out = run("seq", doc=g)
    assert code == 0 and run("validate", doc=out)[1]["valid"]


def test_dot_output(run, tmp_path):
    dot = tmp_path / "k.dot"
    run("kingdom", "--dot", str(dot), doc=net_doc(tensor_par_net()))
    assert dot.read_text().startswith("digraph")


def test_bad_input(run, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["check", str(bad)]) == 2
    assert "not JSON" in capsys.readouterr().err
    assert run("check", doc={"vertices": 2})[0] == 2
    assert run("kingdom", doc={"links": [{"id": 0, "kind": "cut"}], "edges": []})[0] == 2
    assert main(["gen", "--size", "-1"]) == 2
    code, out = run("validate", doc={"kind": "ax"})
    assert code == 1 and out["valid"] is False


def test_console_entry_point(tmp_path):
    path = tmp_path / "n.json"
    path.write_text(json.dumps(net_doc(tensor_par_net())))
    res = subprocess.run(
        [sys.executable, "-m", "pnmatch.cli", "check", str(path)], capture_output=True, text=True
    )
    assert res.returncode == 0 and json.loads(res.stdout)["correct"] is True
