import json

import pytest

from elemconn.cli import main
from elemconn.formats import emit_graph, parse_graph
from elemconn.generators import hk, k3k, tw_chain
from elemconn.formats import emit_td


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def test_kappa(write, capsys):
    path = write("g.txt", emit_graph(hk(3).graph))
    assert main(["kappa", path]) == 0
    assert capsys.readouterr().out.strip() == "0 1 3"


def test_parse_error_exit(write, capsys):
    path = write("g.txt", "elemgraph v1\nv 0 mauve\n")
    assert main(["kappa", path]) == 4
    assert "line 2" in capsys.readouterr().err


def test_missing_file_exit(tmp_path):
    assert main(["kappa", str(tmp_path / "none.txt")]) == 2


def test_reduce_writes_bipartite_graph(write, tmp_path):
    src = "elemgraph v1\nv 0 black\nv 1 black\nv 2 white\nv 3 white\ne 0 2\ne 2 3\ne 3 1\n"
    out, trace = tmp_path / "r.txt", tmp_path / "t.json"
    assert main(["reduce", write("g.txt", src), "--out", str(out), "--trace", str(trace), "--verify"]) == 0
    g = parse_graph(out.read_text())
    assert not g.white_white_edges()
    ops = json.loads(trace.read_text())
    assert [r["op"] for r in ops["records"]] == ["ContractEdge"]


def test_pack_and_verify_round_trip(write, tmp_path):
    path = write("g.txt", emit_graph(k3k(6).graph))
    cert = tmp_path / "c.json"
    dot = tmp_path / "c.dot"
    assert main(["pack-trees", path, "--k", "6", "--out", str(cert), "--dot", str(dot)]) == 0
    assert dot.read_text().startswith("graph G {")
    assert main(["verify", path, "--certificate", str(cert), "--kind", "packing"]) == 0
    doc = json.loads(cert.read_text())
    doc["subgraphs"].append(doc["subgraphs"][0])
    bad = write("bad.json", json.dumps(doc))
    assert main(["verify", path, "--certificate", bad, "--kind", "packing"]) == 2


def test_pack_disconnected_exits_infeasible(write):
    path = write("g.txt", "elemgraph v1\nv 0 black\nv 1 black\nv 2 white\ne 0 2\n")
    assert main(["pack-trees", path, "--k", "1"]) == 3


def test_planar_exit_codes(write):
    path = write("g.txt", emit_graph(k3k(3).graph))
    assert main(["pack-planar", path, "--k", "3", "--verify"]) == 2
    # overstated k: no terminal pair carries enough parallel copies
    assert main(["pack-planar", path, "--k", "20"]) == 3


def test_treewidth_command(write, tmp_path):
    inst = tw_chain(3, 4)
    g = inst.graph
    path = write("g.txt", emit_graph(g))
    td = write("g.td", emit_td(inst.td, len(g.vertices)))
    cert = tmp_path / "c.json"
    assert main(["pack-treewidth", path, "--td", td, "--k", "4", "--out", str(cert)]) == 0
    assert json.loads(cert.read_text())["kind"] == "packing"


def test_spiders_then_verify(write, tmp_path):
    path = write("g.txt", emit_graph(k3k(4).graph))
    cert = tmp_path / "s.json"
    assert main(["spiders", path, "--k", "4", "--out", str(cert)]) == 0
    assert main(["verify", path, "--certificate", str(cert), "--kind", "spiders"]) == 0
    assert main(["verify", path, "--certificate", str(cert), "--kind", "ssk"]) == 2


def test_ssk_seeds(write, tmp_path):
    src = ["elemgraph v1"] + [f"v {i} black" for i in range(4)]
    src += [f"e {a} {b} cost={c}" for a, b, c in [(0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 1), (2, 3, 1), (1, 3, 5)]]
    path = write("g.txt", "\n".join(src) + "\n")
    cert = tmp_path / "x.json"
    assert main(["ssk", path, "--root", "0", "--k", "2", "--seeds", "3", "--out", str(cert)]) == 0
    assert main(["verify", path, "--certificate", str(cert), "--kind", "ssk"]) == 0
    assert main(["ssk", path, "--root", "0", "--k", "4"]) == 3


def test_gen_then_kappa(tmp_path, capsys):
    out, td = tmp_path / "g.txt", tmp_path / "g.td"
    assert main(["gen", "tw-chain", "m=3", "k=2", "--out", str(out), "--td-out", str(td)]) == 0
    g = parse_graph(out.read_text())
    assert len(g.blacks()) == 6 and td.read_text().startswith("s td")
    assert main(["gen", "nope"]) == 2


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["kappa"])
    assert exc.value.code == 2
