import json

import pytest

from homtoric.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_width_prism(capsys):
    code, out = run(capsys, "width", "complement:cycle:6", "spoon", "--cap", "4")
    assert code == 0
    assert out.strip() == "3"


def test_homs_lists_independent_sets(capsys):
    code, out = run(capsys, "homs", "cycle:4", "spoon")
    assert code == 0
    assert "total 7" in out
    assert "{0,2}" in out


def test_markov_p4p3(capsys):
    code, out = run(capsys, "markov", "path:4", "path:3", "--cap", "3")
    assert code == 0
    assert "0*7 - 1*6" in out
    assert "2*5 - 3*4" in out
    assert "width 2" in out


def test_json_schema(capsys):
    code, out = run(capsys, "--json", "width", "complement:cycle:6", "spoon", "--cap", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["result"]["width"] == 3
    assert "seed" in doc


def test_verify_grobner_roundtrip(tmp_path, capsys):
    code, out = run(capsys, "indep-grobner", "cycle:4")
    assert code == 0
    basis_file = tmp_path / "basis.txt"
    lines = [line.split("#")[0].strip() for line in out.splitlines()
             if " - " in line]
    basis_file.write_text("\n".join(lines) + "\n")
    code, out = run(capsys, "verify-grobner", "cycle:4", "spoon",
                    "--basis", str(basis_file), "--cap", "4")
    assert code == 0
    assert "verified" in out
    # flipping every orientation fails and exits 1
    flipped = [" - ".join(reversed(line.split(" - "))) for line in lines]
    basis_file.write_text("\n".join(flipped) + "\n")
    code, out = run(capsys, "verify-grobner", "cycle:4", "spoon",
                    "--basis", str(basis_file), "--cap", "4")
    assert code == 1


def test_glue_cli(tmp_path, capsys):
    g1 = tmp_path / "g1.txt"
    g2 = tmp_path / "g2.txt"
    g1.write_text("v 0 1 2\ne 0 1\ne 0 2\ne 1 2\n")
    g2.write_text("v 1 2 3\ne 1 2\ne 1 3\ne 2 3\n")
    code, out = run(capsys, "glue", str(g1), str(g2), "spoon")
    assert code == 0
    assert "intersection vertices [1, 2]" in out
    assert "degrees [2]" in out


def test_polytope_cli(capsys):
    code, out = run(capsys, "polytope", "cycle:4", "spoon", "--facets")
    assert code == 0
    assert "7 vertices" in out
    assert "8 facets" in out
    assert "simple: False" in out


def test_hibi_cli(tmp_path, capsys):
    poset = tmp_path / "p.txt"
    poset.write_text("p 3\nc 0 1\nc 0 2\n")
    code, out = run(capsys, "hibi", str(poset))
    assert code == 0
    assert "generators match: True" in out


def test_chromatic_cert_cli(tmp_path, capsys):
    rel = tmp_path / "antipodal.txt"
    rel.write_text("0 1\n2 3\n4 5\n")
    code, out = run(capsys, "chromatic-cert", "octahedron", "--cap", "4",
                    "--relation", str(rel))
    assert code == 0
    assert "PROPERTY" in out


def test_usage_errors(capsys):
    code, _ = run(capsys, "width", "cycle:notanumber", "spoon")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["reproduce"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_resource_cap_exit(capsys):
    code, _ = run(capsys, "--mono-cap", "10", "width", "cycle:6", "spoon", "--cap", "4")
    assert code == 3


def test_reproduce_all(capsys):
    code, out = run(capsys, "reproduce", "--all")
    assert code == 0
    for name in ("p4p3", "prism-width", "c4-polytope", "k5-coloring",
                 "octahedron-coloring", "hibi-small", "fan-k4"):
        assert f"== {name}" in out
    assert "NOT_4_COLORABLE" in out


def test_thread_count_does_not_change_output(capsys):
    outputs = []
    for threads in ("1", "4"):
        code, out = run(capsys, "--threads", threads, "reproduce", "p4p3")
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]
