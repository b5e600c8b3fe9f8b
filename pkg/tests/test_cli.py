"""
Module provides tests to test the `khtight.cli` module
"""
import io
import json
import os
import pytest

from khtight.cli import EXIT_ERROR, EXIT_OK, EXIT_RESOURCE, RunConfig, build_parser, \
    format_table, main, parse_range, run
from khtight.homology_engine import HomologyTable

from .utils import E125, get_temp_folder


E125_K5 = "-1,-1,-1,-1,-1,2,1,1,1,2"


def _run(**kwargs) -> tuple[int, str]:
    out = io.StringIO()
    code = run(RunConfig(**kwargs), out)
    return code, out.getvalue()


def test_parse_range():
    assert parse_range("3..8") == (3, 8)
    assert parse_range("4") == (4, 4)
    with pytest.raises(ValueError):
        parse_range("8..3")
    with pytest.raises(ValueError):
        parse_range("a..b")


def test_run_config():
    with pytest.raises(ValueError):
        RunConfig("unknown")
    with pytest.raises(ValueError):
        RunConfig("det")
    with pytest.raises(ValueError):
        RunConfig("family", template=E125)
    with pytest.raises(ValueError):
        RunConfig("ss")
    with pytest.raises(ValueError):
        RunConfig("family", template=E125, r_range=(1, 2), workers=0)


def test_format_table():
    table = HomologyTable({(0, 2): 1, (2, 6): 1, (3, 8): 2})
    text = format_table(table)
    assert "(0,2) (2,6) (3,8)^2" in text
    assert text.endswith("total rank: 4")


def test_braid_commands():
    assert _run(command="det", braid=E125_K5) == (EXIT_OK, "det = 11\n")
    assert _run(command="sl", braid=E125_K5) == (EXIT_OK, "sl = -3\n")
    assert _run(command="sig", braid=E125_K5) == (EXIT_OK, "signature = -2\n")
    assert _run(command="s", braid="1,1,1") == (EXIT_OK, "s = 2\n")

    code, text = _run(command="kh", braid="1,1,1")
    assert code == EXIT_OK
    assert "total rank: 3" in text

    code, text = _run(command="kh", braid="1,1,1", reduced=False, json=True)
    assert code == EXIT_OK
    assert json.loads(text)["total_rank"] == 6

    code, text = _run(command="psi", braid="1,-2,1,-2", json=True)
    data = json.loads(text)
    assert data["psi"] == "zero"
    assert len(data["witness"]) > 0

    code, text = _run(command="qa", braid="-1,2,1,1,1,2")
    assert code == EXIT_OK
    assert text.startswith("quasi-alternating certificate of depth 1")


def test_verdict():
    code, text = _run(command="verdict", braid=E125_K5, json=True)
    assert code == EXIT_OK
    report = json.loads(text)
    assert report["verdict"] == "TIGHT_CERTIFIED"
    assert (report["sl"], report["s"], report["sigma"], report["det"]) == (-3, -2, -2, 11)

    code, text = _run(command="verdict", braid=E125_K5)
    assert "TIGHT_CERTIFIED" in text.splitlines()[0]


def test_family():
    code, text = _run(command="family", template=E125, r_range=(3, 5), json=True)
    assert code == EXIT_OK
    rows = json.loads(text)["reports"]
    assert [row["r"] for row in rows] == [3, 4, 5]
    assert [row["det"] for row in rows] == [9, 10, 11]
    assert [row["sl"] for row in rows] == [-1, -2, -3]


def test_d3():
    code, text = _run(command="d3", braid=E125_K5, json=True)
    assert code == EXIT_OK
    data = json.loads(text)
    assert data["d3"] == "-1/2"
    assert data["h1_order"] == 11
    assert len(data["diagram"]["components"]) == 10
    assert len(data["diagram"]["handles"]) == 2

    file_path = os.path.join(get_temp_folder(), "diagram.json")
    with open(file_path, "w") as f:
        json.dump({"components": [{"tb": -1, "rot": 0, "coeff": -1}], "linking": [[-2]]}, f)
    code, text = _run(command="d3", file=file_path)
    assert code == EXIT_OK
    assert "d3 = 1/4" in text

    assert "d3 = 1/2" in _run(command="d3", braid="1,1,1", stabilize=False)[1]
    with pytest.warns(UserWarning):
        assert _run(command="d3", braid="1,1,1", relative=True)[0] == EXIT_OK
    assert _run(command="d3", braid="1,1,1", stabilize=False, relative=True)[0] == EXIT_ERROR


def test_lattice():
    code, text = _run(command="lattice", plumbing="e125", n=8, k=11, json=True)
    assert code == EXIT_OK
    data = json.loads(text)
    (entry,) = data["embeddings"]
    assert entry["complement"]["gram"] == [[-11]]
    assert entry["parity"]["status"] == "obstructed"

    file_path = os.path.join(get_temp_folder(), "gram.json")
    with open(file_path, "w") as f:
        json.dump({"gram": [[-2, 1], [1, -2]]}, f)
    code, text = _run(command="lattice", file=file_path)
    assert code == EXIT_OK
    assert "embedding class(es) into <-1>^3" in text


def test_ss():
    file_path = os.path.join(get_temp_folder(), "toy.txt")
    with open(file_path, "w") as f:
        f.write("g x i=0 a=0\ng y i=1 a=-2\ng z i=2 a=-1\nd x -> y,z\n")
    code, text = _run(command="ss", file=file_path, r_max=2)
    assert code == EXIT_OK
    assert "E2: dim 1" in text
    assert "H: rank 1, induced A-levels [-2]" in text

    code, text = _run(command="ss", random_size=12, seed=5, reduce=True, json=True)
    assert code == EXIT_OK
    assert json.loads(text)["filtration"] == "I"


def test_errors(monkeypatch):
    assert _run(command="det", braid="1,x")[0] == EXIT_ERROR
    assert _run(command="s", braid="1,1")[0] == EXIT_ERROR
    assert _run(command="ss", file=os.path.join(get_temp_folder(), "missing.txt"))[0] \
        == EXIT_ERROR

    monkeypatch.setenv("KHTIGHT_GENERATOR_BUDGET", "2")
    assert _run(command="kh", braid="1,1,1")[0] == EXIT_RESOURCE
    assert _run(command="psi", braid="1,1,1")[0] == EXIT_RESOURCE
    monkeypatch.delenv("KHTIGHT_GENERATOR_BUDGET")
    monkeypatch.setenv("KHTIGHT_MAX_CROSSINGS", "many")
    assert _run(command="sl", braid="1,1,1")[0] == EXIT_ERROR


def test_main(capsys):
    with pytest.raises(SystemExit) as exit_info:
        main(["sl", "--braid=-1,-1,-1,-1,-1,2,1,1,1,2"])
    assert exit_info.value.code == EXIT_OK
    assert capsys.readouterr().out == "sl = -3\n"

    with pytest.raises(SystemExit) as exit_info:
        main(["family", "--template", E125, "--r", "5..3"])
    assert exit_info.value.code == EXIT_ERROR

    with pytest.raises(SystemExit):
        main(["no-such-command"])

    args = build_parser().parse_args(["kh", "-b", "1,1,1", "--unreduced"])
    assert args.unreduced and args.braid == "1,1,1"
