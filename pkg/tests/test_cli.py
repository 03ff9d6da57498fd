from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from rigikit import cli
from rigikit import verify as vf
from rigikit.cli import build_parser, parse_tsv, run
from rigikit.constructions import catalog
from rigikit.graph import decode_graph6, encode_graph6, write_edge_list

SUBCOMMANDS = [
    "rank", "rigid", "dof", "closure", "linked", "bridge", "circuit", "rup", "rc", "rcstar",
    "construct", "catalog", "enumerate", "compute-f", "compute-g", "verify", "random-experiment", "chain-check",
]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_rigid_w5_in_3d():
    code, out, _ = call("rigid", "--dim", "3", "--catalog", "W5")
    assert code == 0 and out.splitlines()[0] == "false"
    code, out, _ = call("rigid", "--dim", "3", "--catalog", "W5", "--format", "json")
    rec = json.loads(out)
    assert rec["rigid"] is False and rec["dof"] == 1 and rec["seed"] == 0


def test_verify_R3_json():
    code, out, _ = call("verify", "--claim", "R3", "--n", "7", "--format", "json", "--quiet")
    assert code == 0
    assert json.loads(out)["exceptions"] == ["C7_1", "C7_2"]


def test_compute_g():
    code, out, _ = call("compute-g", "--n", "5", "--dim", "3")
    assert code == 0 and out.splitlines()[0] == "7"
    code, out, _ = call("compute-f", "--n", "9", "--dim", "4", "--format", "json")
    assert json.loads(out)["status"] == vf.EXPLORATORY


@pytest.mark.parametrize("name", SUBCOMMANDS)
def test_every_subcommand_has_help(name, capsys):
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args([name, "--help"])
    assert exc.value.code == 0
    text = capsys.readouterr().out
    assert "--seed" in text or name == "catalog" or name == "enumerate"
    assert "usage" in text


def test_unknown_flag_and_bad_input_exit_2(capsys):
    assert call("rank", "--catalog", "W5", "--bogus")[0] == 2
    assert "usage" in capsys.readouterr().err
    assert call()[0] == 2
    code, _, err = call("rank", "--graph6", "!!")
    assert code == 2 and "error" in err
    assert call("rank", "--catalog", "W5", "--graph6", "C~")[0] == 2
    assert call("verify", "--claim", "R3")[0] == 2
    assert call("linked", "--catalog", "W5", "--pair", "0,1")[0] == 2  # adjacent pair


def test_failed_verification_exits_1(monkeypatch):
    def broken(n, seed=0, jobs=1, progress=None):
        return vf.VerificationReport("R3", {"n": n}, violations=["DQo"])

    monkeypatch.setattr(vf, "verify_theorem_R3", broken)
    code, out, _ = call("verify", "--claim", "R3", "--n", "5", "--format", "json")
    assert code == 1 and json.loads(out)["violations"] == ["DQo"]


@pytest.mark.parametrize(
    "argv",
    [
        ["rank", "--catalog", "B6", "--dim", "3"],
        ["rup", "--catalog", "C(5)", "--dim", "2"],
        ["rc", "--catalog", "W5", "--dim", "3"],
        ["verify", "--claim", "R2", "--n", "5", "--quiet"],
        ["random-experiment", "--n", "12", "--dim", "2", "--samples", "5", "--quiet"],
    ],
)
def test_json_tsv_parity_and_stability(argv):
    a = call(*argv, "--format", "json")[1]
    b = call(*argv, "--format", "json")[1]
    assert a == b  # byte identical
    tsv = call(*argv, "--format", "tsv")[1]
    assert parse_tsv(tsv) == json.loads(a)


def test_seed_env_default(monkeypatch):
    monkeypatch.setenv("RIGIKIT_SEED", "42")
    _, out, _ = call("rank", "--catalog", "W5", "--dim", "3", "--format", "json")
    assert json.loads(out)["seed"] == 42
    _, out, _ = call("rank", "--catalog", "W5", "--dim", "3", "--format", "json", "--seed", "7")
    assert json.loads(out)["seed"] == 7


def test_witness_files(tmp_path):
    code, out, _ = call(
        "verify", "--claim", "degree-sum", "--n", "7", "--dim", "2", "--bound-kind", "f-tight",
        "--witness-dir", str(tmp_path), "--quiet", "--format", "json",
    )
    assert code == 0
    files = list(tmp_path.glob("*.witnesses.g6"))
    assert len(files) == 1
    lines = files[0].read_text().split()
    assert lines == json.loads(out)["witnesses"]
    assert all(decode_graph6(s).n == 7 for s in lines)


def test_edge_list_and_g6_file_inputs(tmp_path):
    W5 = catalog("W5").graph
    p = tmp_path / "w5.txt"
    p.write_text(write_edge_list(W5))
    _, out, _ = call("rank", "--edge-list", str(p), "--dim", "3", "--format", "json")
    assert json.loads(out)["rank"] == 8
    g = tmp_path / "two.g6"
    g.write_text(encode_graph6(W5) + "\n" + encode_graph6(catalog("B6").graph) + "\n")
    code, out, _ = call("rigid", "--g6-file", str(g), "--dim", "3", "--format", "json")
    assert code == 0 and len(out.splitlines()) == 2


def test_other_commands_run():
    assert call("closure", "--catalog", "C(4)")[0] == 0
    assert call("linked", "--catalog", "K4_minus_e", "--dim", "3", "--pair", "2,3")[0] == 0
    assert call("bridge", "--catalog", "C(4)", "--edge", "0,1")[0] == 0
    assert call("circuit", "--catalog", "K(5)", "--dim", "3")[0] == 0
    assert call("rcstar", "--catalog", "W5", "--dim", "3", "--check")[0] == 0
    code, out, _ = call("construct", "--catalog", "K(4)", "--dim", "3", "--op", "zero", "--S", "0,1,2", "--check", "--format", "json")
    assert code == 0 and json.loads(out)["result_rigid"] is True
    code, out, _ = call("catalog")
    assert code == 0 and "W5" in out
    code, out, _ = call("enumerate", "--n", "4")
    assert code == 0 and len(out.split()) == 11
    code, out, _ = call("chain-check", "--catalog", "K(12)", "--dim", "2", "--format", "json")
    assert code == 0 and json.loads(out)["certificate"] is True
    assert call("chain-check", "--catalog", "K(6)", "--pairing", "0,1;1,2;4,5")[0] == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "rigikit", "compute-g", "--n", "4", "--dim", "2"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "5"
