"""End-to-end tests of the command-line interface.

main() is called in-process; stdout, stderr, and exit codes are asserted
together so each documented code keeps its meaning.
"""

import json

import pytest

import alexquandle.cli as cli
from alexquandle.cli import SpecParseError, main, parse_spec
from alexquandle.lambda_module import LambdaModule
from alexquandle.quandle import QuandleTable, alexander_table, is_quandle_iso
from alexquandle.lambda_module import linear_module


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_text_and_json(capsys):
    code, out, err = run(capsys, ["build", "linear:3:2", "--format", "text"])
    assert (code, err) == (0, "")
    assert out == "0 2 1\n2 1 0\n1 0 2\n"
    code, out, _ = run(capsys, ["build", "linear:3:2", "--format", "json"])
    assert code == 0
    assert json.loads(out) == {"order": 3, "table": [[0, 2, 1], [2, 1, 0], [1, 0, 2]]}


def test_build_to_file(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, out, _ = run(capsys, ["build", "linear:5:2", "-o", str(path)])
    assert code == 0 and out == ""
    data = json.loads(path.read_text())
    assert data["order"] == 5


def test_axioms_pass_and_fail(capsys, tmp_path):
    code, out, _ = run(capsys, ["axioms", "poly:2:1,1,1"])
    assert (code, out) == (0, "pass\n")

    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n0 1\n")
    code, out, _ = run(capsys, ["axioms", f"table:@{bad}"])
    assert code == 1
    assert out == "axiom (i) fails at (0, 1, 0)\n"


def test_malformed_specs_exit_2(capsys):
    for spec in ["linear:8", "linear:8:x", "foo:3", "sum:linear:4:1", "pair:direct"]:
        code, _, err = run(capsys, ["axioms", spec])
        assert code == 2, spec
        assert err.startswith("spec error:"), spec
        assert "position" in err


def test_invalid_values_exit_3(capsys, tmp_path):
    code, _, err = run(capsys, ["axioms", "linear:8:2"])  # gcd(8, 2) != 1
    assert code == 3
    assert err.startswith("invalid input:")
    code, _, err = run(capsys, ["build", "poly:4:2,1"])  # non-unit constant
    assert code == 3
    oor = tmp_path / "oor.txt"
    oor.write_text("0 9\n1 0\n")
    code, _, err = run(capsys, ["build", f"table:@{oor}"])
    assert code == 3
    code, _, err = run(capsys, ["build", "table:@/no/such/file"])
    assert code == 3


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_parse_spec_positions():
    with pytest.raises(SpecParseError) as exc:
        parse_spec("linear:8:x")
    assert exc.value.position == 9
    with pytest.raises(SpecParseError) as exc:
        parse_spec("poly:2:1,y,1")
    assert exc.value.position == 9
    with pytest.raises(SpecParseError) as exc:
        parse_spec("sum:linear:2:1+sum:linear:2:1+linear:2:1")
    assert exc.value.position == 15


def test_iso_true_false_and_witness(capsys):
    code, out, _ = run(capsys, ["iso", "linear:9:4", "linear:9:7"])
    assert (code, out) == (0, "true\n")
    code, out, _ = run(capsys, ["iso", "linear:8:1", "linear:8:3"])
    assert (code, out) == (1, "false\n")

    code, out, _ = run(
        capsys, ["iso", "linear:9:4", "linear:9:7", "--witness", "--method", "both"]
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "true"
    perm = tuple(int(v) for v in lines[1].split())
    t1 = alexander_table(linear_module(9, 4))
    t2 = alexander_table(linear_module(9, 7))
    assert is_quandle_iso(t1, t2, perm)


def test_iso_brute_accepts_tables(capsys, tmp_path):
    path = tmp_path / "t.txt"
    code, out, _ = run(capsys, ["build", "linear:9:4", "--format", "text", "-o", str(path)])
    assert code == 0
    code, out, _ = run(
        capsys, ["iso", f"table:@{path}", "linear:9:7", "--method", "brute"]
    )
    assert (code, out) == (0, "true\n")
    code, _, err = run(capsys, ["iso", f"table:@{path}", "linear:9:7"])
    assert code == 3  # theorem1 needs module specs
    assert "module specs" in err


def test_iso_decider_disagreement_exits_4(capsys, monkeypatch):
    monkeypatch.setattr(cli, "brute_iso", lambda a, b: None)
    code, out, err = run(
        capsys, ["iso", "linear:9:4", "linear:9:7", "--method", "both"]
    )
    assert code == 4
    assert "disagree" in err


def test_dual_and_self_check(capsys, monkeypatch):
    code, out, _ = run(capsys, ["dual", "linear:5:2", "--format", "text", "--self-check"])
    assert code == 0
    dual_rows = tuple(
        tuple(int(v) for v in line.split()) for line in out.splitlines()
    )
    # t inverts: dual of multiplication by 2 is multiplication by 3 mod 5
    assert QuandleTable(dual_rows) == alexander_table(linear_module(5, 3))

    monkeypatch.setattr(cli, "dual", lambda t: alexander_table(linear_module(5, 2)))
    code, _, err = run(capsys, ["dual", "linear:5:3", "--self-check"])
    assert code == 4
    assert "involution" in err


def test_orbits_output(capsys):
    code, out, _ = run(capsys, ["orbits", "linear:9:4"])
    assert code == 0
    assert out == "0 3 6\n1 4 7\n2 5 8\nconnected: false\n"
    code, out, _ = run(capsys, ["orbits", "linear:9:4", "--format", "json"])
    assert json.loads(out) == {
        "orbits": [[0, 3, 6], [1, 4, 7], [2, 5, 8]],
        "connected": False,
    }


def test_im1t_identify(capsys):
    code, out, _ = run(capsys, ["im1t", "linear:8:5", "--identify"])
    assert code == 0
    assert out == "members: 0 4\ngroup: 2\nidentified: linear:2:1\n"
    code, out, _ = run(capsys, ["im1t", "linear:8:5", "--identify", "--format", "json"])
    assert json.loads(out) == {
        "members": [0, 4],
        "invariant_factors": [2],
        "identified": "linear:2:1",
    }
    # the trivial image renders as 0
    code, out, _ = run(capsys, ["im1t", "sum:linear:2:1+linear:2:1", "--identify"])
    assert out == "members: 0\ngroup: 1\nidentified: 0\n"
    code, out, _ = run(capsys, ["im1t", "linear:8:5", "--power", "2"])
    assert code == 0
    assert out.splitlines()[0] == "members: 0"


def test_pair_spec_from_file(capsys, tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(
        json.dumps(
            {"invariant_factors": [2, 4], "t_generator_images": [[1, 0], [1, 1]]}
        )
    )
    code, out, _ = run(
        capsys, ["iso", f"pair:@{path}", "linear:8:5", "--method", "both"]
    )
    assert (code, out) == (0, "true\n")
    path.write_text("{not json")
    code, _, err = run(capsys, ["axioms", f"pair:@{path}"])
    assert code == 3
    assert "bad JSON" in err


def test_linear_subcommands(capsys):
    assert run(capsys, ["linear", "iso", "9", "4", "7"])[0:2] == (0, "true\n")
    assert run(capsys, ["linear", "iso", "9", "4", "2"])[0:2] == (1, "false\n")
    assert run(capsys, ["linear", "connected", "5", "2"])[0:2] == (0, "true\n")
    assert run(capsys, ["linear", "connected", "12", "1"])[0:2] == (1, "false\n")
    assert run(capsys, ["linear", "dual", "5", "2", "3"])[0:2] == (0, "true\n")
    assert run(capsys, ["linear", "selfdual", "5", "4"])[0:2] == (0, "true\n")
    assert run(capsys, ["linear", "ncap", "9", "4"])[0:2] == (0, "3\n")
    assert run(capsys, ["linear", "ncap", "9", "3"])[0] == 3


def test_classify_formats(capsys):
    code, out, _ = run(capsys, ["classify", "4", "--format", "csv"])
    assert code == 0
    assert out == (
        "representative,connected,class_size_in_enumeration\n"
        "linear:4:1,false,2\n"
        "linear:4:3,false,4\n"
        '"poly:2:1,1,1",true,2\n'
    )
    code, out, _ = run(capsys, ["classify", "4", "--connected-only"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "order 4: 3 distinct, 1 connected"
    assert len(lines) == 2 and "poly:2:1,1,1" in lines[1]
    code, out, _ = run(capsys, ["classify", "4", "--format", "json"])
    assert json.loads(out)["distinct"] == 3


def test_order_guard_env(capsys, monkeypatch):
    code, _, err = run(capsys, ["classify", "16"])
    assert code == 3
    assert "QUANDLE_MAX_ORDER" in err
    monkeypatch.setenv("QUANDLE_MAX_ORDER", "5")
    code, _, err = run(capsys, ["classify", "6"])
    assert code == 3
    monkeypatch.setenv("QUANDLE_MAX_ORDER", "18")
    with pytest.warns(RuntimeWarning):
        code, out, _ = run(capsys, ["classify", "18"])
    assert code == 0
    assert out.splitlines()[0] == "order 18: 11 distinct, 0 connected"
    monkeypatch.setenv("QUANDLE_MAX_ORDER", "zap")
    code, _, err = run(capsys, ["classify", "6"])
    assert code == 3
    assert "must be an integer" in err


def test_table2_exact(capsys):
    code, out, _ = run(capsys, ["table2", "--max", "6", "--format", "csv"])
    assert code == 0
    assert out == "n,distinct,connected\n2,1,0\n3,2,1\n4,3,1\n5,4,3\n6,2,0\n"


def test_table1_row_count(capsys):
    code, out, _ = run(capsys, ["table1"])
    assert code == 0
    assert len(out.splitlines()) == 17
    code, out, _ = run(capsys, ["table1", "--format", "json"])
    rows = json.loads(out)
    assert len(rows) == 17
    assert rows[0] == {
        "group": [2, 2],
        "module": "sum:linear:2:1+linear:2:1",
        "image": "0",
    }


def test_parse_spec_returns_module_or_table(tmp_path):
    assert isinstance(parse_spec("linear:4:3"), LambdaModule)
    path = tmp_path / "t.txt"
    path.write_text("0 1\n", encoding="utf-8")
    with pytest.raises(ValueError):
        parse_spec(f"table:@{path}")  # 1 x 2 is not square
