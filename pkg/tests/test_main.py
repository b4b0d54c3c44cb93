# Tests for main CLI module

"""Tests for the command-line surface, run in-process through main(argv)."""

import json

import pytest

from aglmobius import config
from aglmobius.errors import NotContained, ParseError
from aglmobius.main import build_parser, main, parse_descriptor
from aglmobius.subgroups import full_group, make_subgroup, trivial_subgroup
from aglmobius.submodules import Submodule


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestDescriptors:
    """Tests for subgroup descriptor parsing."""

    def test_shortcuts(self, catalog4, f4):
        assert parse_descriptor("trivial", catalog4) == trivial_subgroup(f4)
        assert parse_descriptor("full", catalog4) == full_group(f4)

    def test_index(self, catalog4):
        assert parse_descriptor("i=3", catalog4) == catalog4[3]

    def test_triple(self, catalog4, f4):
        expected = make_subgroup(f4, 3, f4.one, Submodule.zero(f4))
        assert parse_descriptor("d=3;b=g^0;H=[]", catalog4) == expected
        assert parse_descriptor("d=3; b=[1,0]", catalog4) == expected

    def test_whole_and_json_basis(self, catalog4, f4):
        assert parse_descriptor("d=1;H=F", catalog4) == make_subgroup(f4, 1, None, Submodule.whole(f4))
        line = parse_descriptor("d=1;H=[[1,0]]", catalog4)
        assert line.H == Submodule.span(f4, [f4.one])
        assert parse_descriptor('d=1;H=["1"]', catalog4) == line

    @pytest.mark.parametrize("text", ["d=x", "i=99", "q=3", "b=0", "d=1;H=[[1]]", "d=1;H=nope", "d"])
    def test_errors(self, catalog4, text):
        with pytest.raises(ParseError):
            parse_descriptor(text, catalog4)


class TestMuCommand:
    """Tests for the mu command."""

    def test_trivial_to_full(self, capsys):
        code, out, _ = run(capsys, "mu", "--q", "4", "--s1", "trivial", "--s2", "full")
        assert code == 0
        assert out.splitlines()[0] == "4"

    def test_same_subgroup(self, capsys):
        code, out, _ = run(capsys, "mu", "--q", "4", "--s1", "i=3", "--s2", "i=3")
        assert code == 0
        assert out.strip() == "1"

    def test_explain(self, capsys):
        code, out, _ = run(capsys, "mu", "--q", "9", "--s1", "trivial", "--s2", "d=4;H=F", "--explain")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "0"
        assert "mu(4)=0" in lines[1]

    def test_p_and_n(self, capsys):
        code, out, _ = run(capsys, "mu", "--p", "2", "--n", "3", "--s1", "trivial", "--s2", "full")
        assert code == 0
        assert out.strip() == "8"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "mu", "--q", "4", "--s1", "trivial", "--s2", "full", "--json")
        data = json.loads(out)
        assert code == 0
        assert data["mu"] == 4
        assert data["branch"] == "d1_eq_1"
        assert data["S2"]["order"] == 12

    def test_not_contained_exits_2(self, capsys):
        code, _, err = run(capsys, "mu", "--q", "4", "--s1", "full", "--s2", "trivial")
        assert code == NotContained.exit_code == 2
        assert "error: " in err

    def test_parse_error_exits_1(self, capsys):
        code, _, err = run(capsys, "mu", "--q", "4", "--s1", "d=x", "--s2", "full")
        assert code == 1
        assert "error:" in err

    def test_not_prime_power(self, capsys):
        code, _, err = run(capsys, "mu", "--q", "6", "--s1", "trivial", "--s2", "full")
        assert code == 1
        assert "not a prime power" in err

    def test_missing_field(self, capsys):
        code, _, _ = run(capsys, "mu", "--p", "2", "--s1", "trivial", "--s2", "full")
        assert code == 1


class TestTableCommand:
    """Tests for the table command."""

    def test_json_table(self, capsys):
        code, out, _ = run(capsys, "table", "--q", "4", "--json")
        data = json.loads(out)
        assert code == 0
        assert len(data["subgroups"]) == 10
        assert [0, 9, 4] in data["mu"]
        assert data["modulus"] == [1, 1, 1]

    def test_oracle_table_matches(self, capsys):
        _, closed, _ = run(capsys, "table", "--q", "5", "--csv")
        _, oracle, _ = run(capsys, "table", "--q", "5", "--csv", "--oracle")
        assert closed == oracle
        assert closed.splitlines()[0] == "i,j,d1,d2,dimH1,dimH2,mu"

    def test_deterministic(self, capsys):
        first = run(capsys, "table", "--q", "8", "--json")[1]
        second = run(capsys, "table", "--q", "8", "--json")[1]
        assert first == second

    def test_cache_round_trip(self, capsys, tmp_path):
        fresh = run(capsys, "table", "--q", "4", "--json")[1]
        cached = run(capsys, "table", "--q", "4", "--json", "--cache", "--cache-dir", str(tmp_path))[1]
        reloaded = run(capsys, "table", "--q", "4", "--json", "--cache", "--cache-dir", str(tmp_path))[1]
        assert fresh == cached == reloaded
        assert (tmp_path / "agl_q4_p2_table.json").exists()

    def test_oracle_cap_flag(self, capsys):
        before = config.ORACLE_MAX_SUBGROUPS
        code, _, err = run(capsys, "table", "--q", "4", "--oracle", "--oracle-cap", "3")
        assert code == 1
        assert "oracle cap 3" in err
        assert config.ORACLE_MAX_SUBGROUPS == before

    def test_oracle_cap_does_not_leak_between_runs(self, capsys):
        assert run(capsys, "table", "--q", "4", "--oracle", "--oracle-cap", "3")[0] == 1
        assert run(capsys, "table", "--q", "4", "--oracle")[0] == 0


class TestSubgroupsCommand:
    """Tests for the subgroups command."""

    def test_csv_rows(self, capsys):
        code, out, _ = run(capsys, "subgroups", "--q", "5", "--csv")
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0] == "index,d,b,dim_p,H,order"
        assert len(lines) == 15

    def test_json(self, capsys):
        code, out, _ = run(capsys, "subgroups", "--q", "4", "--json")
        records = json.loads(out)
        assert [r["index"] for r in records] == list(range(10))
        assert records[-1]["order"] == 12

    def test_text(self, capsys):
        code, out, _ = run(capsys, "subgroups", "--q", "3")
        assert out.splitlines()[0] == "q=3: 6 subgroups"


class TestVerifyCommand:
    """Tests for the verify command."""

    def test_q4_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--q", "4")
        assert code == 0
        assert "FAIL" not in out
        assert out.strip().endswith("all checks passed")

    def test_malformed_q(self, capsys):
        code, _, err = run(capsys, "verify", "--q", "6")
        assert code == 1
        assert "not a prime power" in err

    def test_fast_json(self, capsys):
        code, out, _ = run(capsys, "verify", "--q", "2,3", "--level", "fast", "--json")
        data = json.loads(out)
        assert code == 0
        assert data["level"] == "fast"
        assert [c["name"] for c in data["checks"]] == ["oracle_equivalence", "oracle_equivalence"]


class TestDesignsCommand:
    """Tests for the designs command."""

    def test_csv_columns(self, capsys):
        code, out, _ = run(capsys, "designs", "--q", "4", "--k-min", "2", "--k-max", "3", "--csv")
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0] == "subgroup_index,order,k,f_k,g_k,lambda_num,lambda_den,integral"
        assert len(lines) == 1 + 10 * 2

    def test_json(self, capsys):
        code, out, _ = run(capsys, "designs", "--q", "4", "--json")
        data = json.loads(out)
        assert data["v"] == 4
        assert {"v": 4, "k": 3, "lambda_num": 2, "lambda_den": 1, "stabilizer_orders": [3]} in data["parameters"]


class TestEulerianCommand:
    """Tests for the eulerian command."""

    def test_q4_m2(self, capsys):
        code, out, _ = run(capsys, "eulerian", "--q", "4", "--m", "2")
        assert code == 0
        assert out.strip() == "96"

    def test_check(self, capsys):
        code, out, _ = run(capsys, "eulerian", "--q", "3", "--m", "2", "--check", "--json")
        data = json.loads(out)
        assert code == 0
        assert data["phi"] == data["brute_force"] == 18


class TestSupergroupsCommand:
    """Tests for the supergroups command."""

    def test_trivial(self, capsys):
        code, out, _ = run(capsys, "supergroups", "--q", "4", "--subgroup", "trivial", "--json")
        data = json.loads(out)
        assert code == 0
        assert len(data["immediate_supergroups"]) == 7
        assert data["maximal_subgroups"] == []

    def test_full_group(self, capsys):
        code, out, _ = run(capsys, "supergroups", "--q", "4", "--subgroup", "full", "--json")
        data = json.loads(out)
        assert data["immediate_supergroups"] == []
        assert len(data["maximal_subgroups"]) == 5


class TestParser:
    """Tests for the argument parser."""

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["--version"])
        assert exc.value.code == 0
        assert "aglmobius" in capsys.readouterr().out

    def test_command_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])
