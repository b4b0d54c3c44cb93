"""
End-to-End Acceptance Tests for aglmobius

Each class runs one acceptance criterion across the field sizes it names:
closed formula against the recursive oracle, classification against
closure, crosscut agreement, the subfield sum identity, the elementary
abelian formula, the design inversion identities, the Eulerian cross-check,
Moebius inversion round trips and CLI determinism.
"""

import json

import pytest

from aglmobius.agl_mobius import mu_table_closed, mu_table_oracle
from aglmobius.gf import build_field
from aglmobius.main import main
from aglmobius.number_utils import prime_power_decompose
from aglmobius.subgroups import enumerate_all
from aglmobius.verification import (
    check_classification, check_crosscuts, check_designs, check_eulerian, check_inversion_roundtrip,
    check_subfield_sum, check_oracle_equivalence, check_pgroup, run_verification,
)


def _catalog(q):
    return enumerate_all(build_field(*prime_power_decompose(q)))


def _passed(result):
    assert not result.skipped, result.detail
    assert result.failed == 0, result.detail
    assert result.passed > 0


SMALL = [2, 3, 4, 5, 7, 8, 9, 11, 13]
LARGE = [16, 25, 27]


class TestUATOracleEquivalence:
    """Closed-formula tables equal the recursive tables on every comparable pair."""

    @pytest.mark.parametrize("q", SMALL)
    def test_small_fields(self, q):
        _passed(check_oracle_equivalence(_catalog(q)))

    @pytest.mark.slow
    @pytest.mark.parametrize("q", LARGE)
    def test_large_fields(self, q):
        _passed(check_oracle_equivalence(_catalog(q)))

    def test_q4_headline_value(self):
        catalog = _catalog(4)
        assert len(catalog) == 10
        assert mu_table_oracle(catalog).value(catalog.bottom, catalog.top) == 4


class TestUATClassification:
    """The catalog matches brute-force closure enumeration."""

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
    def test_small_fields(self, q):
        _passed(check_classification(_catalog(q)))

    @pytest.mark.slow
    def test_q9(self):
        _passed(check_classification(_catalog(9)))


class TestUATCrosscuts:
    """Both crosscut sums equal the recursive value on every interval."""

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
    def test_small_fields(self, q):
        catalog = _catalog(q)
        _passed(check_crosscuts(catalog, mu_table_oracle(catalog)))

    @pytest.mark.slow
    def test_q9(self):
        catalog = _catalog(9)
        _passed(check_crosscuts(catalog, mu_table_oracle(catalog)))


class TestUATSubfieldSums:
    """The subfield summation identity and the elementary abelian formula."""

    @pytest.mark.parametrize("q", [4, 8, 9, 16, 27])
    def test_subfield_sum(self, q):
        _passed(check_subfield_sum(build_field(*prime_power_decompose(q))))

    @pytest.mark.parametrize("q", [4, 8, 9, 16, 27])
    def test_elementary_abelian(self, q):
        _passed(check_pgroup(build_field(*prime_power_decompose(q))))


class TestUATDesigns:
    """f_k inverts to g_k, the g_k partition all k-subsets and realizable lambdas are integral."""

    @pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
    def test_design_identities(self, q):
        catalog = _catalog(q)
        _passed(check_designs(catalog, mu_table_closed(catalog)))


class TestUATEulerian:
    """eulerian_phi matches brute-force generating tuple counts."""

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
    def test_brute_force(self, q):
        catalog = _catalog(q)
        _passed(check_eulerian(catalog, mu_table_closed(catalog)))


class TestUATInversion:
    """Summation followed by Moebius inversion recovers random functions on the q = 8 lattice."""

    def test_round_trip_q8(self):
        catalog = _catalog(8)
        result = check_inversion_roundtrip(catalog, mu_table_oracle(catalog), trials=100)
        _passed(result)
        assert result.passed == 100


class TestUATCli:
    """CLI output is deterministic and survives the cache."""

    @pytest.mark.slow
    def test_table_q16_byte_identical(self, capsys, tmp_path):
        outputs = []
        for extra in ([], [], ["--cache", "--cache-dir", str(tmp_path)], ["--cache", "--cache-dir", str(tmp_path)]):
            assert main(["table", "--q", "16", "--json", *extra]) == 0
            outputs.append(capsys.readouterr().out)
        assert len(set(outputs)) == 1
        data = json.loads(outputs[0])
        assert len(data["subgroups"]) == 138

    def test_verify_report(self):
        report = run_verification([4, 5], level="full")
        assert report.ok
        assert {c.q for c in report.checks} == {4, 5}
        skipped = [c.name for c in report.checks if c.skipped]
        assert skipped == []

    def test_oracle_cap_skips_comparison(self):
        report = run_verification([4], level="full", oracle_cap=5)
        assert [c.name for c in report.checks] == ["oracle_equivalence"]
        assert report.checks[0].skipped
        assert report.ok

    def test_fast_level_runs_first_row_only(self):
        report = run_verification([16], level="fast")
        assert [c.name for c in report.checks] == ["oracle_equivalence"]
        assert report.ok
