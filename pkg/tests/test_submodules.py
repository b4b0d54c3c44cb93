# Tests for submodules module

"""Tests for submodules of F_q, coefficient fields and subspace Moebius values."""

import pytest

from aglmobius.errors import CharDividesD, NotContained, NotDivisor, NotModule
from aglmobius.gf import build_field, gamma_of, power, subfield_elements
from aglmobius.submodules import (
    Submodule, coefficient_field, covering_submodules, enumerate_submodules, gaussian_total,
    is_module_over, subfield_sum_check, mu_subspace, p_of_d, quotient_dim, span_over, stabilizer_field,
    subfield_tag, subfield_tags,
)


class TestSubmodule:
    """Tests for the canonical echelon form."""

    def test_span_is_canonical(self, f9):
        a = f9.element([1, 2])
        assert Submodule.span(f9, [a]) == Submodule.span(f9, [a + a])

    def test_zero_and_whole(self, f16):
        assert Submodule.zero(f16).size == 1
        assert Submodule.whole(f16).size == 16
        assert Submodule.whole(f16).dim_p == 4

    def test_membership(self, f9):
        H = Submodule.span(f9, [f9.element([1, 1])])
        assert f9.element([2, 2]) in H
        assert f9.element([1, 0]) not in H
        assert len(H.elements()) == 3

    def test_reduce_zeroes_pivots(self, f9):
        H = Submodule.span(f9, [f9.element([1, 1])])
        rep = H.reduce(f9.element([2, 0]))
        assert rep.coeffs[0] == 0
        assert rep - f9.element([2, 0]) in H

    def test_coset_representatives(self, f16):
        H = Submodule.span(f16, [f16.one])
        reps = H.coset_representatives()
        assert len(reps) == 8
        assert len({H.reduce(x) for x in f16.elements()}) == 8
        assert set(reps) == {H.reduce(x) for x in f16.elements()}


class TestCoefficientFields:
    """Tests for p(d), subfield tags and module checks."""

    @pytest.mark.parametrize("p,d,expected", [(2, 1, 1), (3, 1, 1), (2, 3, 4), (3, 2, 3), (3, 13, 27)])
    def test_p_of_d(self, p, d, expected):
        assert p_of_d(p, d) == expected

    def test_p_of_d_rejects_characteristic(self):
        with pytest.raises(CharDividesD):
            p_of_d(3, 6)

    def test_coefficient_field_for_d_one(self):
        assert coefficient_field(5, 1) == 5
        assert coefficient_field(2, 3) == 4

    def test_subfield_tags(self, f16):
        assert [(t.r, t.m) for t in subfield_tags(f16)] == [(2, 1), (4, 2), (16, 4)]
        with pytest.raises(NotDivisor):
            subfield_tag(f16, 8)

    def test_trivial_modules(self, f16):
        for tag in subfield_tags(f16):
            assert is_module_over(Submodule.zero(f16), tag)
            assert is_module_over(Submodule.whole(f16), tag)

    def test_prime_field_line_is_not_f4_module(self, f16):
        assert not is_module_over(Submodule.span(f16, [f16.one]), 4)

    def test_stabilizer_field(self, f16):
        g = gamma_of(f16)
        assert stabilizer_field(Submodule.zero(f16)).r == 16
        assert stabilizer_field(Submodule.whole(f16)).r == 16
        assert stabilizer_field(Submodule.span(f16, [f16.one, g])).r == 2
        assert stabilizer_field(Submodule.span(f16, subfield_elements(f16, 2))).r == 4

    def test_span_over(self, f16):
        assert span_over(f16, [f16.one], 4) == Submodule.span(f16, subfield_elements(f16, 2))


class TestEnumeration:
    """Tests for F_r-subspace enumeration."""

    @pytest.mark.parametrize("p,n,r,count", [(2, 2, 4, 2), (2, 2, 2, 5), (2, 4, 4, 7), (2, 4, 2, 67), (3, 2, 3, 6)])
    def test_counts(self, p, n, r, count):
        assert len(enumerate_submodules(build_field(p, n), r)) == count

    def test_counts_match_gaussian_total(self, f16):
        assert len(enumerate_submodules(f16, 2)) == gaussian_total(4, 2)
        assert len(enumerate_submodules(f16, 4)) == gaussian_total(2, 4)

    def test_all_are_modules_and_distinct(self, f16):
        found = enumerate_submodules(f16, 4)
        assert len(set(found)) == len(found)
        assert all(is_module_over(H, 4) for H in found)

    def test_sorted(self, f9):
        found = enumerate_submodules(f9, 3)
        assert found == sorted(found, key=Submodule.sort_key)
        assert found[0] == Submodule.zero(f9)
        assert found[-1] == Submodule.whole(f9)

    def test_covering_submodules(self, f16):
        covers = covering_submodules(Submodule.zero(f16), 4)
        assert len(covers) == 5
        assert all(H.dim_p == 2 for H in covers)


class TestQuotientAndMu:
    """Tests for quotient dimensions and the subspace Moebius value."""

    def test_quotient_dim(self, f4, f16):
        assert quotient_dim(Submodule.zero(f4), Submodule.whole(f4), 4) == 1
        assert quotient_dim(Submodule.zero(f16), Submodule.whole(f16), 4) == 2
        H = Submodule.whole(f16)
        assert quotient_dim(H, H, 16) == 0

    def test_quotient_dim_errors(self, f16):
        line = Submodule.span(f16, [f16.one])
        with pytest.raises(NotContained):
            quotient_dim(Submodule.whole(f16), line, 2)
        with pytest.raises(NotModule):
            quotient_dim(line, Submodule.whole(f16), 4)
        plane = Submodule.span(f16, subfield_elements(f16, 2))
        g = gamma_of(f16)
        three = Submodule.span(f16, list(plane.vectors()) + [power(g, 3)])
        with pytest.raises(NotModule):
            quotient_dim(plane, three, 4)

    @pytest.mark.parametrize("l,r,expected", [(0, 2, 1), (1, 2, -1), (1, 9, -1), (2, 2, 2), (3, 2, -8), (2, 4, 4)])
    def test_mu_subspace(self, l, r, expected):
        assert mu_subspace(l, r) == expected


class TestSubfieldSumIdentity:
    """Tests for the subfield summation identity."""

    def test_zero_space(self, f4):
        assert subfield_sum_check(f4, 2, Submodule.zero(f4), 4)

    def test_f4_over_f2(self, f4):
        assert subfield_sum_check(f4, 2, Submodule.whole(f4), 4)

    def test_f16_over_f2_through_f4(self, f16):
        assert subfield_sum_check(f16, 2, Submodule.whole(f16), 4)

    def test_every_f4_module_of_f16(self, f16):
        assert all(subfield_sum_check(f16, 2, V, 4) for V in enumerate_submodules(f16, 4))

    def test_default_uses_stabilizer_field(self, f16):
        for V in enumerate_submodules(f16, 2):
            assert subfield_sum_check(f16, 2, V)
            assert subfield_sum_check(f16, 2, V) == subfield_sum_check(f16, 2, V, stabilizer_field(V))

    def test_errors(self, f16):
        with pytest.raises(NotModule):
            subfield_sum_check(f16, 2, Submodule.span(f16, [f16.one]), 4)
        with pytest.raises(NotDivisor):
            subfield_sum_check(f16, 4, Submodule.whole(f16), 2)
