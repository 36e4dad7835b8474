"""Unit circle, the V-set, root counts N(a), and Walsh values."""

import pytest

from cppforge.field import build_field
from cppforge.niho import (NihoCtx, count_N, direct_walsh, niho_s_from_d,
                           unit_circle, v_set, walsh_value)
from cppforge.oracle import monomial_map


@pytest.fixture(scope="module")
def n9(f9):
    return NihoCtx(f9, 1)


def test_odd_degree_rejected(f81):
    NihoCtx(f81, 2)
    with pytest.raises(ValueError, match="odd-degree"):
        NihoCtx(f81, 3)


class TestUnitCircle:
    def test_size_and_membership(self, n9):
        U = unit_circle(n9)
        assert len(U) == 4
        assert 1 in U
        for lam in U:
            assert n9.ctx.pow(lam, 4) == 1
            assert n9.ctx.mul(lam, n9.conj(lam)) == 1

    def test_matches_enumeration(self, n9):
        brute = {x for x in range(1, 9)
                 if n9.ctx.mul(x, n9.conj(x)) == 1}
        assert set(unit_circle(n9)) == brute


class TestVSet:
    def test_f9(self, n9, f9):
        i = f9.element((0, 1))
        assert set(v_set(n9)) == {i, f9.neg(i)}

    def test_sizes(self):
        for p, k in ((3, 2), (5, 2)):
            ctx = build_field(p, 2 * k)
            n = NihoCtx(ctx, k)
            assert len(v_set(n)) == p ** k - 1


class TestCountN:
    def test_count_is_one_on_v(self):
        # p = 3, k <= 3, s derived from d = 3^k + 2: N(a) = 1 for a in V
        for k in (1, 2, 3):
            ctx = build_field(3, 2 * k)
            n = NihoCtx(ctx, k)
            s = niho_s_from_d(3, 2 * k, k, 3 ** k + 2)
            # s must reproduce d' = s(p^k-1)+1 ~ d * 3^(n-1) as exponents
            assert (s * (3 ** k - 1) + 1 - (3 ** k + 2) * 3 ** (2 * k - 1)) \
                % (3 ** (2 * k) - 1) == 0
            for a in v_set(n):
                assert count_N(n, a, s) == 1

    def test_a_zero_by_enumeration(self, n9, f9):
        # the equation at a = 0: lambda^s + lambda^(1-s) = 0 over U
        s = 3
        brute = sum(1 for lam in unit_circle(n9)
                    if f9.add(f9.pow(lam, s % 8), f9.pow(lam, (1 - s) % 8)) == 0)
        assert count_N(n9, 0, s) == brute

    def test_s_one_by_enumeration(self, n9, f9):
        for a in range(9):
            brute = 0
            for lam in unit_circle(n9):
                v = f9.add(f9.add(lam, 1),
                           f9.add(f9.mul(n9.conj(a), lam), a))
                brute += v == 0
            assert count_N(n9, a, 1) == brute


class TestWalsh:
    def test_formula_equals_direct_f9(self, n9, f9):
        for s in (1, 2, 3, 5):
            d = s * 2 + 1
            fm = monomial_map(f9, d)
            for a in range(9):
                assert direct_walsh(f9, fm, a).as_int() == walsh_value(n9, a, s)

    def test_formula_equals_direct_f25(self):
        ctx = build_field(5, 2)
        n = NihoCtx(ctx, 1)
        for s in (2, 3):
            d = s * 4 + 1
            fm = monomial_map(ctx, d)
            for a in range(25):
                assert direct_walsh(ctx, fm, a).as_int() == walsh_value(n, a, s)

    def test_zero_on_v(self, n9):
        s = niho_s_from_d(3, 2, 1, 5)
        for a in v_set(n9):
            assert walsh_value(n9, a, s) == 0

    def test_trivial_sums(self, f9):
        zero_map = monomial_map(f9, 1, 0)
        fm = type(zero_map)(f9, lambda x: 0,
                            values=lambda: __import__("numpy").zeros(9, dtype=int))
        assert direct_walsh(f9, fm, 0).as_int() == 9
        for a in range(1, 9):
            assert direct_walsh(f9, fm, a).is_zero()

    def test_s_recovery_error(self):
        with pytest.raises(ValueError, match="not of the form"):
            niho_s_from_d(3, 4, 2, 7)
