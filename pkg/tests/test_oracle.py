"""Permutation/CPP oracles and the criteria they are validated against."""

import random

import numpy as np
import pytest

from cppforge.field import build_field
from cppforge.niho import direct_walsh
from cppforge.oracle import (FieldMap, char_sum_pp_check, is_cpp,
                             is_cpp_exponent_pair, is_permutation,
                             monomial_map, mu_permutation_check,
                             subfield_product_check)


def brute_is_permutation(ctx, fn):
    return sorted(fn(x) for x in range(ctx.q)) == list(range(ctx.q))


class TestPermutation:
    def test_identity(self, f9):
        assert is_permutation(FieldMap(f9, lambda x: x))

    def test_cube_over_f7(self):
        f7 = build_field(7, 1)
        # x^3 is not a bijection since 7 = 1 mod 3
        assert not is_permutation(monomial_map(f7, 3))

    def test_x5_plus_x_over_f3(self):
        f3 = build_field(3, 1)
        assert is_permutation(monomial_map(f3, 5, 1))

    def test_scalar_and_vector_paths_agree(self, f81):
        rng = random.Random(3)
        for _ in range(20):
            perm = list(range(81))
            rng.shuffle(perm)
            fm_scalar = FieldMap(f81, perm.__getitem__)
            fm_vec = FieldMap(f81, perm.__getitem__,
                              values=lambda p=perm: np.array(p))
            assert is_permutation(fm_scalar) == is_permutation(fm_vec) is True
        not_perm = [0] * 81
        assert not is_permutation(FieldMap(f81, not_perm.__getitem__))


class TestCpp:
    def test_identity_is_cpp_odd_char(self, f9):
        # x and 2x are both bijections when p != 2
        assert is_cpp(FieldMap(f9, lambda x: x))

    def test_identity_not_cpp_char2(self):
        f4 = build_field(2, 2)
        assert not is_cpp(FieldMap(f4, lambda x: x))

    def test_niho_cpp_over_f9(self, f9):
        i = f9.element((0, 1))
        inv_i = f9.inv(i)
        assert is_cpp(FieldMap(f9, lambda x: f9.mul(inv_i, f9.pow(x, 5))))

    def test_exponent_pair_f9(self, f9):
        i = f9.element((0, 1))
        assert is_cpp_exponent_pair(f9, 5, i)
        # equivalent formulation: a^(-1) x^d and a^(-1) x^d + x both bijective
        inv_i = f9.inv(i)
        fm = FieldMap(f9, lambda x: f9.mul(inv_i, f9.pow(x, 5)))
        assert is_cpp(fm)

    def test_exponent_pair_gcd_failure(self, f9):
        assert not is_cpp_exponent_pair(f9, 2, 1)

    def test_zero_coefficient_rejected(self, f9):
        with pytest.raises(ValueError, match="zero-coefficient"):
            is_cpp_exponent_pair(f9, 5, 0)

    def test_exponent_pair_matches_brute_force(self, f81):
        d = 41
        for a in range(1, 81):
            brute = brute_is_permutation(
                f81, lambda x: f81.add(f81.pow(x, d), f81.mul(a, x)))
            assert is_cpp_exponent_pair(f81, d, a) == brute

    def test_scaling_preserves_permutation(self, f9):
        # pre/post-composing with x -> c x never changes bijectivity
        rng = random.Random(79)
        for _ in range(20):
            vals = [rng.randrange(9) for _ in range(9)]
            base = is_permutation(FieldMap(f9, vals.__getitem__))
            for c in range(1, 9):
                pre = FieldMap(f9, lambda x: vals[f9.mul(c, x)])
                post = FieldMap(f9, lambda x: f9.mul(c, vals[x]))
                assert is_permutation(pre) == base == is_permutation(post)


class TestCharSum:
    def test_identity_all_sums_vanish(self, f9):
        fm = FieldMap(f9, lambda x: x)
        assert char_sum_pp_check(fm)
        # each inner sum is the zero cyclotomic integer
        for alpha in range(1, 9):
            w = direct_walsh(f9, FieldMap(f9, lambda x: 0), alpha)
            assert w.is_zero()

    def test_cube_over_f7_fails(self):
        f7 = build_field(7, 1)
        assert not char_sum_pp_check(monomial_map(f7, 3))

    def test_agrees_with_bitmap_on_binomials(self, f9):
        for a in range(9):
            fm = monomial_map(f9, 5, a)
            assert char_sum_pp_check(fm) == is_permutation(fm)

    def test_agrees_on_random_maps(self, f9):
        rng = random.Random(5)
        for _ in range(100):
            vals = [rng.randrange(9) for _ in range(9)]
            fm = FieldMap(f9, vals.__getitem__,
                          values=lambda v=vals: np.array(v))
            assert char_sum_pp_check(fm) == is_permutation(fm)

    def test_cap(self):
        big = build_field(3, 10)
        with pytest.raises(ValueError, match="field-too-large-for-charsum"):
            char_sum_pp_check(FieldMap(big, lambda x: x))


class TestZieveCriteria:
    def test_mu_check_known_instance(self, f9):
        # x^d + a x = x(x^((p+1)(p-1)/2) + a) with d = 5, p = 3, k = 1:
        # l=1, g(y) = y^((p-1)/2... here (3-1)/2=1) + a over mu_2
        i = f9.element((0, 1))
        assert mu_permutation_check(f9, 1, [i, 1], 2)

    def test_mu_check_scaling(self, f25):
        for c in (1, 2, 7):
            assert mu_permutation_check(f25, 1, [c], 6)

    def test_mu_check_not_divisor(self, f9):
        with pytest.raises(ValueError, match="s-not-divisor"):
            mu_permutation_check(f9, 1, [1], 3)

    def test_mu_consistency_with_direct(self, f9, f25):
        # f(x) = x^l g(x^((q-1)/s)) permutes the field iff the mu-criterion
        # holds (checked by brute force over random l, g)
        rng = random.Random(17)
        for ctx in (f9, f25):
            q = ctx.q
            for _ in range(20):
                l = rng.randrange(1, 8)
                s = rng.choice([s for s in range(2, q) if (q - 1) % s == 0])
                g = [rng.randrange(q) for _ in range(rng.randrange(1, 4))]
                if ctx.poly_eval(g, 0) == 0 and all(c == 0 for c in g):
                    continue
                cof = (q - 1) // s
                fn = lambda x: ctx.mul(ctx.pow(x, l),
                                       ctx.poly_eval(g, ctx.pow(x, cof)))
                assert mu_permutation_check(ctx, l, g, s) == \
                    brute_is_permutation(ctx, fn), (ctx.p, l, s, g)

    def test_subfield_check_ha_connection(self, f81):
        # l = 1, g(x) = x + a: the product criterion coincides with h_a
        # permuting the subfield
        from cppforge.hadickson import ha_pp_check
        for a in range(81):
            assert subfield_product_check(f81, 1, [a, 1], 1) == \
                ha_pp_check(f81, a, 4, 1)

    def test_subfield_check_constant_g(self, f81):
        assert subfield_product_check(f81, 1, [1], 1)
        # gcd(l, (q-1)/(p-1)) = gcd(2, 40) fails
        assert not subfield_product_check(f81, 2, [1], 1)

    def test_subfield_consistency_with_direct(self, f81):
        rng = random.Random(23)
        cof = 80 // 2
        for _ in range(20):
            l = rng.randrange(1, 6)
            g = [rng.randrange(81) for _ in range(rng.randrange(1, 4))]
            fn = lambda x: f81.mul(f81.pow(x, l),
                                   f81.poly_eval(g, f81.pow(x, cof)))
            assert subfield_product_check(f81, l, g, 1) == \
                brute_is_permutation(f81, fn), (l, g)


class TestParseval:
    def test_sum_of_squared_walsh_values(self, f9):
        # sum over a of |W_f(a)|^2 = p^(2n) for any f
        rng = random.Random(29)
        for trial in range(3):
            vals = [rng.randrange(9) for _ in range(9)]
            fm = FieldMap(f9, vals.__getitem__)
            total = 0
            for a in range(9):
                w = direct_walsh(f9, fm, a)
                total += w.norm2()
            assert total == 3 ** 4
