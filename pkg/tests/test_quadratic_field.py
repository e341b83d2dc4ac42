import random
from fractions import Fraction

import pytest

from src.exact_arithmetic.errors import RingTagMismatchError
from src.exact_arithmetic.quadratic_field import QuadElem, RingTag, quad_mul, quad_norm


def random_elem(rng: random.Random, l: int) -> QuadElem:
    return QuadElem.of(Fraction(rng.randint(-20, 20), rng.randint(1, 6)),
                       Fraction(rng.randint(-20, 20), rng.randint(1, 6)), l)


class TestRingTag:
    def test_epsilon_by_l(self):
        assert RingTag(3).epsilon == 1
        assert RingTag(4).epsilon == 0
        assert RingTag(6).epsilon == -1
        assert RingTag(1).epsilon is None

    def test_invalid_tag(self):
        with pytest.raises(ValueError):
            RingTag(5)

    def test_e3_and_e6_share_a_field(self):
        assert RingTag(3).shares_field_with(RingTag(6))
        assert not RingTag(3).shares_field_with(RingTag(4))


class TestQuadMul:
    def test_i_squared(self):
        i = QuadElem.zeta(4)
        assert quad_mul(i, i) == QuadElem.rational(-1, 4)

    def test_one_plus_e3_squared(self):
        u = QuadElem.of(1, 1, 3)
        assert quad_mul(u, u) == QuadElem.zeta(3)

    def test_gaussian_norm_product(self):
        assert quad_mul(QuadElem.of(2, 1, 4), QuadElem.of(2, -1, 4)) == QuadElem.rational(5, 4)

    def test_mismatched_tags(self):
        with pytest.raises(RingTagMismatchError):
            quad_mul(QuadElem.zeta(3), QuadElem.zeta(4))

    def test_mixed_operator_raises(self):
        with pytest.raises(RingTagMismatchError):
            QuadElem.zeta(3) + QuadElem.zeta(4)

    def test_rationals_absorb_into_ring(self):
        assert QuadElem.rational(2) * QuadElem.zeta(4) == QuadElem.of(0, 2, 4)
        assert QuadElem.zeta(6) + 1 == QuadElem.of(1, 1, 6)


class TestQuadNorm:
    @pytest.mark.parametrize("elem, expected", [
        (QuadElem.rational(0, 3), 0),
        (QuadElem.of(3, 1, 3), 7),
        (QuadElem.zeta(6), 1),
        (QuadElem.of(2, 1, 4), 5),
    ])
    def test_examples(self, elem, expected):
        assert quad_norm(elem) == expected

    def test_conjugate_product_is_norm(self):
        rng = random.Random(7)
        for l in (3, 4, 6):
            for _ in range(200):
                u = random_elem(rng, l)
                assert u * u.conj() == QuadElem.rational(quad_norm(u), l)
                assert (quad_norm(u) == 0) == u.is_zero()


class TestRingAxioms:
    @pytest.mark.parametrize("l", [3, 4, 6])
    def test_random_triples(self, l):
        rng = random.Random(1000 + l)
        for _ in range(3400):
            u, v, w = random_elem(rng, l), random_elem(rng, l), random_elem(rng, l)
            assert (u * v) * w == u * (v * w)
            assert u * v == v * u
            assert u * (v + w) == u * v + u * w
            assert quad_norm(u * v) == quad_norm(u) * quad_norm(v)

    @pytest.mark.parametrize("l", [3, 4, 6])
    def test_zeta_has_exact_order(self, l):
        zeta = QuadElem.zeta(l)
        one = QuadElem.rational(1, l)
        assert zeta ** l == one
        assert all(zeta ** j != one for j in range(1, l))


class TestDivisionAndConversion:
    def test_division_inverts_multiplication(self):
        u, v = QuadElem.of(2, 1, 4), QuadElem.of(-3, 5, 4)
        assert (u * v) / v == u

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            QuadElem.of(1, 1, 3) / QuadElem.rational(0, 3)

    def test_negative_power(self):
        u = QuadElem.of(1, 2, 6)
        assert u ** -2 * u ** 2 == QuadElem.rational(1, 6)

    def test_e6_is_one_plus_e3(self):
        assert QuadElem.zeta(6).to_ring(3) == QuadElem.of(1, 1, 3)
        assert QuadElem.of(1, 1, 3).to_ring(6) == QuadElem.zeta(6)

    def test_conversion_preserves_products(self):
        rng = random.Random(3)
        for _ in range(100):
            u, v = random_elem(rng, 3), random_elem(rng, 3)
            assert (u * v).to_ring(6) == u.to_ring(6) * v.to_ring(6)

    def test_no_conversion_across_fields(self):
        with pytest.raises(RingTagMismatchError):
            QuadElem.zeta(4).to_ring(3)

    def test_rational_ring_has_no_zeta(self):
        with pytest.raises(ValueError):
            QuadElem.of(1, 1, 1)

    def test_str(self):
        assert str(QuadElem.of(2, 1, 4)) == "2+e4"
        assert str(QuadElem.of(0, -1, 3)) == "-e3"
