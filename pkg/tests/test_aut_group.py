import random
from fractions import Fraction
from unittest.mock import patch

import pytest

from src.exact_arithmetic.int_matrix import IntMatrix2
from src.exact_arithmetic.quadratic_field import QuadElem
from src.group_managing.abstract_group import AbstractGroup
from src.group_managing.action_matrix import (
    UndefinedActionError,
    action_matrix,
    action_matrix_from_base_change,
    conjugated_rotation_closed_form,
    default_basis,
    rotation_matrix,
)
from src.group_managing.affine_aut import AffineAut
from src.group_managing.classifier import SubgroupClassifier
from src.group_managing.finite_subgroup import closure, decompose
from src.group_managing.group_label import Abelian, Bidihedral, Dihedral, Exc1, Exc2, bidihedral, exceptional
from src.group_managing.iso_check import (
    DEFAULT_ISO_BOUND,
    DEFAULT_ISO_SEARCH_BOUND,
    IsoBoundExceededError,
    as_abstract_group,
    canonical_group,
    identify_label,
    is_isomorphic,
    iso_check,
)
from src.torsion_lattice.lattice_class import LatticeClass
from src.torsion_lattice.torsion_point import TorsionPoint, unit_action
from src.torsion_lattice.torsion_subgroup import ClosureCapExceededError

SQUARE = LatticeClass.SQUARE
HEX = LatticeClass.HEXAGONAL
GENERIC = LatticeClass.GENERIC


@pytest.fixture
def classifier():
    return SubgroupClassifier()


@pytest.fixture(scope="module")
def order_1300_group():
    beta_prime = TorsionPoint.from_quad(SQUARE, QuadElem.of(-5, 1, 4), 65)
    return closure([AffineAut.rotation(SQUARE, 1),
                    AffineAut.of(SQUARE, 0, Fraction(1, 5)),
                    AffineAut.translation(beta_prime)])


@pytest.fixture
def order_21_group():
    # rotation by e3 with beta = (3 + e3)/7
    beta = TorsionPoint.from_quad(HEX, QuadElem.of(3, 1, 3), 7)
    return closure([AffineAut.rotation(HEX, 2), AffineAut.translation(beta)])


class TestAffineAut:
    def test_composition_rule(self):
        f = AffineAut.of(SQUARE, 1, Fraction(1, 5))
        g = AffineAut.of(SQUARE, 0, 0, Fraction(1, 5))
        # i * (i/5) = -1/5
        assert f * g == AffineAut.of(SQUARE, 1, 0)

    def test_inverse(self):
        rng = random.Random(2)
        for _ in range(100):
            g = AffineAut.of(HEX, rng.randint(0, 5), Fraction(rng.randint(0, 11), 12), Fraction(rng.randint(0, 11), 12))
            assert (g * g.inverse()).is_identity()
            assert (g.inverse() * g).is_identity()

    def test_associativity(self):
        rng = random.Random(4)
        for _ in range(100):
            f, g, h = (AffineAut.of(SQUARE, rng.randint(0, 3), Fraction(rng.randint(0, 5), 6),
                                    Fraction(rng.randint(0, 5), 6)) for _ in range(3))
            assert (f * g) * h == f * (g * h)

    def test_conjugating_a_translation_rotates_it(self):
        rng = random.Random(6)
        for _ in range(100):
            g = AffineAut.of(SQUARE, rng.randint(0, 3), Fraction(rng.randint(0, 9), 10), Fraction(rng.randint(0, 9), 10))
            gamma = TorsionPoint(SQUARE, Fraction(rng.randint(0, 9), 10), Fraction(rng.randint(0, 9), 10))
            assert AffineAut.translation(gamma).conjugate(g) == AffineAut.translation(unit_action(g.j, gamma))

    def test_order(self):
        assert AffineAut.rotation(HEX, 1).order() == 6
        assert AffineAut.of(GENERIC, 0, Fraction(1, 3), Fraction(1, 2)).order() == 6
        # a rotation with any translation part is conjugate to the pure rotation
        assert AffineAut.of(SQUARE, 1, Fraction(2, 7)).order() == 4

    def test_exponent_is_reduced(self):
        assert AffineAut.rotation(SQUARE, 5) == AffineAut.rotation(SQUARE, 1)

    def test_mixed_lattices_rejected(self):
        with pytest.raises(ValueError):
            AffineAut(SQUARE, 1, TorsionPoint.zero(HEX))


class TestClosure:
    def test_mu4(self):
        group = closure([AffineAut.rotation(SQUARE, 1)])
        assert group.order == 4
        assert group.unit_part_order == 4
        assert group.torsion_part.order == 1

    def test_exact_sequence(self, order_21_group):
        torsion, rotation_order = decompose(order_21_group)
        assert order_21_group.order == 21
        assert torsion.invariant_factors == (1, 7)
        assert rotation_order == 3
        assert not order_21_group.is_abelian

    def test_order_1300(self, order_1300_group):
        assert order_1300_group.order == 1300
        assert order_1300_group.torsion_part.invariant_factors == (5, 65)
        assert order_1300_group.unit_part_order == 4

    def test_closed_under_composition_and_inverse(self, order_21_group):
        for g in order_21_group:
            assert order_21_group.inverse(g) in order_21_group
            for h in order_21_group:
                assert g * h in order_21_group

    def test_cap(self):
        with pytest.raises(ClosureCapExceededError):
            closure([AffineAut.rotation(SQUARE, 1), AffineAut.of(SQUARE, 0, Fraction(1, 20))], cap=100)

    def test_empty_generator_list(self):
        assert closure([], lattice=HEX).order == 1
        with pytest.raises(ValueError):
            closure([])

    def test_generators_on_different_lattices(self):
        with pytest.raises(ValueError):
            closure([AffineAut.rotation(SQUARE, 1), AffineAut.rotation(HEX, 1)])

    def test_commuting_rotation_limits_translations(self):
        # (1 - e_l) beta = 0 in an abelian group: 2 beta, 3 beta, 2 beta, beta vanish for l = 2, 3, 4, 6
        killed_by = {2: 2, 3: 3, 4: 2, 6: 1}
        rng = random.Random(8)
        checked = 0
        for _ in range(150):
            lattice = rng.choice([GENERIC, SQUARE, HEX])
            n = rng.choice([2, 3, 4, 6])
            gens = [AffineAut.rotation(lattice, rng.randint(1, lattice.unit_order - 1))]
            gens += [AffineAut.of(lattice, 0, Fraction(rng.randint(0, n - 1), n), Fraction(rng.randint(0, n - 1), n))
                     for _ in range(rng.randint(1, 2))]
            group = closure(gens)
            if group.is_abelian and group.unit_part_order > 1:
                checked += 1
                assert all(p.scale(killed_by[group.unit_part_order]).is_zero() for p in group.translations)
        assert checked > 0


class TestClassifier:
    def test_mu6(self, classifier):
        assert classifier.classify(closure([AffineAut.rotation(HEX, 1)])) == Abelian.of(6)

    def test_dihedral(self, classifier):
        group = closure([AffineAut.rotation(GENERIC, 1), AffineAut.of(GENERIC, 0, Fraction(1, 3))])
        assert classifier.classify(group) == Dihedral(3)

    def test_z2_cubed(self, classifier):
        group = closure([AffineAut.rotation(GENERIC, 1),
                         AffineAut.of(GENERIC, 0, Fraction(1, 2)),
                         AffineAut.of(GENERIC, 0, 0, Fraction(1, 2))])
        assert group.order == 8
        assert classifier.classify(group) == Abelian.of(2, 2, 2)

    def test_bidihedral(self, classifier):
        group = closure([AffineAut.rotation(GENERIC, 1),
                         AffineAut.of(GENERIC, 0, Fraction(1, 4)),
                         AffineAut.of(GENERIC, 0, 0, Fraction(1, 2))])
        assert classifier.classify(group) == Bidihedral(2, 4)

    def test_exceptional_with_cyclic_translations(self, classifier, order_21_group):
        label = classifier.classify(order_21_group)
        assert label == Exc1(7, 3)
        assert label.h == 2

    def test_exceptional_with_rank_two_translations(self, classifier, order_1300_group):
        assert classifier.classify(order_1300_group) == Exc2(5, 13, 4)

    def test_pure_translations(self, classifier):
        group = closure([AffineAut.of(SQUARE, 0, Fraction(1, 4)), AffineAut.of(SQUARE, 0, 0, Fraction(1, 6))])
        assert classifier.classify(group) == Abelian.of(2, 12)

    def test_label_order_matches_group_order(self, classifier):
        rng = random.Random(10)
        for _ in range(60):
            lattice = rng.choice([GENERIC, SQUARE, HEX])
            n = rng.choice([2, 3, 4, 5])
            gens = [AffineAut.rotation(lattice, rng.randint(0, lattice.unit_order - 1)),
                    AffineAut.of(lattice, 0, Fraction(rng.randint(0, n - 1), n), Fraction(rng.randint(0, n - 1), n))]
            group = closure(gens)
            assert classifier.classify(group).order == group.order


class TestLabels:
    def test_abelian_normalises(self):
        assert Abelian.of(1, 6) == Abelian.of(6)
        assert Abelian.of(2, 3) == Abelian.of(6)
        assert Abelian.of(4, 2).factors == (2, 4)

    def test_orders(self):
        assert Exc2(5, 13, 4).order == 1300
        assert Exc1(7, 3).order == 21
        assert Bidihedral(2, 4).order == 16

    def test_h_is_metadata(self):
        assert Exc1(13, 4, h=5) == Exc1(13, 4, h=8)

    def test_canonical_constructors(self):
        assert bidihedral(2, 3) == Dihedral(6)
        assert exceptional(1, 7, 3) == Exc1(7, 3)

    def test_invalid_labels(self):
        with pytest.raises(ValueError):
            Dihedral(2)
        with pytest.raises(ValueError):
            Exc1(7, 5)
        with pytest.raises(ValueError):
            Bidihedral(3, 4)


class TestActionMatrix:
    def test_rotation_matrices(self):
        assert rotation_matrix(4) == IntMatrix2(0, -1, 1, 0)
        assert rotation_matrix(3) == IntMatrix2(0, -1, 1, -1)

    def test_diagonal_action_on_z5_z10(self):
        beta = TorsionPoint.from_quad(SQUARE, QuadElem.of(2, 1, 4), 5)
        beta_prime = TorsionPoint.from_quad(SQUARE, QuadElem.of(3, 1, 4), 10)
        group = closure([AffineAut.rotation(SQUARE, 1), AffineAut.translation(beta), AffineAut.translation(beta_prime)])
        observed = action_matrix(group, basis=(beta, beta_prime))
        assert observed.reduce_rows_mod((5, 10)) == IntMatrix2(2, 0, 0, 3)

    def test_base_change(self):
        assert action_matrix_from_base_change(IntMatrix2(1, 1, 3, 2), 4) == IntMatrix2(7, 5, -10, -7)

    def test_alternative_base_change_up_to_sign(self):
        a4 = action_matrix_from_base_change(IntMatrix2(3, 2, -1, -1), 4)
        assert a4 in (IntMatrix2(7, 5, -10, -7), IntMatrix2(-7, -5, 10, 7))

    def test_base_change_agrees_with_observed_action(self):
        assert (action_matrix_from_base_change(IntMatrix2(1, 1, 3, 2), 4).reduce_rows_mod((5, 10))
                == IntMatrix2(2, 0, 0, 3))

    def test_closed_form_scaled_by_determinant(self):
        rng = random.Random(12)
        for _ in range(50):
            a, b = rng.randint(-6, 6), rng.randint(-6, 6)
            m = IntMatrix2(1, a, 0, 1) @ IntMatrix2(1, 0, b, 1)
            if rng.random() < 0.5:
                m = m @ IntMatrix2(0, 1, 1, 0)
            for l in (3, 4, 6):
                assert action_matrix_from_base_change(m, l) == conjugated_rotation_closed_form(m, l) * m.det()

    def test_order_1300_action(self, order_1300_group):
        beta = TorsionPoint(SQUARE, Fraction(1, 5), Fraction(0))
        beta_prime = TorsionPoint.from_quad(SQUARE, QuadElem.of(-5, 1, 4), 65)
        observed = action_matrix(order_1300_group, basis=(beta, beta_prime))
        assert observed.reduce_rows_mod((5, 65)) == IntMatrix2(5, -2, 13, -5).reduce_rows_mod((5, 65))

    def test_default_basis_is_deterministic(self, order_1300_group):
        assert action_matrix(order_1300_group) == action_matrix(order_1300_group)

    @staticmethod
    def _basis_determinant(group):
        beta, beta_prime = default_basis(group)
        (u1, v1), (u2, v2) = beta.coordinates, beta_prime.coordinates
        return u1 * v2 - u2 * v1

    def test_default_basis_spans_the_plane(self, order_1300_group):
        assert self._basis_determinant(order_1300_group) != 0

    def test_default_basis_spans_the_plane_for_random_groups(self):
        rng = random.Random(21)
        checked = 0
        for _ in range(120):
            lattice = rng.choice([GENERIC, SQUARE, HEX])
            n = rng.randint(2, 6)
            gens = [AffineAut.rotation(lattice, rng.randint(1, lattice.unit_order - 1))]
            gens += [AffineAut.of(lattice, 0, Fraction(rng.randint(0, n - 1), n), Fraction(rng.randint(0, n - 1), n))
                     for _ in range(2)]
            group = closure(gens)
            factors = group.torsion_part.invariant_factors
            if len(factors) == 2 and factors[0] > 1:
                checked += 1
                assert self._basis_determinant(group) != 0, [str(g) for g in gens]
        assert checked > 0

    def test_rank_one_torsion(self, order_21_group):
        with pytest.raises(UndefinedActionError):
            action_matrix(order_21_group)


class TestIsoCheck:
    def test_cyclic_nine_is_not_z3_squared(self):
        z9 = closure([AffineAut.of(GENERIC, 0, Fraction(1, 9))])
        assert not iso_check(z9, Abelian.of(3, 3))
        assert iso_check(z9, Abelian.of(9))

    def test_exceptional_canonical_group(self, order_21_group):
        assert iso_check(order_21_group, Exc1(7, 3))
        assert not iso_check(order_21_group, Abelian.of(21))

    def test_dihedral_versus_cyclic(self):
        d3 = closure([AffineAut.rotation(GENERIC, 1), AffineAut.of(GENERIC, 0, Fraction(1, 3))])
        assert iso_check(d3, Dihedral(3))
        assert not iso_check(d3, Abelian.of(6))

    def test_canonical_orders(self):
        for label in (Abelian.of(2, 4), Dihedral(5), Bidihedral(2, 4), Exc1(13, 4), Exc2(2, 7, 3)):
            assert canonical_group(label).order == label.order

    def test_bound(self, order_1300_group):
        with pytest.raises(IsoBoundExceededError):
            iso_check(order_1300_group, Exc2(5, 13, 4), bound=1000)

    @patch("src.group_managing.iso_check.logger")
    def test_tie_above_search_bound_is_flagged(self, mock_logger):
        d3 = as_abstract_group(closure([AffineAut.rotation(GENERIC, 1), AffineAut.of(GENERIC, 0, Fraction(1, 3))]))
        assert is_isomorphic(d3, canonical_group(Dihedral(3)), search_bound=4)
        mock_logger.warning.assert_called_once()
        assert "not proven" in mock_logger.warning.call_args[0][0]

    @patch("src.group_managing.iso_check.logger")
    def test_ties_are_searched_within_the_iso_bound(self, mock_logger):
        assert DEFAULT_ISO_SEARCH_BOUND == DEFAULT_ISO_BOUND
        assert is_isomorphic(canonical_group(Exc1(7, 3)), canonical_group(Exc1(7, 3)))
        mock_logger.warning.assert_not_called()

    def test_identify_label(self, order_21_group):
        assert identify_label(order_21_group) == Exc1(7, 3)
        assert identify_label(closure([AffineAut.rotation(SQUARE, 1)])) == Abelian.of(4)

    def test_quaternion_is_not_dihedral(self):
        quaternion = [(s, q) for s in (1, -1) for q in "1ijk"]
        table = {("1", x): (1, x) for x in "1ijk"}
        table.update({(x, "1"): (1, x) for x in "1ijk"})
        table.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                      ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                      ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})

        def multiply(a, b):
            sign, unit = table[(a[1], b[1])]
            return a[0] * b[0] * sign, unit

        q8 = AbstractGroup(quaternion, multiply, (1, "1"), name="Q8")
        assert q8.order == 8
        assert not q8.is_abelian
        assert not is_isomorphic(q8, canonical_group(Dihedral(4)))

    def test_as_abstract_group_keeps_order(self, order_21_group):
        abstract = as_abstract_group(order_21_group)
        assert abstract.order == 21
        assert not abstract.is_abelian
        assert abstract.center_size == 1
