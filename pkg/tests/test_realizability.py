from fractions import Fraction
from unittest.mock import patch

import pytest

from src.group_managing.classifier import SubgroupClassifier
from src.group_managing.group_label import Abelian, Bidihedral, Dihedral, Exc1, Exc2
from src.realizability.admissibility import (
    GALOIS_ABELIAN_LABELS,
    AdmissibilityOracle,
    label_catalog,
    order_of,
)
from src.realizability.number_theory import (
    ConditionEPreconditionError,
    admissible_k_set,
    check_condition_e,
    epsilon_convention_sets,
    exists_h,
    nonabelian_h,
    norm_form_rep,
    prime_condition,
)
from src.realizability.reproductions import order_1300_reproduction, rank_two_action_reproduction
from src.realizability.witness_builder import NotRealizableError, WitnessBuilder, exceptional_scale_data
from src.torsion_lattice.lattice_class import LatticeClass


@pytest.fixture
def oracle():
    return AdmissibilityOracle()


@pytest.fixture
def builder():
    return WitnessBuilder()


class TestNumberTheory:
    @pytest.mark.parametrize("k, l, expected", [(13, 4, 5), (1, 3, 0), (1, 4, 0), (1, 6, 0), (4, 4, None), (7, 3, 2)])
    def test_exists_h(self, k, l, expected):
        assert exists_h(k, l) == expected

    def test_nonabelian_h_skips_one(self):
        assert exists_h(3, 3) == 1
        assert nonabelian_h(3, 3) is None
        assert nonabelian_h(3, 6) == 2

    @pytest.mark.parametrize("k, l, expected", [(13, 4, (3, 2)), (7, 3, (3, 1)), (2, 3, None)])
    def test_norm_form_rep(self, k, l, expected):
        assert norm_form_rep(k, l) == expected

    @pytest.mark.parametrize("k, l, expected", [(13, 4, True), (5, 3, False), (1, 3, True), (1, 4, True), (9, 3, True)])
    def test_prime_condition(self, k, l, expected):
        assert prime_condition(k, l) is expected

    def test_invalid_rotation_order(self):
        with pytest.raises(ValueError):
            exists_h(7, 5)

    def test_condition_e_holds(self):
        assert check_condition_e(3, 1, 2, -1, 1, 0, 2, 7, 3)

    def test_condition_e_fails(self):
        assert not check_condition_e(1, 1, 1, 0, 0, 1, 1, 3, 3)

    def test_condition_e_trivial_k(self):
        assert check_condition_e(1, 0, 1, 0, 0, 1, 1, 1, 4)

    def test_condition_e_preconditions(self):
        with pytest.raises(ConditionEPreconditionError):
            check_condition_e(2, 2, 1, 0, 0, 1, 1, 3, 3)
        with pytest.raises(ConditionEPreconditionError):
            check_condition_e(1, 1, 2, 0, 0, 1, 1, 3, 3)

    @pytest.mark.parametrize("l", [3, 4, 6])
    def test_h_search_agrees_with_norm_form_search(self, l):
        for k in range(1, 201):
            assert (exists_h(k, l) is not None) == (norm_form_rep(k, l) is not None), k

    @pytest.mark.parametrize("l", [3, 4, 6])
    def test_prime_condition_is_necessary(self, l):
        for k in range(1, 501):
            if exists_h(k, l) is not None:
                assert prime_condition(k, l), k

    @pytest.mark.parametrize("k, l", [(4, 4), (9, 3)])
    def test_prime_condition_is_not_sufficient(self, k, l):
        assert prime_condition(k, l)
        assert exists_h(k, l) is None

    def test_epsilon_conventions_agree(self):
        proof_set, definition_set = epsilon_convention_sets(200)
        assert proof_set == definition_set
        assert {1, 3, 7, 13} <= proof_set
        assert admissible_k_set(20, 4) == {1, 2, 5, 10, 13, 17}

    def test_norm_form_representation_is_valid(self):
        for l, eps in ((3, 1), (4, 0), (6, -1)):
            for k in range(1, 120):
                pair = norm_form_rep(k, l)
                if pair is not None:
                    a, b = pair
                    assert a * a - eps * a * b + b * b == k


class TestScaleData:
    def test_worked_data(self):
        data = exceptional_scale_data(2, 7, 3)
        assert (data.a, data.b) == (3, 1)
        assert (data.p, data.q, data.r, data.s) == (2, -1, 1, 0)
        assert data.h == 2
        assert data.condition_e

    def test_unimodular(self):
        for k, l in ((13, 4), (7, 3), (7, 6), (19, 3), (5, 4)):
            data = exceptional_scale_data(1, k, l)
            assert data.p * data.s - data.q * data.r == 1

    def test_d_must_be_coprime(self):
        with pytest.raises(ValueError):
            exceptional_scale_data(1, 7, 3, d=7)

    def test_inadmissible(self):
        with pytest.raises(NotRealizableError) as info:
            exceptional_scale_data(1, 4, 4)
        assert info.value.condition == "norm_form_rep"


class TestSubgroupAdmissible:
    def test_z3_squared(self, oracle):
        assert oracle.subgroup_admissible(Abelian.of(3, 3)).subgroup_realizable

    def test_z4_squared_is_translations_only(self, oracle):
        report = oracle.subgroup_admissible(Abelian.of(4, 4))
        assert report.subgroup_realizable
        assert not report.rotation_realizable

    def test_rank_three(self, oracle):
        assert oracle.subgroup_admissible(Abelian.of(2, 2, 2)).subgroup_realizable
        report = oracle.subgroup_admissible(Abelian.of(2, 2, 4))
        assert not report.subgroup_realizable
        assert "rank 3" in report.failure_reason

    def test_exceptional(self, oracle):
        report = oracle.subgroup_admissible(Exc1(7, 3))
        assert report.subgroup_realizable
        assert report.h == 2
        assert report.norm_form_pair == (3, 1)
        assert not oracle.subgroup_admissible(Exc2(2, 4, 4)).subgroup_realizable

    def test_dihedral_families(self, oracle):
        assert oracle.subgroup_admissible(Dihedral(7)).subgroup_realizable
        assert oracle.subgroup_admissible(Bidihedral(3, 6)).subgroup_realizable

    def test_unknown_label_type(self, oracle):
        with pytest.raises(TypeError):
            oracle.subgroup_admissible("Z6")


class TestGaloisAdmissible:
    @pytest.mark.parametrize("m", [2, 5, 7, 8, 9, 10, 11, 12])
    def test_cyclic_translation_groups_rejected(self, oracle, m):
        assert not oracle.galois_admissible(Abelian.of(m)).galois_realizable

    def test_order_two(self, oracle):
        assert oracle.galois_admissible(Abelian.of(2)).failure_reason == "|G| < 3"

    def test_no_rotation(self, oracle):
        assert oracle.galois_admissible(Abelian.of(5)).failure_reason == "|G_0| = 1"

    @pytest.mark.parametrize("label", [Abelian.of(2, 2), Abelian.of(6), Dihedral(5), Exc1(13, 4), Exc2(5, 13, 4)])
    def test_admissible(self, oracle, label):
        assert oracle.galois_admissible(label).galois_realizable

    def test_abelian_list(self, oracle):
        labels = {Abelian.of(d1, d2) for d2 in range(1, 13) for d1 in range(1, d2 + 1) if d2 % d1 == 0}
        labels.add(Abelian.of(2, 2, 2))
        admissible = {label for label in labels if oracle.galois_admissible(label).galois_realizable}
        assert admissible == set(GALOIS_ABELIAN_LABELS)
        assert max(label.order for label in admissible) <= 9

    def test_galois_implies_subgroup(self, oracle):
        for label in label_catalog() + [Abelian.of(4, 4), Abelian.of(7), Exc2(2, 4, 4)]:
            report = oracle.galois_admissible(label)
            assert not report.galois_realizable or report.subgroup_realizable

    def test_report_dict(self, oracle):
        payload = oracle.galois_admissible(Exc1(13, 4)).to_dict()
        assert payload["label"] == "E(13,4)"
        assert payload["order"] == 52
        assert payload["norm_form_pair"] == [3, 2]

    def test_logs_decision(self):
        with patch("src.realizability.admissibility.logging.getLogger") as mock_get_logger:
            AdmissibilityOracle().galois_admissible(Abelian.of(2))
        mock_get_logger.return_value.info.assert_called_once()


class TestWitnessBuilder:
    def test_exc1_13_4(self, builder):
        witness = builder.realize(Exc1(13, 4))
        assert witness.lattice is LatticeClass.SQUARE
        rotation, translation = witness.generators
        assert rotation.j == 1
        assert translation.beta.coordinates == (Fraction(5, 13), Fraction(1, 13))

    def test_z6(self, builder):
        witness = builder.realize(Abelian.of(1, 6))
        assert witness.lattice is LatticeClass.HEXAGONAL
        assert [(g.j, g.beta.is_zero()) for g in witness.generators] == [(1, True)]

    def test_exc2_order_1300(self, builder):
        group = builder.realize(Exc2(5, 13, 4)).group()
        assert group.order == 1300
        assert group.torsion_part.invariant_factors == (5, 65)

    def test_not_realizable(self, builder):
        with pytest.raises(NotRealizableError) as info:
            builder.realize(Exc2(2, 4, 4))
        assert info.value.condition

    def test_catalog_round_trip(self, builder):
        classifier = SubgroupClassifier()
        for label in label_catalog():
            group = builder.realize(label).group()
            assert classifier.classify(group) == label, label
            assert group.order == order_of(label), label

    @pytest.mark.parametrize("m, k, l", [(2, 3, 3), (2, 7, 3), (3, 7, 6), (2, 13, 4), (3, 1, 4)])
    def test_exc2_order(self, builder, m, k, l):
        assert builder.realize(Exc2(m, k, l)).group().order == m * m * k * l

    def test_witness_dict(self, builder):
        payload = builder.realize(Exc1(7, 3)).to_dict()
        assert payload["lattice"] == "hexagonal"
        assert payload["scale_data"]["h"] == 2
        assert payload["generators"][0] == {"j": 2, "u": "0", "v": "0"}


class TestReproductions:
    def test_action_on_z5_z10(self):
        report = rank_two_action_reproduction()
        assert report.passed, report.details
        assert report.checks["A4"]

    @pytest.mark.parametrize("m", [1, 2])
    def test_order_1300_constructions(self, m):
        first, second = order_1300_reproduction(m)
        assert first.passed, first.details
        assert second.passed, second.details

    def test_report_dict(self):
        payload = rank_two_action_reproduction().to_dict()
        assert payload["passed"]
        assert payload["checks"]["beta_order"] == {"passed": True, "detail": "5 (expected 5)"}

    def test_invalid_multiplier(self):
        with pytest.raises(ValueError):
            order_1300_reproduction(0)
