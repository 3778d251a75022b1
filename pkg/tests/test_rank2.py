"""Tests for rank-2 classes, their group laws, and the generation search."""

import random

import pytest

from bundle_arith.errors import (
    DomainError,
    FormulaNotApplicableError,
    HorrocksUndefinedError,
)
from bundle_arith.rank2 import (
    GroupDescriptorA1,
    Rank2BundleClass,
    add,
    add_shifted,
    agreement_check,
    alpha_balanced_split,
    alpha_extendable,
    count_classes,
    delta,
    epsilon,
    generation_closure,
    horrocks_sum,
    negate,
    split_rank2,
    tensor_line,
)


class TestEpsilon:
    @pytest.mark.parametrize("a,expected", [(4, 1), (0, 0), (-4, 1), (12, 1), (8, 0), (-12, 1), (2, 0)])
    def test_values(self, a, expected):
        assert epsilon(a) == expected

    def test_odd_rejected(self):
        with pytest.raises(DomainError):
            epsilon(3)


class TestDelta:
    @pytest.mark.parametrize("c1,c2,expected", [(0, -4, 4), (2, 1, 0), (6, 5, 4), (0, -9, 9)])
    def test_values(self, c1, c2, expected):
        assert delta(c1, c2) == expected

    def test_odd_rejected(self):
        with pytest.raises(DomainError):
            delta(1, 1)


class TestAlphaFormulas:
    def test_balanced_pair_cases(self):
        # Delta = b^2: 1 exactly when b = 2 (mod 4)
        assert alpha_extendable(0, -4) == 1
        assert alpha_extendable(0, 0) == 0
        assert alpha_extendable(0, -16) == 0
        assert alpha_extendable(0, -9) == 0

    def test_not_applicable_is_distinct_from_domain_error(self):
        # Delta = 2 gives Delta(Delta-1) = 2, not divisible by 12
        with pytest.raises(FormulaNotApplicableError):
            alpha_extendable(0, -2)
        with pytest.raises(DomainError):
            alpha_extendable(1, 0)

    def test_divisibility_route_matches_case_rule(self):
        for b in range(-100, 101):
            assert alpha_balanced_split(b) == (1 if b % 4 == 2 else 0)

    def test_two_routes_agree_on_all_even_splits(self):
        for x in range(-50, 51):
            for y in range(-50, 51):
                if (x + y) % 2:
                    continue
                b = (x - y) // 2
                assert alpha_extendable(x + y, x * y) == (1 if b % 4 == 2 else 0)


class TestSplitAndClassValidation:
    def test_split_examples(self):
        assert split_rank2(2, -2) == Rank2BundleClass(0, -4, 1)
        assert split_rank2(0, 0) == Rank2BundleClass(0, 0, 0)
        assert split_rank2(3, 0) == Rank2BundleClass(3, 0)

    def test_unrealizable_pair_rejected(self):
        with pytest.raises(DomainError):
            Rank2BundleClass(1, 1)

    def test_alpha_presence_follows_parity(self):
        with pytest.raises(DomainError):
            Rank2BundleClass(0, 0)  # even c1 needs alpha
        with pytest.raises(DomainError):
            Rank2BundleClass(1, 2, 0)  # odd c1 forbids alpha
        with pytest.raises(DomainError):
            Rank2BundleClass(0, 0, 2)  # alpha must be 0/1


class TestPlainGroup:
    def test_identity_alpha_is_epsilon(self):
        for a1 in range(-20, 21, 2):
            g = GroupDescriptorA1(a1)
            assert g.identity.alpha == epsilon(a1)

    def test_identity_axiom(self):
        rng = random.Random(3)
        for _ in range(50):
            a1 = rng.randint(-10, 10)
            g = GroupDescriptorA1(a1)
            c2 = rng.randint(-20, 20) * (2 if a1 % 2 else 1)
            v = (
                Rank2BundleClass(a1, c2)
                if a1 % 2
                else Rank2BundleClass(a1, c2, rng.randint(0, 1))
            )
            assert add(g, v, g.identity) == v

    def test_add_examples(self):
        g0 = GroupDescriptorA1(0)
        assert add(g0, split_rank2(1, -1), split_rank2(2, -2)) == Rank2BundleClass(0, -5, 1)
        g4 = GroupDescriptorA1(4)
        assert add(g4, split_rank2(2, 2), split_rank2(2, 2)) == Rank2BundleClass(4, 8, 1)

    def test_c2_is_additive(self):
        rng = random.Random(5)
        for _ in range(200):
            a1 = rng.randint(-10, 10)
            g = GroupDescriptorA1(a1)

            def cls():
                c2 = rng.randint(-30, 30) * (2 if a1 % 2 else 1)
                return (
                    Rank2BundleClass(a1, c2)
                    if a1 % 2
                    else Rank2BundleClass(a1, c2, rng.randint(0, 1))
                )

            v, w = cls(), cls()
            assert add(g, v, w).c2 == v.c2 + w.c2

    def test_alpha_additive_at_zero(self):
        g = GroupDescriptorA1(0)
        for av in (0, 1):
            for aw in (0, 1):
                v = Rank2BundleClass(0, 3, av)
                w = Rank2BundleClass(0, -8, aw)
                assert add(g, v, w).alpha == (av + aw) % 2

    def test_negate_examples(self):
        g = GroupDescriptorA1(0)
        assert negate(g, g.identity) == g.identity
        assert negate(g, Rank2BundleClass(0, 5, 1)) == Rank2BundleClass(0, -5, 1)

    def test_inverse_axiom(self):
        rng = random.Random(9)
        for _ in range(50):
            a1 = rng.randint(-10, 10)
            g = GroupDescriptorA1(a1)
            c2 = rng.randint(-40, 40) * (2 if a1 % 2 else 1)
            v = (
                Rank2BundleClass(a1, c2)
                if a1 % 2
                else Rank2BundleClass(a1, c2, rng.randint(0, 1))
            )
            assert add(g, v, negate(g, v)) == g.identity

    def test_c1_mismatch_rejected(self):
        g = GroupDescriptorA1(0)
        with pytest.raises(DomainError):
            add(g, split_rank2(1, 1), split_rank2(0, 0))


class TestShiftedGroup:
    def test_identity(self):
        rng = random.Random(17)
        for _ in range(60):
            a1 = rng.randint(-10, 10)
            b = rng.randint(-5, 5)
            g = GroupDescriptorA1(a1, b)
            assert g.identity == split_rank2(a1 - b, b)
            c2 = rng.randint(-20, 20) * (2 if a1 % 2 else 1)
            v = (
                Rank2BundleClass(a1, c2)
                if a1 % 2
                else Rank2BundleClass(a1, c2, rng.randint(0, 1))
            )
            assert add_shifted(g, v, g.identity) == v

    def test_zero_shift_reduces_to_plain(self):
        plain = GroupDescriptorA1(6)
        shifted = GroupDescriptorA1(6, 0)
        v = Rank2BundleClass(6, 4, 1)
        w = Rank2BundleClass(6, -3, 0)
        assert add_shifted(shifted, v, w) == add(plain, v, w)

    def test_mixed_associativity(self):
        rng = random.Random(23)
        for _ in range(120):
            a1 = rng.randint(-10, 10)
            b = rng.randint(-5, 5)
            plain = GroupDescriptorA1(a1)
            shifted = GroupDescriptorA1(a1, b)

            def cls():
                c2 = rng.randint(-30, 30) * (2 if a1 % 2 else 1)
                return (
                    Rank2BundleClass(a1, c2)
                    if a1 % 2
                    else Rank2BundleClass(a1, c2, rng.randint(0, 1))
                )

            v, w, z = cls(), cls(), cls()
            lhs = add_shifted(shifted, add(plain, v, w), z)
            rhs = add(plain, v, add_shifted(shifted, w, z))
            assert lhs == rhs

    def test_add_requires_matching_variant(self):
        v = Rank2BundleClass(0, 0, 0)
        with pytest.raises(DomainError):
            add(GroupDescriptorA1(0, 2), v, v)
        with pytest.raises(DomainError):
            add_shifted(GroupDescriptorA1(0), v, v)


class TestHorrocksSum:
    def test_alpha_flips_at_minus_four(self):
        v = Rank2BundleClass(-4, 1, 0)
        w = Rank2BundleClass(-4, 2, 0)
        assert horrocks_sum(v, w) == Rank2BundleClass(-4, 3, 1)

    def test_alpha_adds_at_minus_two(self):
        v = Rank2BundleClass(-2, 1, 1)
        w = Rank2BundleClass(-2, 0, 0)
        assert horrocks_sum(v, w) == Rank2BundleClass(-2, 1, 1)

    def test_odd_c1_only_adds_c2(self):
        v = Rank2BundleClass(-1, 2)
        w = Rank2BundleClass(-1, 4)
        assert horrocks_sum(v, w) == Rank2BundleClass(-1, 6)

    def test_positive_c1_undefined(self):
        v = Rank2BundleClass(2, 1, 0)
        with pytest.raises(HorrocksUndefinedError):
            horrocks_sum(v, v)

    def test_mismatched_c1_is_domain_error(self):
        with pytest.raises(DomainError):
            horrocks_sum(Rank2BundleClass(0, 0, 0), Rank2BundleClass(-2, 0, 0))


class TestAgreement:
    def test_desk_scale_sweep(self):
        for c1 in range(0, -17, -2):
            classes = [
                Rank2BundleClass(c1, c2, a) for c2 in range(-4, 5) for a in (0, 1)
            ]
            for v in classes:
                for w in classes:
                    assert agreement_check(v, w)

    def test_minus_four_both_give_alpha_one(self):
        v = Rank2BundleClass(-4, 0, 0)
        w = Rank2BundleClass(-4, 2, 0)
        assert horrocks_sum(v, w).alpha == 1
        assert add(GroupDescriptorA1(-4), v, w).alpha == 1
        assert agreement_check(v, w)

    def test_zero_is_purely_additive(self):
        v = Rank2BundleClass(0, 5, 1)
        w = Rank2BundleClass(0, -2, 1)
        assert horrocks_sum(v, w).alpha == 0
        assert agreement_check(v, w)

    def test_odd_case(self):
        assert agreement_check(Rank2BundleClass(-3, 2), Rank2BundleClass(-3, 4))


class TestTensorLine:
    def test_matches_split_shift(self):
        for x in range(-10, 11):
            for y in range(-10, 11):
                for k in range(-10, 11):
                    assert tensor_line(split_rank2(x, y), k) == split_rank2(x + k, y + k)

    def test_zero_twist_is_identity(self):
        v = Rank2BundleClass(-4, 7, 1)
        assert tensor_line(v, 0) == v

    def test_composition(self):
        v = Rank2BundleClass(1, 6)
        for j in range(-4, 5):
            for k in range(-4, 5):
                assert tensor_line(tensor_line(v, j), k) == tensor_line(v, j + k)

    def test_alpha_preserved_under_normalization(self):
        assert split_rank2(3, -1).alpha == 1
        assert tensor_line(split_rank2(3, -1), -1) == split_rank2(2, -2)
        assert split_rank2(2, -2).alpha == 1


class TestCountClasses:
    @pytest.mark.parametrize(
        "c1,c2,expected", [(0, 0, 2), (1, 2, 1), (1, 1, 0), (-4, 7, 2), (3, 5, 0)]
    )
    def test_values(self, c1, c2, expected):
        assert count_classes(c1, c2) == expected


class TestGenerationClosure:
    def test_splits_reached_at_cost_zero(self):
        report = generation_closure(-2, 0, 4)
        by_class = {r.cls: r for r in report.reached}
        for x, y in [(0, 0), (1, -1), (-2, 0), (0, -2), (-1, -1)]:
            cls = split_rank2(x, y)
            assert by_class[cls].cost == 0
            assert by_class[cls].witness.startswith("split(")

    def test_every_class_at_c1_zero_reached(self):
        report = generation_closure(0, 0, 10, search_c1_min=-4, search_c2_bound=16)
        assert report.all_reached
        assert len(report.reached) == 42  # 21 values of c2, two alphas each

    def test_nonsplit_partner_of_identity_at_minus_four(self):
        # split(-4, 0) carries alpha = 1; its partner needs Horrocks sums
        report = generation_closure(-4, -4, 0, search_c2_bound=10)
        by_class = {r.cls: r for r in report.reached}
        partner = Rank2BundleClass(-4, 0, 0)
        assert partner in by_class
        witness = by_class[partner]
        assert "horrocks(" in witness.witness
        assert witness.cost == 4
        assert by_class[Rank2BundleClass(-4, 0, 1)].cost == 0

    def test_unreached_classes_are_reported_not_raised(self):
        # a tiny search box cannot build positive c2 at c1 = 0
        report = generation_closure(0, 0, 2)
        assert not report.all_reached
        reached = {r.cls for r in report.reached}
        assert Rank2BundleClass(0, 0, 0) in reached
        assert Rank2BundleClass(0, 2, 0) in set(report.unreached)

    def test_search_box_must_contain_report_box(self):
        with pytest.raises(DomainError):
            generation_closure(-4, 0, 8, search_c2_bound=2)

    def test_deterministic(self):
        a = generation_closure(-4, 0, 6, -8, 0, 10)
        b = generation_closure(-4, 0, 6, -8, 0, 10)
        assert a == b
