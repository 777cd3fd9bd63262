"""Group-level structure: ratio flags, the minimal invariant affine
subspace, the crystallographic angle test, and the one-dimensional
translation-subgroup sandwich."""

import math

import pytest
from hypothesis import assume, given, strategies as st

from homothety_orbits.affine_maps import Homothety, as_point
from homothety_orbits.exact_algebra import (
    Scalar,
    Trilean,
    UndecidableAtPrecision,
    parse_scalar,
)
from homothety_orbits.group_profile import (
    AbelianGroup,
    CrystalVerdict,
    GroupSpec,
    compute_EG,
    compute_profile,
    crystallographic_test,
    g1_lattice_bounds,
    ratio_flags,
)
from conftest import homotheties

I = parse_scalar("i")
Z2 = Scalar.zeta_power(2)


def pair_spec(ratio, dim: int = 1, **kw) -> GroupSpec:
    """Two equal-ratio generators with centers 0 and e1."""
    e1 = [Scalar.integer(1)] + [Scalar.integer(0)] * (dim - 1)
    return GroupSpec(
        dim=dim,
        generators=(
            Homothety.with_center(ratio, [Scalar.integer(0)] * dim),
            Homothety.with_center(ratio, e1),
        ),
        **kw,
    )


# ---------------------------------------------------------------------------
# ratio flags


class TestRatioFlags:
    def test_scalings_outside_every_rotation_family(self):
        spec = GroupSpec(
            1,
            (
                Homothety.with_center(parse_scalar("2i"), [Scalar.integer(0)]),
                Homothety.with_center(parse_scalar("3"), [Scalar.integer(1)]),
            ),
        )
        flags = ratio_flags(spec)
        assert flags == (True, True, None, True)

    def test_fourth_roots_family(self):
        spec = GroupSpec(
            1,
            (
                Homothety.with_center(I, [Scalar.integer(0)]),
                Homothety.with_center(parse_scalar("-1"), [Scalar.integer(1)]),
            ),
        )
        flags = ratio_flags(spec)
        assert flags.has_nonreal_ratio
        assert not flags.has_modulus_ne1
        assert flags.sr_membership == "S2"
        assert not flags.outside_SR

    def test_mixed_roots_leave_both_families(self):
        spec = GroupSpec(
            1,
            (
                Homothety.with_center(I, [Scalar.integer(0)]),
                Homothety.with_center(Z2, [Scalar.integer(1)]),
            ),
        )
        flags = ratio_flags(spec)
        assert flags == (True, False, None, True)

    def test_sixth_roots_family(self):
        spec = pair_spec(Z2)
        assert ratio_flags(spec).sr_membership == "S3"

    def test_unresolved_modulus_degrades_instead_of_raising(self):
        # an approximate unit rotation can never *prove* |ratio| = 1, so the
        # modulus flag must quietly stay False rather than abort
        spec = pair_spec(parse_scalar("exp(i*1.0)"))
        flags = ratio_flags(spec)
        assert flags.has_nonreal_ratio
        assert not flags.has_modulus_ne1
        assert flags.outside_SR

    def test_angle_too_close_to_a_root_raises(self):
        near_i = parse_scalar(f"exp(i*{math.pi / 2})")
        spec = pair_spec(near_i)
        with pytest.raises(UndecidableAtPrecision):
            ratio_flags(spec)


# ---------------------------------------------------------------------------
# minimal invariant affine subspace


def O(dim):
    return [Scalar.integer(0)] * dim


class TestInvariantSubspace:
    def test_three_generic_centers_span_the_plane(self):
        gens = (
            Homothety.with_center(parse_scalar("2i"), [Scalar.integer(1), Scalar.integer(0)]),
            Homothety.with_center(parse_scalar("3i"), [Scalar.integer(0), Scalar.integer(1)]),
            Homothety.with_center(parse_scalar("-2i"), [Scalar.integer(1), Scalar.integer(1)]),
        )
        sub = compute_EG(GroupSpec(2, gens))
        assert sub.dim == 2 and sub.is_whole_space()

    def test_distinct_centers_on_the_line(self):
        sub = compute_EG(pair_spec(I))
        assert sub.ambient_dim == 1 and sub.is_whole_space()

    def test_collinear_centers_give_a_proper_subspace(self):
        gens = (
            Homothety.with_center(parse_scalar("2"), O(2)),
            Homothety.with_center(parse_scalar("3"), [Scalar.integer(1), Scalar.integer(0)]),
        )
        sub = compute_EG(GroupSpec(2, gens))
        assert sub.dim == 1
        assert sub.contains(as_point([Scalar.integer(5), Scalar.integer(0)]))
        assert not sub.contains(as_point([Scalar.integer(0), Scalar.integer(1)]))

    def test_translation_directions_are_absorbed(self):
        scale = Homothety.with_center(parse_scalar("2"), O(2))
        lift = Homothety.translation([Scalar.integer(0), Scalar.integer(1)])
        sub = compute_EG(GroupSpec(2, (scale, lift)))
        assert sub.dim == 1
        assert sub.contains(as_point([Scalar.integer(0), Scalar.integer(7)]))
        assert not sub.contains(as_point([Scalar.integer(1), Scalar.integer(0)]))

        slide = Homothety.translation([Scalar.integer(1), Scalar.integer(0)])
        grown = compute_EG(GroupSpec(2, (scale, lift, slide)))
        assert grown.is_whole_space()

    def test_abelian_inputs_are_rejected(self):
        shared = (
            Homothety.with_center(parse_scalar("2i"), O(1)),
            Homothety.with_center(parse_scalar("3"), O(1)),
        )
        with pytest.raises(AbelianGroup):
            compute_EG(GroupSpec(1, shared))
        translations_only = (
            Homothety.translation([Scalar.integer(1)]),
            Homothety.translation([I]),
        )
        with pytest.raises(AbelianGroup):
            compute_EG(GroupSpec(1, translations_only))
        with pytest.raises(AbelianGroup):
            compute_EG(GroupSpec(1, (Homothety.with_center(I, O(1)),)))

    @given(st.integers(1, 2), st.data())
    def test_contains_seeds_and_is_generator_invariant(self, dim, data):
        gens = data.draw(
            st.lists(homotheties(dim), min_size=2, max_size=3), label="generators"
        )
        spec = GroupSpec(dim, tuple(gens))
        try:
            sub = compute_EG(spec)
        except (AbelianGroup, UndecidableAtPrecision):
            assume(False)
            return
        for g in gens:
            if g.is_translation() is Trilean.NO:
                assert sub.contains(g.center())
        # invariance: generator images of subspace points stay inside
        points = [sub.base] + [g.apply(sub.base) for g in gens]
        for g in gens:
            for p in points:
                assert sub.contains(g.apply(p), eps=1e-7)

    @given(st.data())
    def test_dimension_never_exceeds_ambient(self, data):
        gens = data.draw(st.lists(homotheties(2), min_size=2, max_size=4))
        try:
            sub = compute_EG(GroupSpec(2, tuple(gens)))
        except (AbelianGroup, UndecidableAtPrecision):
            assume(False)
            return
        assert 1 <= sub.dim <= 2
        assert len(sub.base) == 2


# ---------------------------------------------------------------------------
# crystallographic restriction


class TestCrystallographicTest:
    @pytest.mark.parametrize("k", [2, 3, 4, 6])
    def test_lattice_compatible_orders(self, k):
        # rotation by 2pi/k for k in {2,3,4,6}: zeta12^(12/k)
        ratio = Scalar.zeta_power(12 // k)
        assert crystallographic_test(ratio) == CrystalVerdict.COMPATIBLE_DISCRETE

    def test_order_twelve_forces_density(self):
        assert crystallographic_test(Scalar.zeta_power(1)) == CrystalVerdict.FORCES_DENSE
        assert crystallographic_test(Scalar.zeta_power(5)) == CrystalVerdict.FORCES_DENSE

    def test_generic_angle_forces_density(self):
        assert (
            crystallographic_test(parse_scalar("exp(i*pi*1/5)"))
            == CrystalVerdict.FORCES_DENSE
        )
        assert (
            crystallographic_test(parse_scalar("exp(i*1.0)"))
            == CrystalVerdict.FORCES_DENSE
        )

    def test_non_rotations_are_flagged(self):
        assert crystallographic_test(parse_scalar("2i")) == CrystalVerdict.NOT_ROTATION
        assert crystallographic_test(parse_scalar("1/2")) == CrystalVerdict.NOT_ROTATION

    def test_approximate_angle_on_the_boundary_raises(self):
        with pytest.raises(UndecidableAtPrecision):
            crystallographic_test(parse_scalar(f"exp(i*{math.pi / 2})"))

    def test_unresolvable_modulus_raises(self):
        fuzzy = Scalar.approx(complex(1.0 + 1e-14, 0.0), 1e-12)
        with pytest.raises(UndecidableAtPrecision):
            crystallographic_test(fuzzy)


# ---------------------------------------------------------------------------
# translation-subgroup sandwich in dimension one


class TestTranslationSandwich:
    def test_quarter_turn_pair_brackets(self):
        spec = pair_spec(I)
        inner, outer, sampled = g1_lattice_bounds(spec, word_cap=8)

        def as_pairs(scalars):
            return {
                (round(s.to_complex().real, 9) + 0.0, round(s.to_complex().imag, 9) + 0.0)
                for s in scalars
            }

        assert as_pairs(inner) == {(0.0, 2.0), (0.0, -2.0), (2.0, 0.0)}
        assert as_pairs(outer) == {(1.0, 1.0), (1.0, -1.0)}
        assert sampled, "harvest produced no translations"
        # every harvested translation respects the outer bracket (enforced
        # inside, but assert the sample is nontrivial and exact)
        assert all(s.is_exact for s in sampled)

    def test_sixth_turn_pair_is_pinned(self):
        profile = compute_profile(pair_spec(Z2), harvest_cap=8)
        assert profile.g1_pinned is True
        assert profile.g1_closure.shape == "Lattice2"

    def test_quarter_turn_pair_is_not_pinned(self):
        profile = compute_profile(pair_spec(I), harvest_cap=8)
        assert profile.g1_pinned is False
        assert profile.g1_closure.shape == "Lattice2"
        # the harvested translations already realize both inner generators
        for s in profile.g1_inner:
            assert profile.g1_closure.contains(s)

    def test_order_twelve_pair_refuses_the_sandwich(self):
        # an angle of pi/6 has order 12: Z[ratio] is dense, there is no
        # bracketing lattice, and the profile must fall through to the
        # dense branch rather than abort
        spec = pair_spec(parse_scalar("zeta12"))
        with pytest.raises(ValueError):
            g1_lattice_bounds(spec, word_cap=6)
        profile = compute_profile(spec, harvest_cap=6)
        assert profile.g1_inner is None
        assert profile.outside_SR
        assert profile.g1_closure.shape == "Plane"

    def test_extra_generator_does_not_falsify_the_pair_bracket(self):
        # the bracketing statement concerns the group the equal-ratio pair
        # generates; a third rotation may add translations beyond it
        spec = GroupSpec(
            1,
            (
                Homothety.with_center(I, as_point([Scalar.integer(0)])),
                Homothety.with_center(I, as_point([Scalar.integer(1)])),
                Homothety.with_center(
                    parse_scalar("zeta12^2"), as_point([parse_scalar("1/3")])
                ),
            ),
        )
        inner, outer, sampled = g1_lattice_bounds(spec, word_cap=6)
        assert {s.to_complex() for s in outer} == {(1 + 1j), (1 - 1j)}
        assert sampled

    def test_self_map_property_of_the_brackets(self):
        # multiplying an outer generator by the ratio stays in the outer
        # lattice, and (ratio - 1) * outer lands in the inner-generated group
        from homothety_orbits.closed_subgroups import classify_additive_closure
        from homothety_orbits.group_profile import _to_planar_or_complex

        for ratio in (I, Z2):
            spec = pair_spec(ratio)
            inner, outer, _ = g1_lattice_bounds(spec, word_cap=8)
            outer_closure = classify_additive_closure(
                [_to_planar_or_complex(s) for s in outer]
            )
            inner_closure = classify_additive_closure(
                [_to_planar_or_complex(s) for s in inner]
            )
            for s in outer:
                assert outer_closure.contains(
                    _to_planar_or_complex(ratio * s)
                ), "ratio action must preserve the outer lattice"
            for s in inner:
                assert outer_closure.contains(
                    _to_planar_or_complex(s)
                ), "inner generators must sit inside the outer lattice"

    def test_requires_a_matching_rotation_pair(self):
        mismatched = GroupSpec(
            1,
            (
                Homothety.with_center(I, [Scalar.integer(0)]),
                Homothety.with_center(parse_scalar("2i"), [Scalar.integer(1)]),
            ),
        )
        with pytest.raises(ValueError):
            g1_lattice_bounds(mismatched)
        with pytest.raises(ValueError):
            g1_lattice_bounds(pair_spec(I, dim=2))


# ---------------------------------------------------------------------------
# assembled profile


class TestComputeProfile:
    def test_quarter_turn_profile_fields(self):
        profile = compute_profile(pair_spec(I), harvest_cap=8)
        assert profile.has_nonreal_ratio
        assert not profile.has_modulus_ne1
        assert profile.sr_membership == "S2"
        assert not profile.outside_SR
        assert profile.E_G.is_whole_space()
        assert len(profile.gamma_seeds) == 2
        assert profile.lambda_closure.shape == "FiniteCyclic"
        assert profile.lambda_closure.order == 4
        assert profile.harvested
        assert profile.exact

        report = profile.to_report()
        assert report["sr_membership"] == "S2"
        assert report["translation_closure"]["shape"] == "Lattice2"
        assert report["g1_pinned"] is False
        assert len(report["g1_inner"]) == 3 and len(report["g1_outer"]) == 2
        assert report["invariant_subspace"]["dim"] == 1

    def test_scaling_pair_profile(self):
        gens = (
            Homothety.with_center(parse_scalar("2i"), O(2)),
            Homothety.with_center(
                parse_scalar("2i"), [Scalar.integer(1), Scalar.integer(0)]
            ),
        )
        profile = compute_profile(GroupSpec(2, gens))
        assert profile.outside_SR
        assert profile.has_modulus_ne1
        assert profile.g1_closure is None  # sandwich is dimension-1 only
        assert profile.lambda_closure.shape == "RaysDiscrete"
        assert profile.E_G.dim == 1  # centers share the first axis

    def test_approx_generators_yield_inexact_profile(self):
        profile = compute_profile(pair_spec(parse_scalar("exp(i*1.0)")))
        assert profile.has_nonreal_ratio
        assert not profile.exact
        assert profile.lambda_closure.exact is False
