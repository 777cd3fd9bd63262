"""Brute-force orbit enumeration, translation harvesting, and the evidence
reports that score a predicted closure against an enumerated orbit."""

import functools
import math
import random

import numpy as np
import pytest

from homothety_orbits.affine_maps import Homothety, as_point, v_to_complex
from homothety_orbits.exact_algebra import Scalar, parse_scalar
from homothety_orbits.group_profile import GroupSpec, compute_profile
from homothety_orbits.closure_engine import orbit_closure
from homothety_orbits import orbit_oracle as oracle
from homothety_orbits.orbit_oracle import BudgetExceeded, OrbitSample

I = parse_scalar("i")


def S(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar.integer(x)


def P(*coords):
    return as_point([S(c) for c in coords])


def exact_key(p):
    return tuple(c.exact_value for c in p)


def in_even_gaussian_lattice(c) -> bool:
    """Membership in Z(1+i) + Z(1-i) = {x + iy : x, y in Z, x + y even},
    checked on the exact coordinates, independent of the lattice classifier."""
    re, im = c.real_part(), c.imag_part()
    if not (re.is_rational() and im.is_rational()):
        return False
    if re.p.denominator != 1 or im.p.denominator != 1:
        return False
    return (re.p.numerator + im.p.numerator) % 2 == 0


@functools.lru_cache(maxsize=None)
def translation_spec():
    return GroupSpec(1, (Homothety.translation(P(1)), Homothety.translation(P(I))))


@functools.lru_cache(maxsize=None)
def quarter_spec():
    return GroupSpec(1, (Homothety.with_center(I, P(0)), Homothety.with_center(I, P(1))))


@functools.lru_cache(maxsize=None)
def quarter_sample() -> OrbitSample:
    return oracle.enumerate(quarter_spec(), P(0), 8)


@functools.lru_cache(maxsize=None)
def quarter_profile():
    return compute_profile(quarter_spec(), harvest_cap=8)


@functools.lru_cache(maxsize=None)
def mixed_rotation_spec():
    """Quarter turn about 0 and sixth turn about 1: a pair whose orbits are
    dense in the plane."""
    return GroupSpec(1, (
        Homothety.with_center(I, P(0)),
        Homothety.with_center(Scalar.zeta_power(2), P(1)),
    ))


# ---------------------------------------------------------------------------
# enumeration


class TestEnumerate:
    def test_zero_length_is_the_base_point(self):
        s = oracle.enumerate(quarter_spec(), P(1), 0)
        assert len(s) == 1
        assert s.array[0, 0] == 1 + 0j
        assert int(s.generations[0]) == 0
        assert s.dedup == "exact"
        assert s.to_report()["n_points"] == 1

    def test_translation_pair_fills_the_l1_ball(self):
        s = oracle.enumerate(translation_spec(), P(0), 3)
        got = {complex(z) for z in s.array[:, 0]}
        ball = {
            complex(m, n)
            for m in range(-3, 4)
            for n in range(-3, 4)
            if abs(m) + abs(n) <= 3
        }
        assert got == ball and len(s) == 25
        assert s.generation_counts() == [(0, 1), (1, 4), (2, 8), (3, 12)]

    def test_grid_dedup_agrees_on_integer_data(self):
        s = oracle.enumerate(translation_spec(), P(0), 3, force_grid=True)
        assert s.dedup == "grid" and s.grid_eps == 1e-7
        assert s.exact_points is None
        got = {complex(z) for z in s.array[:, 0]}
        assert len(got) == 25 and complex(2, -1) in got

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            oracle.enumerate(quarter_spec(), P(0), -1)
        with pytest.raises(ValueError):
            oracle.enumerate(quarter_spec(), P(0, 0), 2)

    def test_budget_overrun_raises_with_partial_sample(self):
        with pytest.raises(BudgetExceeded) as ei:
            oracle.enumerate(translation_spec(), P(0), 3, budget=10)
        partial = ei.value.sample
        assert partial.truncated and partial.to_report()["truncated"]
        assert len(partial) == 11  # stops right after crossing the cap
        with pytest.raises(BudgetExceeded) as ei:
            oracle.enumerate(translation_spec(), P(0), 3, budget=10, force_grid=True)
        assert ei.value.sample.truncated and len(ei.value.sample) == 11

    def test_monotone_in_word_length(self):
        small = oracle.enumerate(quarter_spec(), P(0), 4)
        large = oracle.enumerate(quarter_spec(), P(0), 6)
        keys_small = {exact_key(p) for p in small.exact_points}
        keys_large = {exact_key(p) for p in large.exact_points}
        assert keys_small <= keys_large
        assert len(keys_small) < len(keys_large)

    def test_inverse_symmetry(self):
        # reachability is symmetric: w at word length g means the base point
        # reappears within g steps when enumerating from w
        s = quarter_sample()
        w = next(p for p, g in zip(s.exact_points, s.generations) if g == 5)
        back = oracle.enumerate(quarter_spec(), w, 5)
        base = exact_key(P(0))
        gens_of_base = [
            int(g) for p, g in zip(back.exact_points, back.generations)
            if exact_key(p) == base
        ]
        assert gens_of_base and gens_of_base[0] <= 5

    def test_generation_bookkeeping(self):
        # every point of generation g >= 1 is one generator letter away from
        # a point of generation g - 1
        s = quarter_sample()
        letters = []
        for g in quarter_spec().generators:
            letters += [g, g.inverse()]
        gen_of = {exact_key(p): int(g) for p, g in zip(s.exact_points, s.generations)}
        for p, g in zip(s.exact_points, s.generations):
            if g == 0:
                continue
            preds = [gen_of.get(exact_key(l.apply(p))) for l in letters]
            assert any(pg is not None and pg <= g - 1 for pg in preds)

    def test_deterministic_output_order(self):
        a = oracle.enumerate(quarter_spec(), P(0), 5)
        b = oracle.enumerate(quarter_spec(), P(0), 5)
        assert np.array_equal(a.array, b.array)
        assert np.array_equal(a.generations, b.generations)
        g1 = oracle.enumerate(mixed_rotation_spec(), P(0), 7, force_grid=True)
        g2 = oracle.enumerate(mixed_rotation_spec(), P(0), 7, force_grid=True)
        assert np.array_equal(g1.array, g2.array)

    def test_rotation_pair_orbit_stays_in_the_outer_lattice(self):
        # the quarter-turn pair moves 0 only inside Z(1-i) + Z(1+i); checked
        # exactly, coordinate by coordinate
        s = quarter_sample()
        assert len(s) == 45
        assert all(in_even_gaussian_lattice(p[0].exact_value) for p in s.exact_points)


# ---------------------------------------------------------------------------
# CSV dumps


class TestCsv:
    def test_header_and_rows(self):
        s = oracle.enumerate(translation_spec(), P(0), 1)
        lines = s.csv_text().splitlines()
        assert lines[0] == "re(z1),im(z1),generation"
        assert lines[1] == "0.0,0.0,0"
        assert len(lines) == 1 + len(s) == 6
        assert all(line.endswith(",1") for line in lines[2:])

    def test_text_is_deterministic(self):
        a = oracle.enumerate(quarter_spec(), P(0), 5).csv_text()
        b = oracle.enumerate(quarter_spec(), P(0), 5).csv_text()
        assert a == b

    def test_round_trip_to_file(self, tmp_path):
        s = oracle.enumerate(translation_spec(), P(0), 2)
        out = tmp_path / "orbit.csv"
        s.to_csv(str(out))
        assert out.read_text() == s.csv_text()


# ---------------------------------------------------------------------------
# translation harvesting


class TestHarvestTranslations:
    def test_commutator_of_two_scalings_is_found(self):
        # f: z -> 2z + 1, g: z -> 3z + i; the commutator translation is
        # (2 - 1)*i + (1 - 3)*1 = i - 2
        spec = GroupSpec(1, (Homothety(S(2), P(1)), Homothety(S(3), P(I))))
        vs = {complex(v_to_complex(v)[0]) for v in oracle.harvest_translations(spec, 4)}
        assert complex(-2, 1) in vs
        assert 0j in vs  # the empty word

    def test_shared_center_yields_only_zero(self):
        spec = GroupSpec(1, (Homothety.scaling(S(2), 1), Homothety.scaling(S(3), 1)))
        vs = oracle.harvest_translations(spec, 4)
        assert [complex(v_to_complex(v)[0]) for v in vs] == [0j]

    def test_quarter_pair_reaches_the_inner_generators(self):
        vs = {complex(v_to_complex(v)[0]) for v in
              oracle.harvest_translations(quarter_spec(), 8)}
        assert complex(0, -2) in vs  # (i-1)^2 * 1
        assert complex(2, 0) in vs   # i * (i-1)^2 * 1

    def test_harvest_never_escapes_the_outer_lattice(self):
        for v in oracle.harvest_translations(quarter_spec(), 8):
            assert in_even_gaussian_lattice(v[0].exact_value)


# ---------------------------------------------------------------------------
# evidence measurement


class TestVerify:
    def test_lattice_orbit_evidence(self):
        desc = orbit_closure(quarter_profile(), P(0))
        rep = oracle.verify(desc, quarter_sample(), window=4.0, grid_res=10)

        # exact membership: zero violation, in the strict sense
        assert rep.exact_membership
        assert rep.max_violation == 0.0 and rep.soundness_pass

        # the smallest gap equals the lattice minimum, found independently
        # by exhaustive short-vector search
        best = min(
            abs(a * (1 - 1j) + b * (1 + 1j))
            for a in range(-8, 9)
            for b in range(-8, 9)
            if (a, b) != (0, 0)
        )
        assert best == math.sqrt(2)
        assert rep.min_gap == pytest.approx(best, abs=1e-12)
        assert all(gap == pytest.approx(best, abs=1e-12)
                   for g, gap in rep.min_gap_history if g >= 4)
        assert rep.discreteness_pass
        assert not rep.density_pass

        # every closure-sampled target inside the window is an orbit point
        assert rep.approach_points > 0
        assert rep.approach_max <= 1e-12

    def test_wrong_description_is_flagged(self):
        from fractions import Fraction

        half = P(Scalar.rational(Fraction(1, 2)))
        wrong = orbit_closure(quarter_profile(), half)
        rep = oracle.verify(wrong, quarter_sample(), window=4.0, grid_res=10)
        assert not rep.soundness_pass
        assert rep.max_violation == pytest.approx(0.5)

    def test_dense_orbit_evidence(self):
        spec = mixed_rotation_spec()
        profile = compute_profile(spec, harvest_cap=5)
        desc = orbit_closure(profile, P(0))
        assert desc.kind() == "WholeSpace"
        sample = oracle.enumerate(spec, P(0), 13, budget=600_000)
        rep = oracle.verify(desc, sample, window=2.0, grid_res=20)
        assert rep.soundness_pass and rep.max_violation == 0.0
        assert rep.fill_fraction >= 0.95
        assert rep.density_pass
        assert not rep.discreteness_pass  # gaps still shrinking at this depth

    def test_closure_against_its_own_sampler(self):
        spec = mixed_rotation_spec()
        desc = orbit_closure(compute_profile(spec, harvest_cap=5), P(0))
        rng = random.Random(5)
        pts = [as_point(p) for p in desc.sample(rng, 30)]
        arr = np.array([v_to_complex(p) for p in pts], dtype=np.complex128)
        fake = OrbitSample(
            base=pts[0],
            array=arr.reshape(len(pts), 1),
            generations=np.zeros(len(pts), dtype=np.int32),
            word_cap=0,
            dedup="grid",
            grid_eps=1e-7,
        )
        rep = oracle.verify(desc, fake, window=2.0, grid_res=8)
        assert not rep.exact_membership
        assert rep.max_violation == 0.0 and rep.soundness_pass

    def test_window_forms_and_report_shape(self):
        desc = orbit_closure(quarter_profile(), P(0))
        rep = oracle.verify(desc, quarter_sample(), window=([0.5], 1.0), grid_res=8)
        assert rep.window_center == (0.5, 0.0) and rep.window_half == 1.0
        d = rep.to_report()
        for key in (
            "n_points", "max_violation", "exact_membership", "fill_fraction",
            "window_fill_fraction", "min_gap", "min_gap_history", "approach_max",
            "soundness_pass", "density_pass", "discreteness_pass",
        ):
            assert key in d

    def test_empty_sample_is_rejected(self):
        s = quarter_sample()
        empty = OrbitSample(
            base=s.base,
            array=s.array[:0],
            generations=s.generations[:0],
            word_cap=0,
            dedup="exact",
            grid_eps=0.0,
        )
        with pytest.raises(ValueError):
            oracle.verify(orbit_closure(quarter_profile(), P(0)), empty)


# ---------------------------------------------------------------------------
# the sandwich is realized by actual words


class TestSandwichRealization:
    def test_inner_lattice_window_points_are_reached(self):
        # every point of the inner translation lattice inside the window
        # [-2, 2]^2 must be hit by a word of length <= 8 applied to 0
        profile = quarter_profile()
        inner = [complex(s.to_complex()) for s in profile.g1_inner]
        window_pts = set()
        for a in range(-2, 3):
            for b in range(-2, 3):
                for c in range(-2, 3):
                    w = a * inner[0] + b * inner[1] + c * inner[2]
                    if abs(w.real) <= 2 and abs(w.imag) <= 2:
                        window_pts.add(complex(round(w.real, 9), round(w.imag, 9)))
        assert len(window_pts) == 9  # the doubled Gaussian lattice in the window
        orbit_pts = {complex(z) for z in quarter_sample().array[:, 0]}
        assert window_pts <= orbit_pts
