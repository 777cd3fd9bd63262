"""Closed additive subgroups of R^2 and multiplicative subgroups of C*.

Pinned classifications are cross-checked with small brute-force searches
(Pell-style approximation minima, shortest-vector scans) computed here in
the tests, independently of the library code.
"""

import math
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from homothety_orbits.exact_algebra import (
    RealQuadratic,
    Scalar,
    Trilean,
    parse_scalar,
)
from homothety_orbits.closed_subgroups import (
    PlanarVector,
    classify_additive_closure,
    classify_multiplicative_closure,
)
from conftest import exact_scalars, random_exact_scalar

SQRT3 = RealQuadratic(0, 1)


def pv(x, y) -> PlanarVector:
    return PlanarVector.of(x, y)


def combo(values, coeffs):
    """Integer combination of CycloScalar values, written with +/- only."""
    acc = None
    for v, c in zip(values, coeffs):
        for _ in range(abs(c)):
            term = v if c > 0 else -v
            acc = term if acc is None else acc + term
    if acc is None:
        acc = values[0] - values[0]
    return acc


# ---------------------------------------------------------------------------
# additive closures: pinned examples


class TestAdditivePinned:
    def test_unit_square_lattice(self):
        c = classify_additive_closure([Scalar.integer(1), Scalar.gauss(0, 1)])
        assert c.shape == "Lattice2"
        rows, den = c._int_basis()
        assert den == 1
        assert rows == [[1, 0, 0, 0], [0, 0, 1, 0]]
        assert c.contains(Scalar.gauss(3, -2))
        assert not c.contains(Scalar.rational(Fraction(1, 2)))
        assert c.shortest_vector() == pytest.approx(1.0)
        assert c.is_discrete() is Trilean.YES
        assert c.is_whole_plane() is Trilean.NO

    def test_incommensurable_reals_fill_a_line(self):
        # brute-force evidence first: |n*sqrt(3) - nearest integer| keeps
        # shrinking (Pell approximants), so the group 1Z + sqrt(3)Z is not
        # discrete in R
        mins = []
        for bound in (100, 1000, 10000):
            best = min(
                abs(n * math.sqrt(3) - round(n * math.sqrt(3)))
                for n in range(1, bound + 1)
            )
            mins.append(best)
        assert mins[0] > mins[1] > mins[2]
        assert mins[2] < 1e-3

        c = classify_additive_closure([pv(1, 0), pv(SQRT3, 0)])
        assert c.shape == "LineDense"
        assert c.exact
        assert c.direction.y.is_zero() and not c.direction.x.is_zero()
        # every Q(sqrt3) point of the line belongs; off-line points do not
        assert c.contains(pv(RealQuadratic(Fraction(-7, 2), Fraction(2)), 0))
        assert not c.contains(pv(0, 1))
        assert c.distance(1j) == pytest.approx(1.0)
        assert c.is_discrete() is Trilean.NO

    def test_dense_line_plus_transversal_steps(self):
        c = classify_additive_closure([pv(1, 0), pv(SQRT3, 0), pv(0, 1)])
        assert c.shape == "LineLattice"
        assert c.exact
        # the dual functional annihilates the line and is 1 on the step
        assert c.dual.dot(c.direction).is_zero()
        one = c.dual.dot(c.transversal)
        assert one.is_rational() and one.p == 1
        assert c.direction.y.is_zero()
        # membership is exactly "integer dual pairing"
        assert c.contains(pv(RealQuadratic(Fraction(1, 2), Fraction(3, 4)), 2))
        assert not c.contains(pv(0, RealQuadratic(Fraction(1, 2), 0)))
        assert c.distance(complex(0.3, 0.25)) == pytest.approx(0.25)
        assert c.is_discrete() is Trilean.NO
        assert c.is_whole_plane() is Trilean.NO

    def test_skew_generators_stay_discrete(self):
        b1, b2 = pv(1, 0), pv(SQRT3, 1)
        # brute force: no short nonzero vector appears, so this really is a
        # rank-2 lattice and not a dense line plus drift
        z1, z2 = b1.to_complex(), b2.to_complex()
        best = min(
            abs(m * z1 + n * z2)
            for m in range(-50, 51)
            for n in range(-50, 51)
            if (m, n) != (0, 0)
        )
        assert best == pytest.approx(1.0)

        c = classify_additive_closure([b1, b2])
        assert c.shape == "Lattice2"
        assert c.shortest_vector() == pytest.approx(1.0)
        assert c.contains(pv(RealQuadratic(2, 1), 1))  # b2 + 2*b1
        assert not c.contains(pv(SQRT3, 0))
        assert c.is_discrete() is Trilean.YES

    def test_zero_and_rank_one(self):
        assert classify_additive_closure([]).shape == "Zero"
        assert classify_additive_closure([Scalar.integer(0)]).shape == "Zero"
        single = classify_additive_closure([pv(2, 1)])
        assert single.shape == "Lattice1"
        assert single.contains(pv(-4, -2))
        assert not single.contains(pv(1, 0))

    def test_rational_collinear_refine_to_finer_lattice(self):
        c = classify_additive_closure(
            [Scalar.integer(1), Scalar.rational(Fraction(1, 2))]
        )
        assert c.shape == "Lattice1"
        assert c.to_report()["generator_value"] == [0.5, 0.0]
        assert c.contains(Scalar.rational(Fraction(7, 2)))
        assert not c.contains(Scalar.rational(Fraction(1, 4)))

    def test_float_inputs_take_the_heuristic_path(self):
        line = classify_additive_closure([1.0, complex(math.sqrt(2), 0.0)])
        assert line.shape == "LineDense"
        assert not line.exact
        assert line.evidence["path"] == "heuristic"
        assert line.is_discrete() is Trilean.UNKNOWN

        strip = classify_additive_closure([1.0, complex(math.sqrt(2), 0.0), 1j])
        assert strip.shape == "LineLattice"
        assert not strip.exact
        assert strip.contains(complex(math.pi, 2.0), eps=1e-6)


# ---------------------------------------------------------------------------
# additive closures: invariants


class TestAdditiveInvariants:
    @given(st.lists(exact_scalars(), min_size=1, max_size=4), st.data())
    def test_soundness_generators_and_words_belong(self, gens, data):
        c = classify_additive_closure(gens)
        vals = [g.exact_value for g in gens]
        for g in gens:
            assert c.contains(g)
        coeffs = data.draw(
            st.tuples(*[st.integers(-2, 2) for _ in gens]), label="coeffs"
        )
        assert c.contains(combo(vals, coeffs))

    @given(
        st.lists(exact_scalars(), min_size=1, max_size=3),
        exact_scalars(),
        st.data(),
    )
    def test_monotone_under_extra_generator(self, gens, extra, data):
        bigger = classify_additive_closure(gens + [extra])
        vals = [g.exact_value for g in gens]
        coeffs = data.draw(
            st.tuples(*[st.integers(-2, 2) for _ in gens]), label="coeffs"
        )
        assert bigger.contains(combo(vals, coeffs))

    @given(st.lists(exact_scalars(), min_size=1, max_size=4))
    def test_lattice_reclassification_is_stable(self, gens):
        c = classify_additive_closure(gens)
        if c.shape == "Lattice2":
            again = classify_additive_closure(list(c.basis))
            assert again.shape == "Lattice2"
            assert again._int_basis() == c._int_basis()
            # half a basis vector never belongs to the lattice itself
            half = RealQuadratic(Fraction(1, 2), 0)
            b = c.basis[0]
            assert not c.contains(PlanarVector(b.x * half, b.y * half))
        elif c.shape == "Lattice1":
            again = classify_additive_closure([c.generator])
            assert again.shape == "Lattice1"
            assert again.contains(c.generator) and c.contains(again.generator)
        elif c.shape == "LineLattice":
            assert c.dual.dot(c.direction).is_zero()
            pairing = c.dual.dot(c.transversal)
            assert pairing.is_rational() and pairing.p == 1

    def test_many_seeded_membership_checks(self, rng):
        for _ in range(300):
            gens = [random_exact_scalar(rng) for _ in range(rng.randint(1, 3))]
            c = classify_additive_closure(gens)
            vals = [g.exact_value for g in gens]
            for _ in range(6):
                coeffs = [rng.randint(-3, 3) for _ in vals]
                assert c.contains(combo(vals, coeffs))


# ---------------------------------------------------------------------------
# multiplicative closures: pinned examples


class TestMultiplicativePinned:
    def test_fourth_roots_of_unity(self):
        c = classify_multiplicative_closure([parse_scalar("i")])
        assert c.shape == "FiniteCyclic"
        assert c.order == 4 and c.generator_log == 3
        assert not c.includes_zero
        elems = sorted((round(z.real, 9), round(z.imag, 9)) for z in c.elements())
        assert elems == [(-1.0, 0.0), (0.0, -1.0), (0.0, 1.0), (1.0, 0.0)]
        assert c.contains(Scalar.zeta_power(6))  # -1
        assert not c.contains(Scalar.zeta_power(2))
        assert c.is_whole_plane() is Trilean.NO

    def test_single_spiral_generator(self):
        c = classify_multiplicative_closure([parse_scalar("2i")])
        assert c.shape == "RaysDiscrete"
        assert c.includes_zero
        assert c.modulus_base == pytest.approx(2.0)
        assert c.modulus_base_sq == Fraction(4)
        assert c.angle_order == 4
        assert c.hnf_rows == ((1, 3), (0, 12))
        # powers are members, unlinked modulus/angle combinations are not
        assert c.contains(parse_scalar("-4"))  # (2i)^2
        assert c.contains(parse_scalar("-1/4"))  # (2i)^-2
        assert not c.contains(parse_scalar("2"))
        assert not c.contains(parse_scalar("4i"))
        assert c.contains(Scalar.integer(0))
        assert c.distance(complex(-4.0, 0.0)) == pytest.approx(0.0, abs=1e-12)

    def test_modulus_and_angle_decouple(self):
        c = classify_multiplicative_closure(
            [parse_scalar("2"), parse_scalar("zeta12^2")]
        )
        assert c.shape == "RaysDiscrete"
        assert c.angle_order == 6
        assert c.modulus_base == pytest.approx(2.0)
        assert c.hnf_rows == ((1, 0), (0, 2))
        assert c.includes_zero
        for member in ("4", "1/2", "zeta12^4", "2*zeta12^2"):
            assert c.contains(parse_scalar(member)), member
        assert not c.contains(parse_scalar("zeta12^1"))
        assert not c.contains(parse_scalar("3"))

    def test_two_multiplicatively_independent_moduli_fill_rays(self):
        c = classify_multiplicative_closure([parse_scalar("2"), parse_scalar("3")])
        assert c.shape == "RaysDense"
        assert c.angle_order == 1
        assert c.includes_zero
        assert c.contains(parse_scalar("3/2"))
        assert not c.contains(parse_scalar("-2"))
        assert c.distance(complex(2.7, 0.0)) == pytest.approx(0.0, abs=1e-12)
        assert c.distance(complex(-1.0, 0.0)) == pytest.approx(1.0)
        assert c.is_whole_plane() is Trilean.NO

    def test_irrational_angle_goes_heuristic(self):
        c = classify_multiplicative_closure([parse_scalar("2*exp(i*1.0)")])
        assert c.shape == "HeuristicDense"
        assert not c.exact
        assert c.includes_zero
        assert c.evidence["path"] == "heuristic"
        assert c.evidence["angle_discrepancy"] < 0.05
        assert c.is_whole_plane() is Trilean.UNKNOWN

    def test_trivial_inputs(self):
        for ratios in ([], [Scalar.integer(1)]):
            c = classify_multiplicative_closure(ratios)
            assert c.shape == "FiniteCyclic" and c.order == 1


# ---------------------------------------------------------------------------
# multiplicative closures: invariants


MULT_POOL = ["i", "2i", "-2i", "2", "3", "1/2", "zeta12^2", "zeta12^3", "-1", "2*zeta12^2"]


class TestMultiplicativeInvariants:
    @given(
        st.lists(st.sampled_from(MULT_POOL), min_size=1, max_size=3, unique=True),
        st.data(),
    )
    def test_soundness_generators_and_words_belong(self, names, data):
        ratios = [parse_scalar(n) for n in names]
        c = classify_multiplicative_closure(ratios)
        for r in ratios:
            assert c.contains(r), f"{names}: generator {r} rejected"
        exps = data.draw(
            st.tuples(*[st.integers(-2, 2) for _ in ratios]), label="exponents"
        )
        word = None
        for r, e in zip(ratios, exps):
            v = r.exact_value
            for _ in range(abs(e)):
                factor = v if e > 0 else v.inverse()
                word = factor if word is None else word * factor
        if word is not None:
            assert c.contains(Scalar(word)), f"{names} ^ {exps}"

    @given(st.lists(st.sampled_from(MULT_POOL), min_size=1, max_size=3, unique=True))
    def test_exact_closures_are_never_the_whole_plane(self, names):
        c = classify_multiplicative_closure([parse_scalar(n) for n in names])
        assert c.exact
        assert c.is_whole_plane() is Trilean.NO

    @given(st.lists(st.sampled_from(MULT_POOL), min_size=1, max_size=2, unique=True))
    def test_monotone_under_extra_generator(self, names):
        ratios = [parse_scalar(n) for n in names]
        bigger = classify_multiplicative_closure(ratios + [parse_scalar("zeta12^3")])
        for r in ratios:
            assert bigger.contains(r)

    def test_zero_membership_tracks_modulus_subgroup(self):
        unit = classify_multiplicative_closure([parse_scalar("zeta12^2")])
        assert not unit.includes_zero
        assert not unit.contains(Scalar.integer(0))
        scaled = classify_multiplicative_closure([parse_scalar("2*zeta12^2")])
        assert scaled.includes_zero
        assert scaled.contains(Scalar.integer(0))

    def test_finite_cyclic_order_divides_twelve(self):
        for k in range(12):
            c = classify_multiplicative_closure([Scalar.zeta_power(k)])
            assert c.shape == "FiniteCyclic"
            assert 12 % c.order == 0
            assert c.order == 12 // gcd(k, 12) if k else c.order == 1
