"""Structural data of a finitely generated homothety group.

From the generators alone this module derives: ratio flags (non-real ratio
present, modulus other than 1 present, containment in the crystallographic
families), the canonical invariant affine subspace obtained by saturating
the affine hull of the fixed-point seeds, the crystallographic test for a
single rotation ratio, and the inner/outer lattice sandwich that brackets
the translation subgroup in dimension one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .affine_maps import (
    Homothety,
    Point,
    as_point,
    scalar_columns_solve,
    v_add,
    v_is_zero,
    v_scale,
    v_sub,
    v_to_complex,
)
from .closed_subgroups import (
    AdditiveClosure,
    MultClosure,
    PlanarVector,
    classify_additive_closure,
    classify_multiplicative_closure,
)
from .exact_algebra import (
    SCALAR_ONE,
    Scalar,
    Trilean,
    UndecidableAtPrecision,
)


class AbelianGroup(Exception):
    """All generator pairs commute; fixed-point-based structure degenerates."""


class WordCapExceeded(Exception):
    """A harvested translation escaped the outer lattice bound: the
    configuration or the arithmetic is wrong, so abort loudly."""


@dataclass(frozen=True)
class GroupSpec:
    """Input group: dimension, generators, and enumeration options."""

    dim: int
    generators: Tuple[Homothety, ...]
    word_cap: Optional[int] = None
    eps: float = 1e-9
    window: float = 2.0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if not self.generators:
            raise ValueError("at least one generator required")
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.dim != self.dim:
                raise ValueError(
                    f"generator dimension {g.dim} does not match spec dimension {self.dim}"
                )

    @property
    def is_exact(self) -> bool:
        return all(g.is_exact for g in self.generators)

    def default_word_cap(self) -> int:
        if self.word_cap is not None:
            return self.word_cap
        return 12 if self.dim <= 2 else 8


class RatioFlags(NamedTuple):
    has_nonreal_ratio: bool
    has_modulus_ne1: bool
    sr_membership: Optional[str]  # "S2" | "S3" | None
    outside_SR: bool


def _resolve(t: Trilean, what: str) -> bool:
    if t is Trilean.UNKNOWN:
        raise UndecidableAtPrecision(what)
    return t is Trilean.YES


def ratio_flags(spec: GroupSpec) -> RatioFlags:
    """Flags of the ratio group, decidable from generators alone.

    Real scalars multiply to real scalars, moduli multiply, and each
    crystallographic family is closed under products, so each flag is
    determined by the generators.
    """
    nonreal = False
    mod_ne1 = False
    all_f2 = True
    all_f3 = True
    for g in spec.generators:
        r = g.ratio
        if not _resolve(r.is_real(), "cannot resolve whether a ratio is real"):
            nonreal = True
        # modulus != 1 is claimed only when provable: the flag licenses an
        # extra conclusion (minimality), never a branch, so an unresolved
        # modulus safely degrades to "not claimed" instead of aborting
        if r.modulus_is_one() is Trilean.NO:
            mod_ne1 = True
        if not _resolve(r.in_f2(), "cannot resolve membership in the 4th roots"):
            all_f2 = False
        if not _resolve(r.in_f3(), "cannot resolve membership in the 6th roots"):
            all_f3 = False
    if all_f2:
        sr = "S2"
    elif all_f3:
        sr = "S3"
    else:
        sr = None
    return RatioFlags(nonreal, mod_ne1, sr, sr is None)


# ---------------------------------------------------------------------------
# invariant affine subspace


@dataclass(frozen=True)
class AffineSubspace:
    """base + complex span of basis; basis kept orthogonal (Gram-Schmidt
    without normalization in exact mode, normalized in approx mode)."""

    base: Point
    basis: Tuple[Point, ...]
    exact: bool

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.base)

    def is_whole_space(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, z, eps: float = 1e-9) -> bool:
        z = as_point(z)
        diff = v_sub(z, self.base)
        if not self.basis:
            t = v_is_zero(diff)
            if t is Trilean.UNKNOWN:
                return max(abs(c) for c in v_to_complex(diff)) <= eps
            return t is Trilean.YES
        sol = scalar_columns_solve(list(self.basis), diff, eps=eps)
        return sol is not None

    def distance(self, z) -> float:
        """Euclidean distance from z to the subspace (float arithmetic)."""
        import numpy as np

        z = as_point(z)
        d = np.array(v_to_complex(v_sub(z, self.base)))
        if not self.basis:
            return float(np.linalg.norm(d))
        b = np.array([v_to_complex(v) for v in self.basis]).T
        coef, *_ = np.linalg.lstsq(b, d, rcond=None)
        return float(np.linalg.norm(d - b @ coef))

    def sample(self, rng, count: int, translations: Sequence[Point] = ()) -> List[Point]:
        """Points of the subspace.  When translation vectors are supplied the
        sample favors base +/- one vector (short words realize these)."""
        out: List[Point] = [self.base]
        usable = [t for t in translations if self.contains(v_add(self.base, t))]
        for t in usable:
            out.append(v_add(self.base, t))
            out.append(v_sub(self.base, t))
        while len(out) < count and self.basis:
            coeffs = [
                Scalar.approx(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)), 0.0)
                for _ in self.basis
            ]
            p = self.base
            for c, v in zip(coeffs, self.basis):
                p = v_add(p, v_scale(c, v))
            out.append(p)
        return out[: max(count, 1)]

    def to_report(self) -> dict:
        from .exact_algebra import format_scalar

        return {
            "dim": self.dim,
            "ambient_dim": self.ambient_dim,
            "exact": self.exact,
            "base": [format_scalar(c) for c in self.base],
            "basis": [[format_scalar(c) for c in v] for v in self.basis],
        }


def _independent_append(basis: List[Point], v: Point, eps: float) -> bool:
    """Append v if it is outside span(basis); True when appended."""
    zero = v_is_zero(v)
    if zero is Trilean.YES:
        return False
    if basis and scalar_columns_solve(basis, v, eps=eps) is not None:
        return False
    if not basis and zero is Trilean.UNKNOWN:
        return False
    basis.append(v)
    return True


def _orthogonalize(basis: List[Point], exact: bool) -> List[Point]:
    from .affine_maps import hermitian_dot

    out: List[Point] = []
    for v in basis:
        w = v
        for u in out:
            num = hermitian_dot(w, u)
            den = hermitian_dot(u, u)
            w = v_sub(w, v_scale(num / den, u))
        if v_is_zero(w) is not Trilean.YES:
            if not exact:
                norm = abs(sum(abs(c) ** 2 for c in v_to_complex(w))) ** 0.5
                w = v_scale(Scalar.approx(complex(1.0 / norm, 0.0), 0.0), w)
            out.append(w)
    return out


def compute_EG(spec: GroupSpec) -> AffineSubspace:
    """Smallest generator-invariant affine subspace containing the seed set.

    Seeds: centers of non-translation generators, plus p0 shifted by every
    translation-generator vector and every pairwise commutator vector (p0
    the first center).  A homothety maps base + span(B) into itself exactly
    when it maps the base point in, so saturation only tracks images of the
    base; each round either adds an independent direction or stops.
    """
    gens = spec.generators
    non_translations: List[Homothety] = []
    translation_vectors: List[Point] = []
    for g in gens:
        t = g.is_translation()
        if t is Trilean.UNKNOWN:
            raise UndecidableAtPrecision("cannot resolve whether a ratio equals 1")
        if t is Trilean.YES:
            translation_vectors.append(g.shift)
        else:
            non_translations.append(g)

    any_noncommuting = False
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            c = gens[i].commutes(gens[j])
            if c is Trilean.UNKNOWN:
                raise UndecidableAtPrecision("cannot resolve a commutation test")
            if c is Trilean.NO:
                any_noncommuting = True
    if not any_noncommuting:
        raise AbelianGroup("all generator pairs commute")
    if not non_translations:
        raise AbelianGroup("translation-only groups are abelian")

    p0 = non_translations[0].center()
    seeds: List[Point] = [g.center() for g in non_translations]
    for v in translation_vectors:
        seeds.append(v_add(p0, v))
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            v = gens[i].commutator(gens[j])
            if v_is_zero(v) is not Trilean.YES:
                seeds.append(v_add(p0, v))

    eps = spec.eps
    basis: List[Point] = []
    for s in seeds:
        _independent_append(basis, v_sub(s, p0), eps)
    for _ in range(spec.dim + 1):
        grew = False
        for g in gens:
            image = g.apply(p0)
            if _independent_append(basis, v_sub(image, p0), eps):
                grew = True
        if not grew:
            break
    exact = spec.is_exact
    basis = _orthogonalize(basis, exact)
    sub = AffineSubspace(base=p0, basis=tuple(basis), exact=exact)
    for s in seeds:
        if not sub.contains(s, eps):
            raise AssertionError("invariant subspace lost a seed point")
    for g in gens:
        if not sub.contains(g.apply(p0), eps):
            raise AssertionError("invariant subspace is not generator-invariant")
    return sub


# ---------------------------------------------------------------------------
# crystallographic restriction


class CrystalVerdict:
    NOT_ROTATION = "NotRotation"
    COMPATIBLE_DISCRETE = "CompatibleDiscrete"
    FORCES_DENSE = "ForcesDense"


_CRYSTAL_COS = (-1.0, -0.5, 0.0, 0.5, 1.0)


def crystallographic_test(ratio: Scalar) -> str:
    """Can the rotation with this ratio preserve a planar lattice?

    Unit-modulus ratios are lattice-compatible exactly when cos of the
    angle lies in {-1, -1/2, 0, 1/2, 1}; anything else forces density.
    """
    ratio = Scalar._coerce(ratio)
    m = ratio.modulus_is_one()
    if m is Trilean.NO:
        return CrystalVerdict.NOT_ROTATION
    if ratio.is_exact:
        c = ratio.exact_value.real_part()
        if c.is_rational() and c.p * 2 in (-2, -1, 0, 1, 2):
            return CrystalVerdict.COMPATIBLE_DISCRETE
        return CrystalVerdict.FORCES_DENSE
    # approximate ratio numerically consistent with the unit circle: the
    # angle decides regardless of how the modulus resolves, because neither
    # a non-crystallographic rotation nor a strict contraction/expansion
    # can preserve a planar lattice
    z = ratio.to_complex()
    cos_theta = z.real / abs(z)
    err = ratio.err * 4 + 1e-15
    dist = min(abs(cos_theta - c) for c in _CRYSTAL_COS)
    if dist <= err:
        raise UndecidableAtPrecision(
            "cos of the rotation angle is within error of the crystallographic set"
        )
    return CrystalVerdict.FORCES_DENSE


# ---------------------------------------------------------------------------
# translation-subgroup sandwich (dimension 1)


def g1_lattice_bounds(
    spec: GroupSpec, word_cap: int = 10
) -> Tuple[List[Scalar], List[Scalar], List[Scalar]]:
    """Inner and outer lattice generators bracketing the translation
    subgroup for a one-dimensional pair of equal-ratio rotations, plus the
    translations actually harvested from words up to the cap.

    Returns (inner, outer, sampled) as scalars.  Raises WordCapExceeded if
    any harvested translation falls outside the outer lattice: that would
    falsify the bracketing arithmetic.
    """
    if spec.dim != 1:
        raise ValueError("lattice sandwich applies to dimension 1")
    pair = _sandwich_pair(spec)
    if pair is None:
        raise ValueError(
            "lattice sandwich needs two unit-modulus generators sharing a ratio"
            " with distinct centers"
        )
    f, g = pair
    lam = f.ratio
    a = v_sub(g.center(), f.center())[0]
    one = SCALAR_ONE
    lam_bar = lam.conj()
    inner = [
        (one - lam_bar) ** 2 * a,
        (lam - one) ** 2 * a,
        lam * (lam - one) ** 2 * a,
    ]
    outer = [(one - lam_bar) * a, (one - lam) * a]
    from .orbit_oracle import harvest_translations

    # the bracketing statement is about the group the pair generates; other
    # generators may legitimately contribute translations beyond it
    sub = spec
    if len(spec.generators) != 2 or (f, g) != tuple(spec.generators):
        sub = GroupSpec(1, (f, g), word_cap=spec.word_cap, eps=spec.eps)
    sampled_points = harvest_translations(sub, word_cap)
    sampled = [p[0] for p in sampled_points]
    outer_closure = classify_additive_closure(
        [_to_planar_or_complex(s) for s in outer]
    )
    for s in sampled:
        if not outer_closure.contains(_to_planar_or_complex(s), eps=spec.eps):
            raise WordCapExceeded(
                f"harvested translation {s!r} escapes the outer lattice"
            )
    return inner, outer, sampled


def _sandwich_pair(spec: GroupSpec) -> Optional[Tuple[Homothety, Homothety]]:
    gens = [
        g
        for g in spec.generators
        if g.is_translation() is Trilean.NO
        and g.ratio.modulus_is_one() is Trilean.YES
        # the bracketing lattices exist only for crystallographic angles:
        # an order-8/12/infinite rotation spreads Z[ratio] densely
        and g.ratio.root_of_unity_order() in (2, 3, 4, 6)
    ]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            f, g = gens[i], gens[j]
            if f.ratio.eq(g.ratio) is not Trilean.YES:
                continue
            if v_is_zero(v_sub(f.center(), g.center())) is Trilean.NO:
                return f, g
    return None


def _to_planar_or_complex(s: Scalar):
    if s.is_exact:
        return PlanarVector.from_cyclo(s.exact_value)
    return s.to_complex()


# ---------------------------------------------------------------------------
# the assembled profile


@dataclass(frozen=True)
class GroupProfile:
    spec: GroupSpec
    has_nonreal_ratio: bool
    has_modulus_ne1: bool
    sr_membership: Optional[str]
    outside_SR: bool
    E_G: AffineSubspace
    gamma_seeds: Tuple[Point, ...]
    lambda_closure: MultClosure
    harvested: Tuple[Point, ...]
    g1_closure: Optional[AdditiveClosure] = None
    g1_inner: Optional[Tuple[Scalar, ...]] = None
    g1_outer: Optional[Tuple[Scalar, ...]] = None
    g1_pinned: Optional[bool] = None
    exact: bool = True

    def to_report(self) -> dict:
        from .exact_algebra import format_scalar

        out = {
            "has_nonreal_ratio": self.has_nonreal_ratio,
            "has_modulus_ne1": self.has_modulus_ne1,
            "sr_membership": self.sr_membership,
            "outside_SR": self.outside_SR,
            "invariant_subspace": self.E_G.to_report(),
            "gamma_seeds": [
                [format_scalar(c) for c in p] for p in self.gamma_seeds
            ],
            "lambda_closure": self.lambda_closure.to_report(),
            "exact": self.exact,
        }
        if self.g1_closure is not None:
            out["translation_closure"] = self.g1_closure.to_report()
        if self.g1_inner is not None:
            out["g1_inner"] = [format_scalar(s) for s in self.g1_inner]
            out["g1_outer"] = [format_scalar(s) for s in self.g1_outer]
            out["g1_pinned"] = self.g1_pinned
        return out


def compute_profile(spec: GroupSpec, harvest_cap: int = 10) -> GroupProfile:
    """Derive every profile field; raises AbelianGroup for abelian input."""
    flags = ratio_flags(spec)
    eg = compute_EG(spec)
    gamma_seeds = tuple(
        g.center() for g in spec.generators if g.is_translation() is Trilean.NO
    )
    lam = classify_multiplicative_closure([g.ratio for g in spec.generators])
    from .orbit_oracle import harvest_translations

    harvested = tuple(harvest_translations(spec, harvest_cap))
    g1_closure = None
    g1_inner = None
    g1_outer = None
    g1_pinned = None
    if spec.dim == 1:
        vectors = [_to_planar_or_complex(p[0]) for p in harvested]
        g1_closure = classify_additive_closure(vectors)
        try:
            inner, outer, _ = g1_lattice_bounds(spec, word_cap=harvest_cap)
            g1_inner = tuple(inner)
            g1_outer = tuple(outer)
            inner_closure = classify_additive_closure(
                [_to_planar_or_complex(s) for s in inner]
            )
            outer_closure = classify_additive_closure(
                [_to_planar_or_complex(s) for s in outer]
            )
            g1_pinned = inner_closure == outer_closure
        except ValueError:
            pass
    exact = spec.is_exact and eg.exact and lam.exact
    return GroupProfile(
        spec=spec,
        has_nonreal_ratio=flags.has_nonreal_ratio,
        has_modulus_ne1=flags.has_modulus_ne1,
        sr_membership=flags.sr_membership,
        outside_SR=flags.outside_SR,
        E_G=eg,
        gamma_seeds=gamma_seeds,
        lambda_closure=lam,
        harvested=harvested,
        g1_closure=g1_closure,
        g1_inner=g1_inner,
        g1_outer=g1_outer,
        g1_pinned=g1_pinned,
        exact=exact,
    )
