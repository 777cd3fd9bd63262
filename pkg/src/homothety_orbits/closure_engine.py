"""Symbolic orbit-closure descriptions and global verdicts.

Given a group profile and a point, produce a closed-form description of the
orbit closure (whole space, invariant affine subspace, scaled cone over it,
or a finite union of rotated lattice cosets), each with a membership
predicate, a distance function, and a sampler so the brute-force oracle can
cross-examine every claim.  Global verdicts (dense orbit, discrete orbit,
minimality) are three-valued: whenever a heuristic classifier feeds a
hypothesis, the answer is "unknown", never a silent "no".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from .affine_maps import (
    Homothety,
    Point,
    as_point,
    hermitian_dot,
    v_add,
    v_is_zero,
    v_scale,
    v_sub,
    v_to_complex,
)
from .closed_subgroups import (
    AdditiveClosure,
    MultClosure,
    classify_additive_closure,
)
from .exact_algebra import (
    SCALAR_ONE,
    Scalar,
    Trilean,
    UndecidableAtPrecision,
    format_scalar,
)
from .group_profile import (
    AffineSubspace,
    GroupProfile,
    GroupSpec,
    crystallographic_test,
    CrystalVerdict,
)

_FAMILY_STEP = {"S2": 3, "S3": 2}  # zeta12 exponent step: F2 = 4th, F3 = 6th roots
_FAMILY_ORDER = {"S2": 4, "S3": 6}
_TRACE_CELL_CAP = 300_000


def _format_point(p: Point) -> List[str]:
    return [format_scalar(c) for c in p]


def _point_rows(points: Sequence[Point]) -> np.ndarray:
    return np.array([v_to_complex(p) for p in points], dtype=np.complex128)


def _cells_from_real(real_pts: np.ndarray, center: np.ndarray, half: float, res: int) -> Set[bytes]:
    cell = 2.0 * half / res
    rel = real_pts - center
    inside = np.all(np.abs(rel) <= half + 1e-12, axis=1)
    if not inside.any():
        return set()
    idx = np.floor((rel[inside] + half) / cell).astype(np.int64)
    np.clip(idx, 0, res - 1, out=idx)
    idx = np.ascontiguousarray(idx)
    keys = idx.view([("", idx.dtype)] * idx.shape[1]).reshape(-1)
    return {k.tobytes() for k in keys}


def _cell_centers(center: np.ndarray, half: float, res: int) -> np.ndarray:
    """(res^{2n}, 2n) real coordinates of every cell center; caller caps size."""
    axes = [
        center[d] - half + (2.0 * half / res) * (np.arange(res) + 0.5)
        for d in range(center.shape[0])
    ]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _real_to_complex(rows: np.ndarray) -> np.ndarray:
    return rows[:, 0::2] + 1j * rows[:, 1::2]


@dataclass(frozen=True)
class ClosureDesc:
    """Base description: subclasses implement the geometry."""

    provenance: str
    exact: bool

    def contains(self, z, eps: float = 1e-9) -> bool:
        raise NotImplementedError

    def distance(self, z) -> float:
        raise NotImplementedError

    def sample(self, rng, count: int, translations: Sequence[Point] = ()) -> List[Point]:
        raise NotImplementedError

    def to_report(self) -> dict:
        raise NotImplementedError

    def kind(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class WholeSpace(ClosureDesc):
    dim: int = 1
    point: Point = ()

    def contains(self, z, eps: float = 1e-9) -> bool:
        return len(as_point(z)) == self.dim

    def distance(self, z) -> float:
        return 0.0

    def distance_many(self, arr: np.ndarray) -> np.ndarray:
        return np.zeros(arr.shape[0])

    def trace_cells(self, center, half, res) -> Optional[Set[bytes]]:
        return None  # the trace is every cell

    def sample(self, rng, count: int, translations: Sequence[Point] = ()) -> List[Point]:
        out: List[Point] = [self.point]
        for t in translations:
            out.append(v_add(self.point, t))
        while len(out) < count:
            out.append(
                as_point(
                    [
                        Scalar.approx(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
                        for _ in range(self.dim)
                    ]
                )
            )
        return out[: max(1, count)]

    def to_report(self) -> dict:
        return {
            "kind": "WholeSpace",
            "dim": self.dim,
            "provenance": self.provenance,
            "exact": self.exact,
            "point": _format_point(self.point),
        }


@dataclass(frozen=True)
class Affine(ClosureDesc):
    subspace: AffineSubspace = None
    point: Point = ()

    def contains(self, z, eps: float = 1e-9) -> bool:
        return self.subspace.contains(z, eps)

    def distance(self, z) -> float:
        return self.subspace.distance(z)

    def _projector(self) -> Tuple[np.ndarray, np.ndarray]:
        base = np.array(v_to_complex(self.subspace.base), dtype=np.complex128)
        if not self.subspace.basis:
            proj = np.zeros((base.shape[0], base.shape[0]), dtype=np.complex128)
            return base, proj
        b = np.array(
            [v_to_complex(v) for v in self.subspace.basis], dtype=np.complex128
        ).T
        proj = b @ np.linalg.pinv(b)
        return base, proj

    def distance_many(self, arr: np.ndarray) -> np.ndarray:
        base, proj = self._projector()
        diff = arr - base
        res = diff - diff @ proj.T
        return np.linalg.norm(res, axis=1)

    def trace_cells(self, center, half, res) -> Optional[Set[bytes]]:
        if self.subspace.is_whole_space():
            return None
        center = np.asarray(center, dtype=float)
        total = res ** center.shape[0]
        cell = 2.0 * half / res
        if total <= _TRACE_CELL_CAP:
            centers = _cell_centers(center, half, res)
            d = self.distance_many(_real_to_complex(centers))
            near = centers[d <= cell * math.sqrt(center.shape[0]) / 2.0]
            return _cells_from_real(near, center, half, res)
        return self._sampled_trace(center, half, res)

    def _sampled_trace(self, center, half, res) -> Set[bytes]:
        import random

        rng = random.Random(20260817)
        pts = self.sample(rng, 20_000)
        rows = _point_rows(pts)
        real = np.empty((rows.shape[0], 2 * rows.shape[1]))
        real[:, 0::2] = rows.real
        real[:, 1::2] = rows.imag
        return _cells_from_real(real, np.asarray(center, dtype=float), half, res)

    def sample(self, rng, count: int, translations: Sequence[Point] = ()) -> List[Point]:
        return self.subspace.sample(rng, count, translations)

    def to_report(self) -> dict:
        return {
            "kind": "Affine",
            "provenance": self.provenance,
            "exact": self.exact,
            "subspace": self.subspace.to_report(),
            "point": _format_point(self.point),
        }


@dataclass(frozen=True)
class LambdaCone(ClosureDesc):
    """The set Lambda-closure * (z - apex) + E, apex in E, z outside E."""

    apex: Point = ()
    base: AffineSubspace = None
    lambda_closure: MultClosure = None
    point: Point = ()  # the defining z
    ratio_pool: Tuple[Scalar, ...] = ()  # exact group elements of the ratio group

    # -- transverse reduction ------------------------------------------------
    def _transverse(self, w: Point) -> Tuple[Point, Optional[Scalar], Point]:
        """Decompose w - apex = (parallel to E) + xi * t_z + residual."""
        diff = v_sub(as_point(w), self.apex)
        t = diff
        for u in self.base.basis:
            num = hermitian_dot(t, u)
            den = hermitian_dot(u, u)
            t = v_sub(t, v_scale(num / den, u))
        tz = self._tz()
        den = hermitian_dot(tz, tz)
        xi = hermitian_dot(t, tz) / den
        residual = v_sub(t, v_scale(xi, tz))
        return t, xi, residual

    def _tz(self) -> Point:
        diff = v_sub(self.point, self.apex)
        t = diff
        for u in self.base.basis:
            num = hermitian_dot(t, u)
            den = hermitian_dot(u, u)
            t = v_sub(t, v_scale(num / den, u))
        return t

    def contains(self, w, eps: float = 1e-9) -> bool:
        _, xi, residual = self._transverse(w)
        rz = v_is_zero(residual)
        if self.exact and rz is not Trilean.UNKNOWN:
            if rz is Trilean.NO:
                return self.distance(w) <= eps
            return self.lambda_closure.contains(xi, eps)
        return self.distance(w) <= eps

    def distance(self, w) -> float:
        _, xi, residual = self._transverse(w)
        rn = math.sqrt(
            sum(abs(c) ** 2 for c in v_to_complex(residual))
        )
        tz = self._tz()
        tz_norm = math.sqrt(sum(abs(c) ** 2 for c in v_to_complex(tz)))
        dxi = self.lambda_closure.distance(complex(xi.to_complex()))
        return math.sqrt(rn * rn + (dxi * tz_norm) ** 2)

    def distance_many(self, arr: np.ndarray) -> np.ndarray:
        apex = np.array(v_to_complex(self.apex), dtype=np.complex128)
        if self.base.basis:
            b = np.array(
                [v_to_complex(v) for v in self.base.basis], dtype=np.complex128
            ).T
            proj = b @ np.linalg.pinv(b)
        else:
            proj = np.zeros((apex.shape[0], apex.shape[0]), dtype=np.complex128)
        tz = np.array(v_to_complex(self._tz()), dtype=np.complex128)
        diff = arr - apex
        t = diff - diff @ proj.T
        den = float(np.vdot(tz, tz).real)
        xi = (t @ np.conj(tz)) / den
        res = t - xi[:, None] * tz
        rn = np.linalg.norm(res, axis=1)
        tz_norm = math.sqrt(den)
        dxi = np.array([self.lambda_closure.distance(complex(x)) for x in xi])
        return np.sqrt(rn ** 2 + (dxi * tz_norm) ** 2)

    def trace_cells(self, center, half, res) -> Optional[Set[bytes]]:
        center = np.asarray(center, dtype=float)
        total = res ** center.shape[0]
        cell = 2.0 * half / res
        if total > _TRACE_CELL_CAP:
            return None
        centers = _cell_centers(center, half, res)
        d = self.distance_many(_real_to_complex(centers))
        near = centers[d <= cell * math.sqrt(center.shape[0]) / 2.0]
        return _cells_from_real(near, center, half, res)

    def sample(self, rng, count: int, translations: Sequence[Point] = ()) -> List[Point]:
        """Members built from short group data: apex + rho*(z-apex) + t with
        rho a finite product of generator ratios and t a single harvested
        translation vector; when 0 lies in the ratio closure the bare base
        points join too.  Everything emitted is a member by construction."""
        za = v_sub(self.point, self.apex)
        pool: List[Scalar] = [SCALAR_ONE] + list(self.ratio_pool)
        t_pool: List[Optional[Point]] = [None] + list(translations)
        out: List[Point] = [self.point]
        for rho in pool:
            for t in t_pool:
                p = v_add(self.apex, v_scale(rho, za))
                if t is not None:
                    p = v_add(p, t)
                out.append(p)
                if len(out) >= count * 2:
                    break
            if len(out) >= count * 2:
                break
        if self.lambda_closure.includes_zero:
            out.append(self.apex)
            for t in translations:
                out.append(v_add(self.apex, t))
                out.append(v_sub(self.apex, t))
            base_extra = self.base.sample(rng, max(1, count // 4), translations)
            out.extend(base_extra)
        seen = set()
        unique: List[Point] = []
        for p in out:
            k = tuple(v_to_complex(p))
            if k not in seen:
                seen.add(k)
                unique.append(p)
        return unique[: max(1, count)]

    def to_report(self) -> dict:
        return {
            "kind": "LambdaCone",
            "provenance": self.provenance,
            "exact": self.exact,
            "apex": _format_point(self.apex),
            "base": self.base.to_report(),
            "lambda_closure": self.lambda_closure.to_report(),
            "point": _format_point(self.point),
            "renderings": [
                "closure(Lambda) * (z - apex) + E",
                "F-form: closure of {f(z): f in G} for z outside E",
            ],
        }


@dataclass(frozen=True)
class RotationCoset(ClosureDesc):
    """Finite rotation family applied to (z - apex), translated by the
    closure of the translation subgroup: union over k of
    zeta^(step*k) * (z - apex) + apex + T-closure."""

    family: str = "S2"  # "S2" -> 4th roots, "S3" -> 6th roots
    point: Point = ()
    apex: Point = ()
    translation_closure: Optional[AdditiveClosure] = None  # ambient dim 1 only
    sampled_translations: Tuple[Point, ...] = ()
    inner_bound: Optional[Tuple[Scalar, ...]] = None
    outer_bound: Optional[Tuple[Scalar, ...]] = None
    pinned: Optional[bool] = None
    g1_unstable: bool = False
    # the rotation group actually generated may be a proper subgroup of the
    # family (e.g. two half-turns); when known it overrides the family step
    rotation_step: Optional[int] = None

    @property
    def order(self) -> int:
        if self.rotation_step is not None:
            return 12 // self.rotation_step
        return _FAMILY_ORDER[self.family]

    @property
    def step(self) -> int:
        if self.rotation_step is not None:
            return self.rotation_step
        return _FAMILY_STEP[self.family]

    @property
    def dim(self) -> int:
        return len(self.point)

    def _rotations(self) -> List[Scalar]:
        return [Scalar.zeta_power(self.step * k) for k in range(self.order)]

    # real span of sampled translations (ambient dim >= 2 fallback)
    def _span_projector(self) -> np.ndarray:
        vecs = []
        for t in self.sampled_translations:
            zs = v_to_complex(t)
            for rho in self._rotations():
                r = rho.to_complex()
                row = [x for z in zs for x in ((r * z).real, (r * z).imag)]
                if any(abs(x) > 1e-14 for x in row):
                    vecs.append(row)
        if not vecs:
            return np.zeros((2 * self.dim, 2 * self.dim))
        m = np.array(vecs, dtype=float).T  # (2n, k)
        return m @ np.linalg.pinv(m)

    def contains(self, w, eps: float = 1e-9) -> bool:
        w = as_point(w)
        za = v_sub(self.point, self.apex)
        wa = v_sub(w, self.apex)
        if self.dim == 1 and self.translation_closure is not None:
            for rho in self._rotations():
                v = v_sub(wa, v_scale(rho, za))[0]
                target = v if v.is_exact else v.to_complex()
                if self.translation_closure.contains(target, eps):
                    return True
            return False
        return self.distance(w) <= eps

    def distance(self, w) -> float:
        w = as_point(w)
        za = np.array(v_to_complex(v_sub(self.point, self.apex)))
        wa = np.array(v_to_complex(v_sub(w, self.apex)))
        best = math.inf
        if self.dim == 1 and self.translation_closure is not None:
            for rho in self._rotations():
                v = complex(wa[0] - rho.to_complex() * za[0])
                best = min(best, self.translation_closure.distance(v))
            return best
        proj = self._span_projector()
        for rho in self._rotations():
            v = wa - rho.to_complex() * za
            row = np.array([x for z in v for x in (z.real, z.imag)])
            res = row - proj @ row
            best = min(best, float(np.linalg.norm(res)))
        return best

    def distance_many(self, arr: np.ndarray) -> np.ndarray:
        apex = np.array(v_to_complex(self.apex), dtype=np.complex128)
        za = np.array(v_to_complex(v_sub(self.point, self.apex)), dtype=np.complex128)
        wa = arr - apex
        out = np.full(arr.shape[0], np.inf)
        if self.dim == 1 and self.translation_closure is not None:
            for rho in self._rotations():
                v = wa[:, 0] - rho.to_complex() * za[0]
                d = np.array([self.translation_closure.distance(complex(x)) for x in v])
                out = np.minimum(out, d)
            return out
        proj = self._span_projector()
        for rho in self._rotations():
            v = wa - rho.to_complex() * za
            rows = np.empty((arr.shape[0], 2 * self.dim))
            rows[:, 0::2] = v.real
            rows[:, 1::2] = v.imag
            res = rows - rows @ proj.T
            out = np.minimum(out, np.linalg.norm(res, axis=1))
        return out

    def trace_cells(self, center, half, res) -> Optional[Set[bytes]]:
        center = np.asarray(center, dtype=float)
        total = res ** center.shape[0]
        if total > _TRACE_CELL_CAP:
            return None
        cell = 2.0 * half / res
        centers = _cell_centers(center, half, res)
        d = self.distance_many(_real_to_complex(centers))
        near = centers[d <= cell * math.sqrt(center.shape[0]) / 2.0]
        return _cells_from_real(near, center, half, res)

    def sample(self, rng, count: int, translations: Sequence[Point] = ()) -> List[Point]:
        za = v_sub(self.point, self.apex)
        t_pool: List[Optional[Point]] = [None]
        for t in list(self.sampled_translations) + list(translations):
            t_pool.append(t)
        out: List[Point] = []
        for rho in self._rotations():
            for t in t_pool:
                p = v_add(self.apex, v_scale(rho, za))
                if t is not None:
                    p = v_add(p, t)
                out.append(p)
        seen = set()
        unique: List[Point] = []
        for p in out:
            k = tuple(v_to_complex(p))
            if k not in seen:
                seen.add(k)
                unique.append(p)
        return unique[: max(1, count)]

    def to_report(self) -> dict:
        out = {
            "kind": "RotationCoset",
            "provenance": self.provenance,
            "exact": self.exact,
            "family": self.family,
            "rotation_order": self.order,
            "point": _format_point(self.point),
            "apex": _format_point(self.apex),
            "g1_unstable": self.g1_unstable,
            "renderings": [
                "F * (z - apex) + apex + closure(G1(0))",
                "uncentered: F * z + closure(G(0))",
            ],
        }
        if self.translation_closure is not None:
            out["translation_closure"] = self.translation_closure.to_report()
        if self.inner_bound is not None:
            out["inner_bound"] = [format_scalar(s) for s in self.inner_bound]
            out["outer_bound"] = [format_scalar(s) for s in self.outer_bound]
            out["pinned"] = self.pinned
        out["sampled_translation_count"] = len(self.sampled_translations)
        return out


@dataclass(frozen=True)
class Unsupported(ClosureDesc):
    reason: str = ""

    def contains(self, z, eps: float = 1e-9) -> bool:
        raise RuntimeError(f"unsupported case has no membership test: {self.reason}")

    def distance(self, z) -> float:
        raise RuntimeError(f"unsupported case has no distance: {self.reason}")

    def sample(self, rng, count: int, translations: Sequence[Point] = ()) -> List[Point]:
        raise RuntimeError(f"unsupported case has no sampler: {self.reason}")

    def to_report(self) -> dict:
        return {
            "kind": "Unsupported",
            "provenance": self.provenance,
            "exact": self.exact,
            "reason": self.reason,
        }


# ---------------------------------------------------------------------------
# the branch table


def _ratio_pool(spec: GroupSpec, span: int = 2, cap: int = 24) -> Tuple[Scalar, ...]:
    """Small products of generator ratios: exact elements of the ratio group."""
    ratios = [g.ratio for g in spec.generators]
    pool: List[Scalar] = []
    seen = set()

    def _push(s: Scalar) -> None:
        key = s.exact_value if s.is_exact else complex(round(s.to_complex().real, 12), round(s.to_complex().imag, 12))
        if key in seen:
            return
        seen.add(key)
        pool.append(s)

    frontier = [SCALAR_ONE]
    _push(SCALAR_ONE)
    for _ in range(span):
        nxt = []
        for s in frontier:
            for r in ratios:
                for q in (s * r, s * r.inverse()):
                    before = len(pool)
                    _push(q)
                    if len(pool) > before:
                        nxt.append(q)
                    if len(pool) >= cap:
                        return tuple(pool[1:])  # drop the leading 1
        frontier = nxt
    return tuple(pool[1:])


def _rotation_exponent(ratio: Scalar) -> Optional[int]:
    """k with ratio == zeta12^k, matched exactly when possible."""
    if ratio.is_exact:
        for k in range(12):
            if (ratio.exact_value - Scalar.zeta_power(k).exact_value).is_zero():
                return k
        return None
    w = ratio.to_complex()
    for k in range(12):
        if abs(w - Scalar.zeta_power(k).to_complex()) <= 1e-9:
            return k
    return None


def _rotation_anchor(spec: GroupSpec) -> Optional[Tuple[int, Homothety]]:
    """Exponent step generating the rotation group, plus a witness word.

    The rotation parts of the generators sit in the 12th roots of unity and
    generate the cyclic group of zeta12^d, d = gcd of the exponents.  A short
    word realizing rotation zeta12^d is found by breadth-first search over
    exponent residues; its fixed point is a valid coset apex, because the
    whole rotation family is realized by its powers about that point
    (no single generator need realize the family itself).
    """
    expo: List[int] = []
    for g in spec.generators:
        e = _rotation_exponent(g.ratio)
        if e is None:
            return None
        expo.append(e)
    d = 0
    for e in expo:
        d = math.gcd(d, e)
    d = math.gcd(d, 12)
    if d == 0:
        return None
    seen = {0: Homothety.identity(spec.dim)}
    frontier = [0]
    steps = [(g, e) for g, e in zip(spec.generators, expo)]
    steps += [(g.inverse(), (-e) % 12) for g, e in zip(spec.generators, expo)]
    while frontier and d not in seen:
        nxt: List[int] = []
        for r in frontier:
            w = seen[r]
            for g, e in steps:
                r2 = (r + e) % 12
                if r2 not in seen:
                    seen[r2] = g.compose(w)
                    nxt.append(r2)
        frontier = nxt
    if d not in seen:
        return None
    return d, seen[d]


def orbit_closure(profile: GroupProfile, z) -> ClosureDesc:
    """Branch table keyed on the ratio flags and the position of z.

    (a) outside the crystallographic families, z in E: the closure is E
        itself (whole space when E fills it);
    (b) outside the families, z off E: scaled cone over E through z;
    (c) ratios inside a crystallographic family: finitely many rotated
        translates of the translation-closure coset through z;
    (d) no non-real ratio: out of scope here, reported as such.
    """
    z = as_point(z)
    if len(z) != profile.spec.dim:
        raise ValueError("point dimension does not match the group")
    if not profile.has_nonreal_ratio:
        return Unsupported(
            provenance="Remark1.5",
            exact=profile.exact,
            reason="real-ratio case: see real companion paper",
        )
    eps = profile.spec.eps
    if profile.outside_SR:
        eg = profile.E_G
        if eg.contains(z, eps):
            if eg.is_whole_space():
                return WholeSpace(
                    provenance="Thm1.1(1)(i)",
                    exact=profile.exact,
                    dim=profile.spec.dim,
                    point=z,
                )
            return Affine(
                provenance="Thm1.1(1)(i)",
                exact=profile.exact,
                subspace=eg,
                point=z,
            )
        whole = (
            eg.dim == profile.spec.dim - 1
            and profile.lambda_closure.is_whole_plane() is Trilean.YES
        )
        if whole:
            return WholeSpace(
                provenance="Thm1.1(1)(ii)",
                exact=profile.exact,
                dim=profile.spec.dim,
                point=z,
            )
        return LambdaCone(
            provenance="Thm1.1(1)(ii)",
            exact=profile.exact and profile.lambda_closure.exact and eg.exact,
            apex=eg.base,
            base=eg,
            lambda_closure=profile.lambda_closure,
            point=z,
            ratio_pool=_ratio_pool(profile.spec),
        )
    # crystallographic branch: the apex must be a fixed point whose
    # stabilizer realizes the whole rotation group, so every coset of the
    # family is witnessed by an actual group element about that point
    family = profile.sr_membership
    apex = profile.gamma_seeds[0]
    step = None
    anchor = _rotation_anchor(profile.spec)
    if anchor is not None:
        step, witness = anchor
        apex = witness.center()
    unstable = profile.g1_pinned is False
    exact_flag = (
        profile.spec.dim == 1
        and profile.g1_closure is not None
        and profile.g1_closure.exact
        and profile.exact
    )
    return RotationCoset(
        provenance="Thm1.1(2)(ii)",
        exact=exact_flag,
        family=family,
        point=z,
        apex=apex,
        translation_closure=profile.g1_closure if profile.spec.dim == 1 else None,
        sampled_translations=profile.harvested,
        inner_bound=profile.g1_inner,
        outer_bound=profile.g1_outer,
        pinned=profile.g1_pinned,
        g1_unstable=unstable,
        rotation_step=step,
    )


# ---------------------------------------------------------------------------
# global verdicts


@dataclass(frozen=True)
class Verdicts:
    has_dense_orbit: Trilean
    all_orbits_in_U_dense: Trilean
    no_discrete_orbit: Trilean
    all_orbits_closed_discrete: Trilean
    orbits_in_U_minimal: bool
    orbits_in_U_homeomorphic: bool
    notes: Tuple[str, ...] = ()

    def to_report(self) -> dict:
        def t(x: Trilean) -> str:
            return {Trilean.YES: "yes", Trilean.NO: "no", Trilean.UNKNOWN: "unknown"}[x]

        return {
            "has_dense_orbit": t(self.has_dense_orbit),
            "all_orbits_in_U_dense": t(self.all_orbits_in_U_dense),
            "no_discrete_orbit": t(self.no_discrete_orbit),
            "all_orbits_closed_discrete": t(self.all_orbits_closed_discrete),
            "orbits_in_U_minimal": self.orbits_in_U_minimal,
            "orbits_in_U_homeomorphic": self.orbits_in_U_homeomorphic,
            "notes": list(self.notes),
        }


def _not(t: Trilean) -> Trilean:
    if t is Trilean.YES:
        return Trilean.NO
    if t is Trilean.NO:
        return Trilean.YES
    return Trilean.UNKNOWN


def global_verdicts(profile: GroupProfile) -> Verdicts:
    notes: List[str] = []
    n = profile.spec.dim
    m = len(profile.spec.generators)

    if not profile.has_nonreal_ratio:
        notes.append("real-ratio group: out of scope (Remark1.5)")
        dense = Trilean.UNKNOWN
        if m <= n - 2:
            dense = Trilean.NO
            notes.append(
                f"generator-count shortcut: {m} generators in dimension {n} (Cor1.6)"
            )
        return Verdicts(
            has_dense_orbit=dense,
            all_orbits_in_U_dense=Trilean.UNKNOWN,
            no_discrete_orbit=Trilean.UNKNOWN,
            all_orbits_closed_discrete=Trilean.UNKNOWN,
            orbits_in_U_minimal=False,
            orbits_in_U_homeomorphic=False,
            notes=tuple(notes),
        )

    shortcut = None
    if m <= n - 2:
        shortcut = Trilean.NO
        notes.append(
            f"generator-count shortcut: {m} generators in dimension {n} "
            "cannot give a dense orbit (Cor1.6)"
        )

    if profile.outside_SR:
        eg = profile.E_G
        lam_whole = profile.lambda_closure.is_whole_plane()
        if eg.is_whole_space():
            dense = Trilean.YES
            in_u_dense = Trilean.YES
            notes.append("E is the whole space: every orbit is dense (Cor1.4(3)(i))")
        elif eg.dim == n - 1:
            dense = lam_whole
            in_u_dense = lam_whole
            notes.append(
                "E is a hyperplane: density rides on the ratio closure "
                "filling the plane (Cor1.4(3)(ii))"
            )
        else:
            dense = Trilean.NO
            in_u_dense = Trilean.NO
            notes.append(
                "codim(E) >= 2: cone closures are proper subsets (Cor1.4)"
            )
        if shortcut is not None:
            dense = shortcut
        no_disc = Trilean.YES
        notes.append(
            "non-real non-crystallographic ratio: no orbit is discrete (Cor1.3)"
        )
        minimal = profile.has_modulus_ne1
        if minimal:
            notes.append(
                "ratio of modulus != 1 present: orbits off E are minimal and "
                "pairwise homeomorphic (Cor1.2(1))"
            )
        if not profile.exact:
            notes.append("approximate inputs: verdicts rest on resolved sign tests")
        return Verdicts(
            has_dense_orbit=dense,
            all_orbits_in_U_dense=in_u_dense,
            no_discrete_orbit=no_disc,
            all_orbits_closed_discrete=Trilean.NO,
            orbits_in_U_minimal=minimal,
            orbits_in_U_homeomorphic=minimal,
            notes=tuple(notes),
        )

    # crystallographic branch
    if n == 1 and profile.g1_closure is not None:
        g1 = profile.g1_closure
        discrete = g1.is_discrete()
        dense = g1.is_whole_plane()
        if profile.g1_outer is not None:
            outer = classify_additive_closure(
                [_planar_of_scalar(s) for s in profile.g1_outer]
            )
            if outer.is_discrete() is Trilean.YES and discrete is not Trilean.YES:
                discrete = Trilean.YES
                notes.append("outer sandwich lattice is discrete (Lemma 3.7)")
            if profile.g1_pinned:
                notes.append("sandwich bounds pin the translation closure")
            else:
                notes.append(
                    "sandwich bounds bracket but do not pin the translation "
                    "closure; harvested words decide between them"
                )
        elif g1.exact:
            notes.append(
                "translation closure classified from harvested words; "
                "treated as exact and cross-checked by the oracle"
            )
        dense_out = dense if shortcut is None else shortcut
        notes.append(
            "crystallographic ratios: orbit closures are finite unions of "
            "translation-closure cosets (Thm1.1(2))"
        )
        return Verdicts(
            has_dense_orbit=dense_out,
            all_orbits_in_U_dense=dense,
            no_discrete_orbit=_not(discrete),
            all_orbits_closed_discrete=discrete,
            orbits_in_U_minimal=False,
            orbits_in_U_homeomorphic=False,
            notes=tuple(notes),
        )

    notes.append(
        "crystallographic ratios in dimension >= 2: the translation closure "
        "lives in R^(2n) and is only sampled here; verdicts stay open"
    )
    return Verdicts(
        has_dense_orbit=Trilean.UNKNOWN if shortcut is None else shortcut,
        all_orbits_in_U_dense=Trilean.UNKNOWN,
        no_discrete_orbit=Trilean.UNKNOWN,
        all_orbits_closed_discrete=Trilean.UNKNOWN,
        orbits_in_U_minimal=False,
        orbits_in_U_homeomorphic=False,
        notes=tuple(notes),
    )


def _planar_of_scalar(s: Scalar):
    from .closed_subgroups import PlanarVector

    if s.is_exact:
        return PlanarVector.from_cyclo(s.exact_value)
    return s.to_complex()


# ---------------------------------------------------------------------------
# the planar two-rotation classifier


@dataclass(frozen=True)
class RotationPairVerdict:
    kind: str  # "AllDense" | "AllClosedDiscrete" | "Unknown"
    provenance: str
    lattice: Optional[AdditiveClosure] = None
    notes: Tuple[str, ...] = ()

    def to_report(self) -> dict:
        out = {
            "kind": self.kind,
            "provenance": self.provenance,
            "notes": list(self.notes),
        }
        if self.lattice is not None:
            out["lattice"] = self.lattice.to_report()
        return out


def _angle_to_ratio(theta) -> Tuple[Scalar, Optional[int]]:
    """Radians -> unit ratio; returns (ratio, k) with k the exact multiple
    of pi/6 when the angle is one (within 1e-9)."""
    if isinstance(theta, Scalar):
        theta = theta.to_complex().real
    theta = float(theta)
    k_hat = theta / (math.pi / 6.0)
    k = round(k_hat)
    if abs(k_hat - k) <= 1e-9:
        return Scalar.zeta_power(k % 12), k % 12
    return Scalar.approx(complex(math.cos(theta), math.sin(theta)), 1e-15), None


def _families(k: Optional[int], theta) -> Optional[Set[str]]:
    """Which of H2 (multiples of pi/2) / H3 (multiples of pi/3) hold."""
    if k is None:
        return None
    fams = set()
    if k % 3 == 0:
        fams.add("S2")
    if k % 2 == 0:
        fams.add("S3")
    return fams if fams else None


def _exact_coord(x) -> Scalar:
    if isinstance(x, Scalar):
        if x.is_exact:
            return x
        x = x.to_complex()
    z = complex(x)
    return Scalar.exact(Fraction(z.real), 0, 0, Fraction(z.imag))


def _exact_center(c) -> Point:
    """Lift a planar center to one exact complex coordinate.

    A pair is a point of R^2, identified with x + i*y; a single number is
    already the complex coordinate.  The dense/discrete verdict is
    invariant under affine conjugation, so only *which* rational the caller
    handed us matters — and every float is exactly a rational, so the lift
    is lossless and keeps the harvested translation arithmetic exact."""
    coords = list(c) if isinstance(c, (tuple, list)) else [c]
    if len(coords) == 2:
        a, b = (_exact_coord(x) for x in coords)
        if not (a.exact_value.imag_part().is_zero() and b.exact_value.imag_part().is_zero()):
            raise ValueError(
                "a planar center must be one complex number or a pair of reals"
            )
        return as_point([a + b * Scalar.gauss(0, 1)])
    if len(coords) != 1:
        raise ValueError("rotation-pair centers live in the plane")
    return as_point([_exact_coord(coords[0])])


def rotation_pair_classify(theta, theta_prime, c1, c2) -> RotationPairVerdict:
    """Two planar rotations by theta, theta' about distinct centers.

    Dense whenever one angle leaves both crystallographic families or the
    two angles live in different families (then the composed rotation
    leaves both); closed and discrete when both angles share a family and
    the harvested translation group is a genuine lattice.
    """
    c1p = _exact_center(c1)
    c2p = _exact_center(c2)
    if v_is_zero(v_sub(c1p, c2p)) is not Trilean.NO:
        raise ValueError("the two rotation centers must be distinct")
    r1, k1 = _angle_to_ratio(theta)
    r2, k2 = _angle_to_ratio(theta_prime)
    for r, k in ((r1, k1), (r2, k2)):
        if k is None:
            # margin check: reject angles too close to the boundary set
            c = r.to_complex().real
            if min(abs(c - x) for x in (-1.0, -0.5, 0.0, 0.5, 1.0)) <= 1e-12:
                raise UndecidableAtPrecision(
                    "angle numerically indistinguishable from a "
                    "crystallographic one"
                )
        if k is not None and k % 12 == 0:
            raise ValueError("angles must not be multiples of 2*pi")
    f1 = _families(k1, theta)
    f2 = _families(k2, theta_prime)
    notes = (
        "clause (1)(i) is implemented as: some angle outside both "
        "crystallographic families (the literal statement is vacuous)",
    )
    if f1 is None or f2 is None:
        return RotationPairVerdict(
            kind="AllDense", provenance="Thm1.2(1)", notes=notes
        )
    common = f1 & f2
    if not common:
        # mixed families: decide on the composed rotation, which must leave both
        verdict = crystallographic_test(r1 * r2)
        if verdict is not CrystalVerdict.FORCES_DENSE:
            raise AssertionError(
                "mixed-family composition should force density"
            )
        return RotationPairVerdict(
            kind="AllDense",
            provenance="Thm1.2(1)",
            notes=notes + ("mixed families: composed rotation leaves both",),
        )
    spec = GroupSpec(
        dim=1,
        generators=(
            Homothety.with_center(r1, c1p),
            Homothety.with_center(r2, c2p),
        ),
    )
    from .orbit_oracle import harvest_translations

    harvested = harvest_translations(spec, 10)
    lattice = classify_additive_closure(
        [_planar_of_scalar(p[0]) for p in harvested]
    )
    if lattice.is_discrete() is Trilean.YES:
        return RotationPairVerdict(
            kind="AllClosedDiscrete",
            provenance="Thm1.2(2)",
            lattice=lattice,
            notes=notes,
        )
    return RotationPairVerdict(
        kind="Unknown",
        provenance="Thm1.2(2)",
        lattice=lattice,
        notes=notes
        + ("harvested translation group did not classify as discrete",),
    )
