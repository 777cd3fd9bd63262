"""Closed-subgroup classification in the plane and in C*.

Additive side: the closure of a finitely generated subgroup of R^2 whose
generators have coordinates in Q(sqrt(3)) is decided exactly.  Generators
are lifted to Q^4 through the basis {1, sqrt(3)} per axis; a Hermite normal
form gives the abstract Z-rank, and Kronecker duality (the closure is the
annihilator of the dual group D = {phi : phi.v in Z for all generators v})
reduces the classification to integer kernels of small rational systems.

Multiplicative side: subgroups of C* generated by ratios whose argument is
a multiple of pi/6 and whose squared modulus is rational are classified
exactly through prime-exponent lattices coupled to the 12th-root angle
group.  Everything else falls back to a numeric heuristic and is flagged.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .lattices import (
    clear_denominators,
    field_nullspace,
    field_rank,
    field_solve,
    hnf,
    hnf_solve,
    integer_kernel,
    lattice_basis_from_rational_rows,
)
from .exact_algebra import (
    CycloScalar,
    RealQuadratic,
    Scalar,
    Trilean,
)

RQ_ZERO = RealQuadratic(0, 0)
RQ_ONE = RealQuadratic(1, 0)


def _rq_is_zero(x: RealQuadratic) -> bool:
    return x.is_zero()


def _rq_rank(rows):
    return field_rank(rows, _rq_is_zero, RQ_ZERO, RQ_ONE)


def _rq_nullspace(rows):
    return field_nullspace(rows, _rq_is_zero, RQ_ZERO, RQ_ONE)


def _rq_solve(cols, target):
    return field_solve(cols, target, _rq_is_zero, RQ_ZERO, RQ_ONE)


@dataclass(frozen=True)
class PlanarVector:
    """Exact vector of R^2 with coordinates in Q(sqrt(3))."""

    x: RealQuadratic
    y: RealQuadratic

    @staticmethod
    def from_cyclo(z: CycloScalar) -> "PlanarVector":
        return PlanarVector(z.real_part(), z.imag_part())

    @staticmethod
    def of(x, y) -> "PlanarVector":
        def conv(v):
            if isinstance(v, RealQuadratic):
                return v
            return RealQuadratic(v, 0)

        return PlanarVector(conv(x), conv(y))

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def lift(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x.p, self.x.q, self.y.p, self.y.q)

    @staticmethod
    def unlift(row: Sequence[Fraction]) -> "PlanarVector":
        return PlanarVector(RealQuadratic(row[0], row[1]), RealQuadratic(row[2], row[3]))

    def dot(self, other: "PlanarVector") -> RealQuadratic:
        return self.x * other.x + self.y * other.y

    def to_complex(self) -> complex:
        return complex(self.x.to_float(), self.y.to_float())

    def __str__(self):
        return f"({self.x.p}+{self.x.q}r3, {self.y.p}+{self.y.q}r3)"


def _fmt_rq(x: RealQuadratic) -> str:
    if x.q == 0:
        return str(x.p)
    return f"{x.p}+{x.q}*sqrt3"


def _fmt_planar(v: PlanarVector) -> str:
    return f"[{_fmt_rq(v.x)}, {_fmt_rq(v.y)}]"


# ---------------------------------------------------------------------------
# additive closures


@dataclass(frozen=True)
class AdditiveClosure:
    shape: str
    exact: bool
    evidence: Optional[dict] = None

    def contains(self, v, eps: float = 1e-9) -> bool:
        raise NotImplementedError

    def distance(self, v: complex) -> float:
        raise NotImplementedError

    def sample(self, rng, count: int) -> List[complex]:
        raise NotImplementedError

    def is_discrete(self) -> Trilean:
        if not self.exact:
            return Trilean.UNKNOWN
        return Trilean.of(self.shape in ("Zero", "Lattice1", "Lattice2"))

    def is_whole_plane(self) -> Trilean:
        if not self.exact:
            return Trilean.UNKNOWN
        return Trilean.of(self.shape == "Plane")

    def to_report(self) -> dict:
        out = {"shape": self.shape, "exact": self.exact}
        if self.evidence:
            out["evidence"] = self.evidence
        return out


def _as_planar(v) -> Optional[PlanarVector]:
    if isinstance(v, PlanarVector):
        return v
    if isinstance(v, CycloScalar):
        return PlanarVector.from_cyclo(v)
    if isinstance(v, Scalar) and v.is_exact:
        return PlanarVector.from_cyclo(v.exact_value)
    return None


def _as_complex(v) -> complex:
    if isinstance(v, PlanarVector):
        return v.to_complex()
    if isinstance(v, Scalar):
        return v.to_complex()
    if isinstance(v, CycloScalar):
        return v.to_complex()
    return complex(v)


@dataclass(frozen=True)
class ZeroGroup(AdditiveClosure):
    shape: str = "Zero"
    exact: bool = True

    def contains(self, v, eps: float = 1e-9) -> bool:
        p = _as_planar(v)
        if p is not None and self.exact:
            return p.is_zero()
        return abs(_as_complex(v)) <= eps

    def distance(self, v: complex) -> float:
        return abs(v)

    def sample(self, rng, count: int) -> List[complex]:
        return [0j] * min(count, 1)

    def to_report(self) -> dict:
        return super().to_report()


@dataclass(frozen=True)
class Lattice1(AdditiveClosure):
    generator: PlanarVector = None
    shape: str = "Lattice1"
    exact: bool = True

    def contains(self, v, eps: float = 1e-9) -> bool:
        p = _as_planar(v)
        if p is not None and self.exact:
            rows, den = clear_denominators([self.generator.lift()])
            t = [x * den for x in p.lift()]
            if any(x.denominator != 1 for x in t):
                return False
            return hnf_solve(hnf(rows), [int(x) for x in t]) is not None
        return self.distance(_as_complex(v)) <= eps

    def distance(self, v: complex) -> float:
        g = self.generator.to_complex()
        n = round((v.real * g.real + v.imag * g.imag) / abs(g) ** 2)
        return abs(v - n * g)

    def sample(self, rng, count: int) -> List[complex]:
        g = self.generator.to_complex()
        return [g * rng.randint(-6, 6) for _ in range(count)]

    def to_report(self) -> dict:
        out = super().to_report()
        out["generator"] = _fmt_planar(self.generator)
        out["generator_value"] = _c2l(self.generator.to_complex())
        return out


@dataclass(frozen=True)
class Lattice2(AdditiveClosure):
    basis: Tuple[PlanarVector, PlanarVector] = None
    shape: str = "Lattice2"
    exact: bool = True

    def _int_basis(self):
        rows, den = clear_denominators([b.lift() for b in self.basis])
        return hnf(rows), den

    def contains(self, v, eps: float = 1e-9) -> bool:
        p = _as_planar(v)
        if p is not None and self.exact:
            rows, den = self._int_basis()
            t = [x * den for x in p.lift()]
            if any(x.denominator != 1 for x in t):
                return False
            return hnf_solve(rows, [int(x) for x in t]) is not None
        return self.distance(_as_complex(v)) <= eps

    def distance(self, v: complex) -> float:
        b1 = self.basis[0].to_complex()
        b2 = self.basis[1].to_complex()
        det = b1.real * b2.imag - b1.imag * b2.real
        s = (v.real * b2.imag - v.imag * b2.real) / det
        t = (b1.real * v.imag - b1.imag * v.real) / det
        best = math.inf
        for ds in (math.floor(s), math.ceil(s)):
            for dt in (math.floor(t), math.ceil(t)):
                best = min(best, abs(v - ds * b1 - dt * b2))
        return best

    def shortest_vector(self) -> float:
        """Brute-force shortest nonzero vector length (small search box)."""
        b1 = self.basis[0].to_complex()
        b2 = self.basis[1].to_complex()
        best = math.inf
        for m in range(-6, 7):
            for n in range(-6, 7):
                if m == 0 and n == 0:
                    continue
                best = min(best, abs(m * b1 + n * b2))
        return best

    def sample(self, rng, count: int) -> List[complex]:
        b1 = self.basis[0].to_complex()
        b2 = self.basis[1].to_complex()
        return [
            b1 * rng.randint(-4, 4) + b2 * rng.randint(-4, 4) for _ in range(count)
        ]

    def to_report(self) -> dict:
        out = super().to_report()
        out["basis"] = [_fmt_planar(b) for b in self.basis]
        out["basis_values"] = [_c2l(b.to_complex()) for b in self.basis]
        return out


@dataclass(frozen=True)
class LineDense(AdditiveClosure):
    direction: PlanarVector = None
    shape: str = "LineDense"
    exact: bool = True

    def contains(self, v, eps: float = 1e-9) -> bool:
        p = _as_planar(v)
        if p is not None and self.exact:
            return (p.x * self.direction.y - p.y * self.direction.x).is_zero()
        return self.distance(_as_complex(v)) <= eps

    def distance(self, v: complex) -> float:
        u = self.direction.to_complex()
        u /= abs(u)
        t = v.real * u.real + v.imag * u.imag
        return abs(v - t * u)

    def sample(self, rng, count: int) -> List[complex]:
        u = self.direction.to_complex()
        return [u * (rng.random() * 8 - 4) for _ in range(count)]

    def to_report(self) -> dict:
        out = super().to_report()
        out["direction"] = _fmt_planar(self.direction)
        out["direction_value"] = _c2l(self.direction.to_complex())
        return out


@dataclass(frozen=True)
class LineLattice(AdditiveClosure):
    """All x with dual.x in Z: a line of direction `direction` plus integer
    steps of `transversal`."""

    direction: PlanarVector = None
    transversal: PlanarVector = None
    dual: PlanarVector = None
    shape: str = "LineLattice"
    exact: bool = True

    def contains(self, v, eps: float = 1e-9) -> bool:
        p = _as_planar(v)
        if p is not None and self.exact:
            pairing = p.dot(self.dual)
            return pairing.is_rational() and pairing.p.denominator == 1
        return self.distance(_as_complex(v)) <= eps

    def distance(self, v: complex) -> float:
        d = self.dual.to_complex()
        pairing = v.real * d.real + v.imag * d.imag
        return abs(pairing - round(pairing)) / abs(d)

    def sample(self, rng, count: int) -> List[complex]:
        u = self.direction.to_complex()
        b = self.transversal.to_complex()
        return [
            u * (rng.random() * 8 - 4) + b * rng.randint(-4, 4) for _ in range(count)
        ]

    def to_report(self) -> dict:
        out = super().to_report()
        out["direction"] = _fmt_planar(self.direction)
        out["transversal"] = _fmt_planar(self.transversal)
        out["direction_value"] = _c2l(self.direction.to_complex())
        out["transversal_value"] = _c2l(self.transversal.to_complex())
        return out


@dataclass(frozen=True)
class PlaneGroup(AdditiveClosure):
    shape: str = "Plane"
    exact: bool = True

    def contains(self, v, eps: float = 1e-9) -> bool:
        return True

    def distance(self, v: complex) -> float:
        return 0.0

    def sample(self, rng, count: int) -> List[complex]:
        return [complex(rng.random() * 8 - 4, rng.random() * 8 - 4) for _ in range(count)]


def _c2l(z: complex) -> List[float]:
    return [z.real, z.imag]


def classify_additive_closure(vectors: Sequence) -> AdditiveClosure:
    """Closure of the subgroup of R^2 generated by the given vectors.

    Exact when every vector has coordinates in Q(sqrt(3)); otherwise a
    numeric heuristic runs and the result carries exact=False.
    """
    planar: List[PlanarVector] = []
    exact = True
    for v in vectors:
        p = _as_planar(v)
        if p is None:
            exact = False
            break
        planar.append(p)
    if not exact:
        return _classify_additive_heuristic([_as_complex(v) for v in vectors])
    gens = [p for p in planar if not p.is_zero()]
    if not gens:
        return ZeroGroup()
    d = _rq_rank([[g.x, g.y] for g in gens])
    lift_rows = [list(g.lift()) for g in gens]
    basis = lattice_basis_from_rational_rows(lift_rows)
    t = len(basis)
    if t == d:
        vecs = [PlanarVector.unlift(row) for row in basis]
        if d == 1:
            return Lattice1(generator=vecs[0])
        return Lattice2(basis=(vecs[0], vecs[1]))
    if d == 1:
        g0 = gens[0]
        if not g0.x.is_zero():
            direction = PlanarVector(RQ_ONE, g0.y / g0.x)
        else:
            direction = PlanarVector(RQ_ZERO, RQ_ONE)
        return LineDense(direction=direction)
    # d == 2 with extra abstract rank: compute the dual group D
    lifted = [PlanarVector.unlift(row) for row in basis]
    a_rows = [[w.x, w.y] for w in lifted]  # t x 2 over Q(sqrt3)
    left_kernel = _rq_nullspace([[a_rows[i][j] for i in range(t)] for j in range(2)])
    constraints: List[List[Fraction]] = []
    for c in left_kernel:
        constraints.append([x.p for x in c])
        constraints.append([x.q for x in c])
    int_rows, _ = clear_denominators(constraints) if constraints else ([], 1)
    int_rows = [r for r in int_rows if any(r)]
    if int_rows:
        m_basis = integer_kernel(int_rows)
    else:
        m_basis = [[1 if i == j else 0 for j in range(t)] for i in range(t)]
    m_basis = [row for row in m_basis if any(row)]
    if not m_basis:
        return PlaneGroup()
    cols = [[a_rows[i][0] for i in range(t)], [a_rows[i][1] for i in range(t)]]
    duals: List[PlanarVector] = []
    for k in m_basis:
        target = [RealQuadratic(x, 0) for x in k]
        phi = _rq_solve(cols, target)
        if phi is None:
            raise AssertionError("dual system inconsistent")
        duals.append(PlanarVector(phi[0], phi[1]))
    dual_basis = lattice_basis_from_rational_rows([list(p.lift()) for p in duals])
    rank_d = _rq_rank([[p.x, p.y] for p in duals])
    if len(dual_basis) != rank_d:
        raise AssertionError("dual group of a closed subgroup must be discrete")
    if rank_d == 0:
        return PlaneGroup()
    if rank_d == 2:
        raise AssertionError("rank-2 dual with dense directions is impossible")
    g = PlanarVector.unlift(dual_basis[0])
    norm = g.dot(g)
    transversal = PlanarVector(g.x / norm, g.y / norm)
    direction = PlanarVector(-g.y, g.x)
    lead = direction.x if not direction.x.is_zero() else direction.y
    if lead.sign() < 0:
        direction = PlanarVector(-direction.x, -direction.y)
    return LineLattice(direction=direction, transversal=transversal, dual=g)


def _classify_additive_heuristic(values: List[complex]) -> AdditiveClosure:
    """Numeric best effort for generators without exact coordinates.

    Rank-1 case: rational-dependence test on length ratios (denominator
    cap 10^4, residual 1e-9).  Rank-2 case: incremental basis reduction;
    spillover to a third independent short vector marks the group as
    non-discrete, and a grid-fill statistic separates Plane from the
    line-shaped closures.
    """
    vals = [v for v in values if abs(v) > 1e-13]
    ev: Dict[str, object] = {"path": "heuristic"}
    if not vals:
        return ZeroGroup(exact=False, evidence=ev)
    best = max(vals, key=abs)
    dim = 1
    for v in vals:
        cross = abs(v.real * best.imag - v.imag * best.real)
        if cross > 1e-10 * (abs(v) + abs(best)) ** 2:
            dim = 2
            break
    if dim == 1:
        u = best / abs(best)
        lengths = [v.real * u.real + v.imag * u.imag for v in vals]
        ratios = []
        rational = True
        for c in lengths:
            r = c / lengths[0]
            fr = Fraction(r).limit_denominator(10**4)
            if abs(float(fr) - r) > 1e-9 * (1 + abs(r)):
                rational = False
                break
            ratios.append(fr)
        ev["ratio_test"] = "rational" if rational else "irrational"
        if rational:
            num_gcd = gcd(*(abs(f.numerator) for f in ratios)) if len(ratios) > 1 else abs(ratios[0].numerator)
            den_lcm = 1
            for f in ratios:
                den_lcm = den_lcm * f.denominator // gcd(den_lcm, f.denominator)
            g = lengths[0] * num_gcd / den_lcm
            return Lattice1(generator=_planar_float(g * u), exact=False, evidence=ev)
        return LineDense(direction=_planar_float(u), exact=False, evidence=ev)
    basis, discrete = _reduce_basis_2d(vals)
    ev["reduced_rank"] = len(basis)
    if discrete:
        if len(basis) == 1:
            return Lattice1(generator=_planar_float(basis[0]), exact=False, evidence=ev)
        return Lattice2(
            basis=(_planar_float(basis[0]), _planar_float(basis[1])),
            exact=False,
            evidence=ev,
        )
    sums = _bounded_combinations(vals, span=7)
    fill = _grid_fill(sums)
    ev["grid_fill"] = fill
    if fill >= 0.5:
        return PlaneGroup(exact=False, evidence=ev)
    # concentrate along the direction of the shortest accumulating element
    small = min((s for s in sums if abs(s) > 1e-12), key=abs)
    u = small / abs(small)
    perp = [s.imag * u.real - s.real * u.imag for s in sums]
    offsets = sorted({round(p, 7) for p in perp})
    nonzero = [o for o in offsets if abs(o) > 1e-7]
    if not nonzero:
        return LineDense(direction=_planar_float(u), exact=False, evidence=ev)
    step = min(abs(o) for o in nonzero)
    if all(abs(o / step - round(o / step)) < 1e-6 for o in nonzero):
        t = complex(-u.imag, u.real) * step
        return LineLattice(
            direction=_planar_float(u),
            transversal=_planar_float(t),
            dual=_planar_float(t / step**2),
            exact=False,
            evidence=ev,
        )
    return PlaneGroup(exact=False, evidence=ev)


def _reduce_basis_2d(vals: List[complex]) -> Tuple[List[complex], bool]:
    """Greedy integer reduction of plane vectors; (basis, still_discrete)."""
    tol = 1e-9
    basis: List[complex] = []
    for v in sorted(vals, key=abs):
        r = v
        for _ in range(60):
            changed = False
            if len(basis) == 2:
                b1, b2 = basis
                det = b1.real * b2.imag - b1.imag * b2.real
                if abs(det) > 1e-15:
                    s = (r.real * b2.imag - r.imag * b2.real) / det
                    t = (b1.real * r.imag - b1.imag * r.real) / det
                    if round(s) or round(t):
                        r -= round(s) * b1 + round(t) * b2
                        changed = True
            for b in basis:
                n = round((r.real * b.real + r.imag * b.imag) / abs(b) ** 2)
                if n:
                    r -= n * b
                    changed = True
            if not changed:
                break
        if abs(r) > tol * (1 + abs(v)):
            basis.append(r)
            basis.sort(key=abs)
            if len(basis) > 2:
                return basis, False
    return basis, True


def _planar_float(z: complex) -> PlanarVector:
    return PlanarVector(
        RealQuadratic(Fraction(z.real).limit_denominator(10**12), 0),
        RealQuadratic(Fraction(z.imag).limit_denominator(10**12), 0),
    )


def _bounded_combinations(vals: List[complex], span: int) -> List[complex]:
    sums = [0j]
    for v in vals[:4]:
        sums = [s + k * v for s in sums for k in range(-span, span + 1)]
        if len(sums) > 60000:
            sums = sums[:60000]
    return sums


def _grid_fill(sums: List[complex], half: float = 3.0, res: int = 24) -> float:
    cells = set()
    for s in sums:
        if abs(s.real) <= half and abs(s.imag) <= half:
            cells.add(
                (int((s.real + half) / (2 * half) * res), int((s.imag + half) / (2 * half) * res))
            )
    return len(cells) / res**2


# ---------------------------------------------------------------------------
# multiplicative closures


@dataclass(frozen=True)
class MultClosure:
    shape: str
    exact: bool
    includes_zero: bool
    evidence: Optional[dict] = None

    def contains(self, w, eps: float = 1e-9) -> bool:
        raise NotImplementedError

    def distance(self, w: complex) -> float:
        raise NotImplementedError

    def sample(self, rng, count: int) -> List[complex]:
        raise NotImplementedError

    def is_whole_plane(self) -> Trilean:
        return Trilean.NO if self.exact else Trilean.UNKNOWN

    def to_report(self) -> dict:
        out = {
            "shape": self.shape,
            "exact": self.exact,
            "includes_zero": self.includes_zero,
        }
        if self.evidence:
            out["evidence"] = self.evidence
        return out


def _exact_polar(w) -> Optional[Tuple[int, RealQuadratic]]:
    if isinstance(w, Scalar):
        if not w.is_exact:
            return None
        w = w.exact_value
    if isinstance(w, CycloScalar):
        return w.polar_pi6()
    return None


@dataclass(frozen=True)
class FiniteCyclic(MultClosure):
    order: int = 1
    generator_log: int = 0  # generator is zeta^generator_log
    shape: str = "FiniteCyclic"
    exact: bool = True
    includes_zero: bool = False

    def elements(self) -> List[complex]:
        from .exact_algebra import ZETA_POWERS

        return [
            ZETA_POWERS[(self.generator_log * j) % 12].to_complex()
            for j in range(self.order)
        ]

    def contains(self, w, eps: float = 1e-9) -> bool:
        if isinstance(w, (Scalar, CycloScalar)):
            ww = w.exact_value if isinstance(w, Scalar) and w.is_exact else w
            if isinstance(ww, CycloScalar):
                k = ww.root_of_unity_log()
                return k is not None and k % gcd(self.generator_log or 12, 12) == 0
        return self.distance(_as_complex(w)) <= eps

    def distance(self, w: complex) -> float:
        return min(abs(w - e) for e in self.elements())

    def sample(self, rng, count: int) -> List[complex]:
        e = self.elements()
        return e[: max(1, min(count, len(e)))]

    def to_report(self) -> dict:
        out = super().to_report()
        out["order"] = self.order
        out["generator"] = f"zeta12^{self.generator_log}"
        return out


@dataclass(frozen=True)
class RaysDiscrete(MultClosure):
    """Discrete spiral group: elements r^(m) * zeta^(c) for (m, c) in the
    row span of `hnf_rows` (a 2x2 HNF over Z x Z/12), r = modulus_base."""

    modulus_base: float = 1.0
    modulus_base_sq: Fraction = Fraction(1)
    angle_order: int = 1
    hnf_rows: Tuple[Tuple[int, int], ...] = ()
    prime_exps: Tuple[Tuple[int, int], ...] = ()  # base of the modulus lattice
    shape: str = "RaysDiscrete"
    exact: bool = True
    includes_zero: bool = True

    def _member_exact(self, w: CycloScalar) -> bool:
        if w.is_zero():
            return self.includes_zero
        polar = w.polar_pi6()
        if polar is None:
            return False
        c, rho = polar
        rho_sq = rho * rho
        if not rho_sq.is_rational():
            return False
        vec = _exponent_vector(rho_sq.p, [p for p, _ in self.prime_exps])
        if vec is None:
            return False
        base = {p: e for p, e in self.prime_exps}
        m = None
        for p, e in vec.items():
            b = base.get(p, 0)
            if b == 0:
                if e != 0:
                    return False
                continue
            if e % b != 0:
                return False
            q = e // b
            if m is None:
                m = q
            elif m != q:
                return False
        for p, b in base.items():
            if b != 0 and vec.get(p, 0) == 0 and m not in (None, 0):
                return False
        if m is None:
            m = 0
        (m1, c1), (_, g0) = self.hnf_rows
        if m % m1 != 0:
            return False
        n1 = m // m1
        rem = (c - n1 * c1) % 12
        return g0 != 0 and rem % g0 == 0

    def contains(self, w, eps: float = 1e-9) -> bool:
        if isinstance(w, Scalar) and w.is_exact:
            return self._member_exact(w.exact_value)
        if isinstance(w, CycloScalar):
            return self._member_exact(w)
        return self.distance(_as_complex(w)) <= eps

    def distance(self, w: complex) -> float:
        r = abs(w)
        if r < 1e-300:
            return 0.0 if self.includes_zero else math.inf
        best = abs(w) if self.includes_zero else math.inf
        (m1, c1), (_, g0) = self.hnf_rows
        logr = math.log(r) / math.log(self.modulus_base) if self.modulus_base != 1 else 0.0
        n1c = logr / m1
        for n1 in {math.floor(n1c), math.ceil(n1c)}:
            mod = self.modulus_base ** (m1 * n1)
            for j in range(12 // g0 if g0 else 1):
                ang = ((c1 * n1 + g0 * j) % 12) * math.pi / 6
                best = min(best, abs(w - cmath.rect(mod, ang)))
        return best

    def sample(self, rng, count: int) -> List[complex]:
        out = []
        (m1, c1), (_, g0) = self.hnf_rows
        steps = 12 // g0 if g0 else 1
        for _ in range(count):
            n1 = rng.randint(-4, 4)
            j = rng.randint(0, steps - 1)
            mod = self.modulus_base ** (m1 * n1)
            ang = ((c1 * n1 + g0 * j) % 12) * math.pi / 6
            out.append(cmath.rect(mod, ang))
        return out

    def to_report(self) -> dict:
        out = super().to_report()
        out["angle_order"] = self.angle_order
        out["modulus_ratio"] = self.modulus_base
        out["coupling_hnf"] = [list(r) for r in self.hnf_rows]
        return out


@dataclass(frozen=True)
class RaysDense(MultClosure):
    """Union of full rays at the angle subgroup, each dense in modulus."""

    angle_order: int = 1
    angle_step: int = 0  # rays at angles (angle_step * j) * pi/6
    shape: str = "RaysDense"
    exact: bool = True
    includes_zero: bool = True

    def contains(self, w, eps: float = 1e-9) -> bool:
        if isinstance(w, Scalar) and w.is_exact:
            ww = w.exact_value
            if ww.is_zero():
                return True
            polar = ww.polar_pi6()
            if polar is None:
                return False
            c, _ = polar
            step = self.angle_step or 12
            return c % gcd(step, 12) == 0
        return self.distance(_as_complex(w)) <= eps

    def distance(self, w: complex) -> float:
        best = abs(w)
        step = self.angle_step or 12
        g = gcd(step, 12)
        for j in range(0, 12, g):
            theta = j * math.pi / 6
            u = cmath.rect(1.0, theta)
            t = w.real * u.real + w.imag * u.imag
            if t > 0:
                best = min(best, abs(w - t * u))
        return best

    def sample(self, rng, count: int) -> List[complex]:
        out = []
        g = gcd(self.angle_step or 12, 12)
        for _ in range(count):
            j = rng.randrange(0, 12, g)
            mod = math.exp(rng.random() * 4 - 2)
            out.append(cmath.rect(mod, j * math.pi / 6))
        return out

    def to_report(self) -> dict:
        out = super().to_report()
        out["angle_order"] = self.angle_order
        return out


@dataclass(frozen=True)
class CircleDense(MultClosure):
    shape: str = "CircleDense"
    exact: bool = False
    includes_zero: bool = False

    def contains(self, w, eps: float = 1e-9) -> bool:
        return abs(abs(_as_complex(w)) - 1.0) <= eps

    def distance(self, w: complex) -> float:
        return abs(abs(w) - 1.0)

    def sample(self, rng, count: int) -> List[complex]:
        return [cmath.rect(1.0, rng.random() * math.tau) for _ in range(count)]


@dataclass(frozen=True)
class PlaneDense(MultClosure):
    shape: str = "PlaneDense"
    exact: bool = False
    includes_zero: bool = True

    def contains(self, w, eps: float = 1e-9) -> bool:
        return True

    def distance(self, w: complex) -> float:
        return 0.0

    def is_whole_plane(self) -> Trilean:
        return Trilean.YES if self.exact else Trilean.UNKNOWN

    def sample(self, rng, count: int) -> List[complex]:
        return [complex(rng.random() * 4 - 2, rng.random() * 4 - 2) for _ in range(count)]


@dataclass(frozen=True)
class HeuristicMult(MultClosure):
    """Evidence-based description; `dense_angles` records that sampled
    arguments equidistribute, not that the planar closure is all of C."""

    samples: Tuple[complex, ...] = ()
    shape: str = "Unknown"
    exact: bool = False
    includes_zero: bool = False

    def contains(self, w, eps: float = 1e-9) -> bool:
        return self.distance(_as_complex(w)) <= eps

    def distance(self, w: complex) -> float:
        best = abs(w) if self.includes_zero else math.inf
        for s in self.samples:
            best = min(best, abs(w - s))
        return best

    def sample(self, rng, count: int) -> List[complex]:
        pool = list(self.samples)
        rng.shuffle(pool)
        return pool[:count]

    def is_whole_plane(self) -> Trilean:
        if self.shape == "HeuristicDiscrete":
            return Trilean.NO
        return Trilean.UNKNOWN


def _factorize(n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    n = abs(n)
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _exponent_vector(q: Fraction, primes: Sequence[int]) -> Optional[Dict[int, int]]:
    """Exponents of q over the given primes; None if q uses other primes."""
    num = _factorize(q.numerator)
    den = _factorize(q.denominator)
    out: Dict[int, int] = {}
    for p, e in num.items():
        out[p] = out.get(p, 0) + e
    for p, e in den.items():
        out[p] = out.get(p, 0) - e
    for p in out:
        if out[p] != 0 and p not in primes:
            return None
    return out


def classify_multiplicative_closure(
    ratios: Sequence[Scalar], word_cap: int = 14
) -> MultClosure:
    """Closure in C of the multiplicative group generated by the ratios.

    Exact when every ratio is exact with argument a multiple of pi/6 and
    rational squared modulus; otherwise a sampled heuristic with evidence.
    """
    polar: List[Tuple[int, Fraction]] = []
    exact_ok = True
    for r in ratios:
        p = _exact_polar(r)
        if p is None:
            exact_ok = False
            break
        k, rho = p
        rho_sq = rho * rho
        if not rho_sq.is_rational():
            exact_ok = False
            break
        polar.append((k, rho_sq.p))
    if not exact_ok:
        return _classify_mult_heuristic(ratios, word_cap)
    polar = [(k, q) for k, q in polar if not (k == 0 and q == 1)]
    if not polar:
        return FiniteCyclic(order=1, generator_log=0)
    primes = sorted(
        {p for _, q in polar for p in (_factorize(q.numerator) | _factorize(q.denominator))}
    )
    exps = []
    for _, q in polar:
        vec = _exponent_vector(q, primes)
        exps.append([vec.get(p, 0) for p in primes])
    angle_g = gcd(12, *(k for k, _ in polar)) if polar else 12
    angle_order = 12 // angle_g if angle_g else 1
    mod_basis = hnf([e for e in exps if any(e)]) if primes else []
    mod_rank = len(mod_basis)
    if mod_rank == 0:
        return FiniteCyclic(order=angle_order, generator_log=angle_g % 12)
    if mod_rank >= 2:
        return RaysDense(angle_order=angle_order, angle_step=angle_g % 12)
    base_vec = mod_basis[0]
    coeffs = []
    for e in exps:
        m = 0
        for x, b in zip(e, base_vec):
            if b != 0:
                m = x // b
                break
        if [m * b for b in base_vec] != e:
            raise AssertionError("rank-1 modulus lattice decomposition failed")
        coeffs.append(m)
    rows = [[m, k] for m, (k, _) in zip(coeffs, polar)] + [[0, 12]]
    h = hnf(rows)
    if len(h) == 1:
        h = [h[0], [0, 12]]
    (m1, c1), (z0, g0) = h[0], h[1]
    if z0 != 0:
        raise AssertionError("coupling HNF must be upper triangular")
    base_sq = Fraction(1)
    for p, e in zip(primes, base_vec):
        base_sq *= Fraction(p) ** e
    modulus_base = math.sqrt(float(base_sq))
    return RaysDiscrete(
        modulus_base=modulus_base,
        modulus_base_sq=base_sq,
        angle_order=angle_order,
        hnf_rows=((m1, c1 % 12), (0, g0 % 12 if g0 % 12 else 12)),
        prime_exps=tuple(zip(primes, base_vec)),
    )


def _classify_mult_heuristic(ratios: Sequence, word_cap: int) -> MultClosure:
    vals = [_as_complex(r) for r in ratios]
    vals = [v for v in vals if abs(v - 1.0) > 1e-15]
    if not vals:
        return FiniteCyclic(order=1, generator_log=0)
    samples = {1.0 + 0j}
    frontier = [1.0 + 0j]
    level = 0
    # deep levels are cheap for few generators and sharpen the angle
    # statistics; the sample cap bounds the many-generator blowup
    while frontier and level < max(word_cap, 200) and len(samples) < 40000:
        level += 1
        nxt = []
        for s in frontier:
            for v in vals:
                for w in (s * v, s / v):
                    key = complex(round(w.real, 12), round(w.imag, 12))
                    if key not in samples and len(samples) < 40000:
                        samples.add(key)
                        nxt.append(w)
        frontier = nxt
    pts = sorted(samples, key=lambda z: (z.real, z.imag))
    angles = sorted((cmath.phase(z) % math.tau) / math.tau for z in pts)
    n = len(angles)
    disc = max(
        max(abs((i + 1) / n - a), abs(a - i / n)) for i, a in enumerate(angles)
    )
    logmods = sorted(math.log(abs(z)) for z in pts if abs(z) > 0)
    mod_spread = logmods[-1] - logmods[0] if logmods else 0.0
    includes_zero = any(abs(abs(v) - 1.0) > 1e-9 for v in vals)
    ev = {
        "path": "heuristic",
        "samples": len(pts),
        "angle_discrepancy": round(disc, 6),
        "log_modulus_spread": round(mod_spread, 6),
    }
    if disc < 0.05:
        return HeuristicMult(
            shape="HeuristicDense",
            includes_zero=includes_zero,
            evidence=ev,
            samples=tuple(pts),
        )
    # angles concentrate: check gap stability for discreteness evidence
    gaps = []
    for frac in (0.5, 1.0):
        sub = pts[: max(2, int(len(pts) * frac))]
        best = math.inf
        for i, a in enumerate(sub[: min(len(sub), 400)]):
            for b in sub[i + 1 : min(len(sub), 400)]:
                best = min(best, abs(a - b))
        gaps.append(best)
    ev["min_gap_trend"] = [round(g, 9) for g in gaps]
    if gaps[-1] > 1e-6 and abs(gaps[0] - gaps[-1]) < 1e-9:
        return HeuristicMult(
            shape="HeuristicDiscrete",
            includes_zero=includes_zero,
            evidence=ev,
            samples=tuple(pts),
        )
    return HeuristicMult(
        shape="Unknown", includes_zero=includes_zero, evidence=ev, samples=tuple(pts)
    )
