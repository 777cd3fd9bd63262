"""Orbit-closure classification for groups of affine homotheties of C^n."""

from .exact_algebra import (
    ApproxScalar,
    CycloScalar,
    RealQuadratic,
    Scalar,
    Trilean,
    UncertainZero,
    UndecidableAtPrecision,
    format_scalar,
    parse_scalar,
)
from .affine_maps import Homothety
from .closed_subgroups import (
    AdditiveClosure,
    MultClosure,
    classify_additive_closure,
    classify_multiplicative_closure,
)
from .group_profile import (
    AbelianGroup,
    AffineSubspace,
    CrystalVerdict,
    GroupProfile,
    GroupSpec,
    WordCapExceeded,
    compute_EG,
    compute_profile,
    crystallographic_test,
    g1_lattice_bounds,
)
from .closure_engine import (
    Affine,
    ClosureDesc,
    LambdaCone,
    RotationCoset,
    RotationPairVerdict,
    Unsupported,
    Verdicts,
    WholeSpace,
    global_verdicts,
    orbit_closure,
    rotation_pair_classify,
)
from .orbit_oracle import (
    BudgetExceeded,
    EvidenceReport,
    OrbitSample,
    enumerate,
    harvest_translations,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "AdditiveClosure",
    "Affine",
    "AffineSubspace",
    "ApproxScalar",
    "BudgetExceeded",
    "ClosureDesc",
    "CrystalVerdict",
    "CycloScalar",
    "EvidenceReport",
    "GroupProfile",
    "GroupSpec",
    "Homothety",
    "LambdaCone",
    "MultClosure",
    "OrbitSample",
    "RealQuadratic",
    "RotationCoset",
    "RotationPairVerdict",
    "Scalar",
    "Trilean",
    "UncertainZero",
    "UndecidableAtPrecision",
    "Unsupported",
    "Verdicts",
    "WholeSpace",
    "WordCapExceeded",
    "classify_additive_closure",
    "classify_multiplicative_closure",
    "compute_EG",
    "compute_profile",
    "crystallographic_test",
    "enumerate",
    "format_scalar",
    "g1_lattice_bounds",
    "global_verdicts",
    "harvest_translations",
    "orbit_closure",
    "parse_scalar",
    "rotation_pair_classify",
    "verify",
]
