"""Exact combinatorics over q-valued cubes: subset ranks, face-intersection
distributions, and two-sided verification of the counting identities that
relate them. Integer arithmetic throughout; no floating point."""

from .core import (
    DEFAULT_GUARD,
    ConsistencyError,
    CubeError,
    CubeParams,
    Face,
    ParseError,
    Point,
    PointSet,
    SizeGuardError,
    binom,
    hamming,
    parse_pointset,
    serialize_pointset,
)
from .faces import (
    FaceDistribution,
    distribution,
    distribution_bruteforce,
    enumerate_faces,
    face_contains,
    faces_containing_bruteforce,
    faces_containing_count,
    total_faces,
)
from .families import (
    FamilySpec,
    check_chu_vandermonde_generalized,
    check_evenweight_identity,
    check_vandermonde,
    evenweight_distribution_closed,
    face_distribution_closed,
    face_spec,
    gen_even_weight,
    gen_face_subset,
    gen_random_subset,
    realize_family,
)
from .identities import (
    IdentityReport,
    corollary_s1,
    corollary_s2,
    corollary_s3,
    intersection_cap,
    main_lhs,
    main_rhs,
    verify_main,
)
from .rank import (
    DistanceProfile,
    RankBounds,
    column_distance_sum,
    distance_sum,
    isometric,
    rank,
    rank_bounds,
    rank_closed_small,
    random_isometry_image,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_GUARD",
    "ConsistencyError",
    "CubeError",
    "CubeParams",
    "DistanceProfile",
    "Face",
    "FaceDistribution",
    "FamilySpec",
    "IdentityReport",
    "ParseError",
    "Point",
    "PointSet",
    "RankBounds",
    "SizeGuardError",
    "binom",
    "check_chu_vandermonde_generalized",
    "check_evenweight_identity",
    "check_vandermonde",
    "column_distance_sum",
    "corollary_s1",
    "corollary_s2",
    "corollary_s3",
    "distance_sum",
    "distribution",
    "distribution_bruteforce",
    "enumerate_faces",
    "evenweight_distribution_closed",
    "face_contains",
    "face_distribution_closed",
    "face_spec",
    "faces_containing_bruteforce",
    "faces_containing_count",
    "gen_even_weight",
    "gen_face_subset",
    "gen_random_subset",
    "hamming",
    "intersection_cap",
    "isometric",
    "main_lhs",
    "main_rhs",
    "parse_pointset",
    "rank",
    "rank_bounds",
    "rank_closed_small",
    "random_isometry_image",
    "realize_family",
    "serialize_pointset",
    "total_faces",
    "verify_main",
]
