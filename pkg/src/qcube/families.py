"""Structured point-set generators, their closed-form distributions, and the
binomial identities those distributions imply.

Families: a full sub-face, the binary even-weight set, seeded uniform random
subsets, and sets loaded from a file. The closed forms are verified against
the enumeration path in the test suite; any divergence is resolved in favour
of enumeration.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Optional

from .core import CubeError, CubeParams, Face, Point, PointSet, binom, parse_pointset
from .faces import FaceDistribution
from .identities import IdentityReport

FAMILY_KINDS = ("face", "even_weight", "random", "file")


@dataclass(frozen=True)
class FamilySpec:
    """Which family to generate plus its kind-specific parameters.

    face: free_positions (and optionally fixed_values, default all zero);
    even_weight: nothing extra (q must be 2); random: m and seed; file: path.
    """

    kind: str
    free_positions: Optional[tuple[int, ...]] = None
    fixed_values: Optional[tuple[tuple[int, int], ...]] = None
    m: Optional[int] = None
    seed: Optional[int] = None
    path: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise CubeError(f"unknown family kind {self.kind!r}; expected one of {FAMILY_KINDS}")


def face_spec(
    params: CubeParams,
    nu: Optional[int] = None,
    free_positions: Optional[tuple[int, ...]] = None,
    fixed_values: Optional[tuple[tuple[int, int], ...]] = None,
) -> FamilySpec:
    """Build a face FamilySpec, defaulting the free positions to 0..nu-1 and
    the fixed values to zero."""
    if free_positions is None:
        if nu is None:
            raise CubeError("face family needs nu or an explicit free-position set")
        if not 0 <= nu <= params.n:
            raise CubeError(f"nu must be in [0, {params.n}], got {nu}")
        free_positions = tuple(range(nu))
    else:
        free_positions = tuple(sorted(int(i) for i in free_positions))
        if nu is not None and nu != len(free_positions):
            raise CubeError(
                f"nu={nu} disagrees with {len(free_positions)} free positions"
            )
    if fixed_values is None:
        free = set(free_positions)
        fixed_values = tuple((i, 0) for i in range(params.n) if i not in free)
    return FamilySpec("face", free_positions=free_positions, fixed_values=tuple(fixed_values))


def gen_face_subset(params: CubeParams, spec: FamilySpec) -> PointSet:
    """All points of one face, as a point set; its rank equals the dimension."""
    if spec.kind != "face":
        raise CubeError(f"expected a face spec, got kind {spec.kind!r}")
    if spec.free_positions is None:
        raise CubeError("face spec is missing its free positions")
    filled = face_spec(params, None, spec.free_positions, spec.fixed_values)
    face = Face(params, frozenset(filled.free_positions), filled.fixed_values)
    return PointSet(params, tuple(face.points()))


def gen_even_weight(n: int) -> PointSet:
    """All binary vectors of even coordinate sum; 2**(n-1) points for n >= 1,
    and the single empty vector for n = 0."""
    if n < 0:
        raise CubeError(f"dimension n must be >= 0, got {n}")
    params = CubeParams(2, n)
    pts = tuple(
        Point(params, bits) for bits in product((0, 1), repeat=n) if sum(bits) % 2 == 0
    )
    return PointSet(params, pts)


def _decode(index: int, params: CubeParams) -> tuple[int, ...]:
    digits = []
    for _ in range(params.n):
        index, r = divmod(index, params.q)
        digits.append(r)
    return tuple(reversed(digits))


def gen_random_subset(params: CubeParams, m: int, seed: int) -> PointSet:
    """Uniform random m-subset of the cube, without replacement, seeded."""
    if not 1 <= m <= params.volume:
        raise CubeError(f"m must be in [1, {params.volume}], got {m}")
    rng = random.Random(seed)
    picks = rng.sample(range(params.volume), m)
    return PointSet(params, tuple(Point(params, _decode(i, params)) for i in picks))


def realize_family(params: CubeParams, spec: FamilySpec) -> PointSet:
    """Materialize a FamilySpec into a point set."""
    if spec.kind == "face":
        return gen_face_subset(params, spec)
    if spec.kind == "even_weight":
        if params.q != 2:
            raise CubeError("the even-weight family requires q = 2")
        return gen_even_weight(params.n)
    if spec.kind == "random":
        if spec.m is None:
            raise CubeError("random family needs m")
        return gen_random_subset(params, spec.m, spec.seed or 0)
    if spec.kind == "file":
        if spec.path is None:
            raise CubeError("file family needs a path")
        text = Path(spec.path).read_text()
        return parse_pointset(text, params)[0]
    raise CubeError(f"unknown family kind {spec.kind!r}")


def face_distribution_closed(params: CubeParams, nu: int, k: int) -> FaceDistribution:
    """Distribution for a nu-dimensional face subset, in closed form.

    Intersection sizes are powers of q: for i = 0..nu the level e = q**i is hit
    by q**(nu-i) * C(nu, i) * C(n-nu, k-i) faces (i free positions inside the
    face, the rest of the face's span fixed), and each such coefficient feeds
    q**(n-nu-k+i) - 1 empty parallel fibers into e = 0. Terms whose binomial
    vanishes are skipped, which also keeps every exponent nonnegative.
    """
    n, q = params.n, params.q
    if not 0 <= nu <= n:
        raise CubeError(f"nu must be in [0, {n}], got {nu}")
    if not 0 <= k <= n:
        raise CubeError(f"k must be in [0, {n}], got {k}")
    counts: dict[int, int] = {}
    empty = 0
    for i in range(nu + 1):
        coeff = q ** (nu - i) * binom(nu, i) * binom(n - nu, k - i)
        if coeff == 0:
            continue
        counts[q**i] = coeff
        empty += coeff * (q ** (n - nu - k + i) - 1)
    counts[0] = empty
    return FaceDistribution.checked(params, k, counts)


def evenweight_distribution_closed(n: int, k: int) -> FaceDistribution:
    """Distribution for the even-weight set: every k-face with k >= 1 meets it
    in exactly 2**(k-1) points, so a single level carries all C(n,k)*2**(n-k)
    faces. The k = 0 slice is not covered by this form and is rejected."""
    if n < 1:
        raise CubeError(f"even-weight closed form needs n >= 1, got {n}")
    if not 1 <= k <= n:
        raise CubeError(f"k must be in [1, {n}] for the closed form, got {k}")
    params = CubeParams(2, n)
    counts = {2 ** (k - 1): 2 ** (n - k) * binom(n, k), 0: 0}
    return FaceDistribution.checked(params, k, counts)


def check_vandermonde(params: CubeParams, nu: int, k: int) -> IdentityReport:
    """Splitting C(n, k) by how many of the k choices land in a fixed
    nu-subset: sum over i of C(nu, i) * C(n-nu, k-i) = C(n, k)."""
    n = params.n
    if not 0 <= nu <= n:
        raise CubeError(f"nu must be in [0, {n}], got {nu}")
    lhs_terms = tuple(
        (f"i={i}", binom(nu, i) * binom(n - nu, k - i)) for i in range(nu + 1)
    )
    lhs = sum(v for _, v in lhs_terms)
    rhs = binom(n, k)
    rep_params = {"q": params.q, "n": n, "nu": nu, "k": k}
    return IdentityReport.of(
        "vandermonde", rep_params, lhs, rhs, lhs_terms, (("binom(n,k)", rhs),), proven=True
    )


def check_chu_vandermonde_generalized(params: CubeParams, nu: int, k: int) -> IdentityReport:
    """q-weighted counterpart: sum over i >= 1 of (q**i - 1)*C(nu,i)*C(n-nu,k-i)
    equals sum over i >= 1 of (q-1)**i * C(nu,i) * C(n-i,k-i).

    Both sides count, in two ways, the nonempty-overlap excess left after the
    plain splitting identity; q = 2 collapses the right side's weights to 1.
    """
    n, q = params.n, params.q
    if not 1 <= nu <= n:
        raise CubeError(f"nu must be in [1, {n}], got {nu}")
    lhs_terms = tuple(
        (f"i={i}", (q**i - 1) * binom(nu, i) * binom(n - nu, k - i))
        for i in range(1, nu + 1)
    )
    rhs_terms = tuple(
        (f"i={i}", (q - 1) ** i * binom(nu, i) * binom(n - i, k - i))
        for i in range(1, nu + 1)
    )
    lhs = sum(v for _, v in lhs_terms)
    rhs = sum(v for _, v in rhs_terms)
    rep_params = {"q": q, "n": n, "nu": nu, "k": k}
    return IdentityReport.of(
        "chu_vandermonde_generalized", rep_params, lhs, rhs, lhs_terms, rhs_terms, proven=True
    )


EVENWEIGHT_FORMS = ("printed", "corrected")


def check_evenweight_identity(n: int, k: int, form: str = "corrected") -> IdentityReport:
    """Even-weight pair identity in two variants sharing one right side,
    sum over i >= 1 of C(n, 2i) * C(n-2i, k-2i).

    form="corrected" puts (2**(k-1) - 1) * C(n, k) on the left and verifies;
    form="printed" keeps a spurious extra factor 2**(n-1) on the left and is
    retained, failures intact, as a documented erratum regression.
    """
    if form not in EVENWEIGHT_FORMS:
        raise CubeError(f"form must be one of {EVENWEIGHT_FORMS}, got {form!r}")
    if n < 1:
        raise CubeError(f"n must be >= 1, got {n}")
    if not 1 <= k <= n:
        raise CubeError(f"k must be in [1, {n}], got {k}")
    rhs_terms = tuple(
        (f"i={i}", binom(n, 2 * i) * binom(n - 2 * i, k - 2 * i))
        for i in range(1, n // 2 + 1)
    )
    rhs = sum(v for _, v in rhs_terms)
    base = (2 ** (k - 1) - 1) * binom(n, k)
    if form == "printed":
        lhs = base * 2 ** (n - 1)
        label = f"(2^{k - 1}-1)*2^{n - 1}*binom(n,k)"
    else:
        lhs = base
        label = f"(2^{k - 1}-1)*binom(n,k)"
    rep_params = {"q": 2, "n": n, "k": k}
    return IdentityReport.of(
        f"evenweight_{form}",
        rep_params,
        lhs,
        rhs,
        ((label, lhs),),
        rhs_terms,
        proven=(form == "corrected"),
    )
