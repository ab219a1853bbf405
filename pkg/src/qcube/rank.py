"""Subset rank, pairwise-distance metrics, rank bounds, and isometry checks.

The rank of a nonempty point set is the number of coordinate positions on
which its points do not all agree; equivalently, the dimension of the smallest
face containing the whole set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .core import ConsistencyError, CubeError, Point, PointSet, hamming


@dataclass(frozen=True)
class DistanceProfile:
    """Pairwise Hamming distances keyed by 0-based index pairs (i, j), i < j,
    over the canonical point order, plus their total."""

    pairwise: dict[tuple[int, int], int]
    total: int


@dataclass(frozen=True)
class RankBounds:
    """Exact rational bounds on the rank; exact_rank is filled when known."""

    lower: Fraction
    upper: Fraction
    exact_rank: Optional[int] = None


def rank_rows(rows: Sequence[tuple[int, ...]]) -> int:
    """Rank of raw coordinate rows: count of non-constant columns."""
    first = rows[0]
    return sum(1 for j in range(len(first)) if any(row[j] != first[j] for row in rows))


def rank(A: PointSet) -> int:
    """Number of coordinate positions where the points of A do not all agree."""
    if len(A) == 0:
        raise CubeError("rank of the empty set is undefined")
    return rank_rows(A.coord_rows())


def _pack_bits(row: tuple[int, ...]) -> int:
    value = 0
    for c in row:
        value = (value << 1) | c
    return value


def distance_sum(A: PointSet) -> DistanceProfile:
    """All pairwise distances of A together with their sum.

    Binary cubes go through a packed-int XOR path; the result is identical to
    positionwise comparison.
    """
    if len(A) == 0:
        raise CubeError("distance profile of the empty set is undefined")
    rows = A.coord_rows()
    m = len(rows)
    pairwise: dict[tuple[int, int], int] = {}
    if A.params.q == 2:
        packed = [_pack_bits(r) for r in rows]
        for i, j in combinations(range(m), 2):
            pairwise[(i, j)] = (packed[i] ^ packed[j]).bit_count()
    else:
        for i, j in combinations(range(m), 2):
            ri, rj = rows[i], rows[j]
            pairwise[(i, j)] = sum(x != y for x, y in zip(ri, rj))
    return DistanceProfile(pairwise, sum(pairwise.values()))


def _require_binary(A: PointSet, what: str) -> None:
    if A.params.q != 2:
        raise CubeError(f"{what} is defined for q = 2 only, got q = {A.params.q}")


def column_distance_sum(A: PointSet) -> int:
    """Columnwise crosscheck of the distance total for binary cubes.

    Each column with z zeros and (m - z) ones contributes z * (m - z) unordered
    differing pairs, and summing over columns double-counts nothing, so the
    result equals DistanceProfile.total.
    """
    _require_binary(A, "column_distance_sum")
    if len(A) == 0:
        raise CubeError("column distance sum of the empty set is undefined")
    rows = A.coord_rows()
    m = len(rows)
    total = 0
    for j in range(A.params.n):
        ones = sum(row[j] for row in rows)
        total += ones * (m - ones)
    return total


def rank_bounds(A: PointSet) -> RankBounds:
    """Exact rational rank bounds for binary point sets.

    With m = |A| and D the pairwise distance total: a singleton has rank 0;
    even m gives 4D/m^2 <= rank <= D/(m-1); odd m > 1 sharpens the lower bound
    to 4D/(m^2 - 1). For m <= 3 the two bounds coincide with the rank.
    exact_rank is always populated here.
    """
    _require_binary(A, "rank_bounds")
    m = len(A)
    if m == 0:
        raise CubeError("rank bounds of the empty set are undefined")
    exact = rank(A)
    if m == 1:
        return RankBounds(Fraction(0), Fraction(0), exact)
    d = distance_sum(A).total
    upper = Fraction(d, m - 1)
    if m % 2 == 0:
        lower = Fraction(4 * d, m * m)
    else:
        lower = Fraction(4 * d, m * m - 1)
    return RankBounds(lower, upper, exact)


def rank_closed_small(A: PointSet) -> Optional[int]:
    """Closed-form rank for binary sets of at most three points.

    |A| = 1 gives 0, |A| = 2 gives the pair distance, |A| = 3 gives half the
    distance total (always an integer in a binary cube: a column on which the
    triple disagrees contributes exactly 2). Returns None for |A| >= 4.
    """
    _require_binary(A, "rank_closed_small")
    m = len(A)
    if m == 0:
        raise CubeError("rank of the empty set is undefined")
    if m == 1:
        return 0
    if m == 2:
        return hamming(A.points[0], A.points[1])
    if m == 3:
        total = distance_sum(A).total
        if total % 2:
            raise ConsistencyError(
                f"odd pairwise distance total {total} for a binary triple"
            )
        return total // 2
    return None


def _distance_matrix(A: PointSet) -> list[list[int]]:
    rows = A.coord_rows()
    m = len(rows)
    mat = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            d = sum(x != y for x, y in zip(rows[i], rows[j]))
            mat[i][j] = mat[j][i] = d
    return mat


def isometric(A: PointSet, B: PointSet) -> Optional[dict[Point, Point]]:
    """Search for a distance-preserving bijection from A onto B.

    The two sets may live in different cubes (even different dimensions); only
    the internal distance structure is compared. Backtracking assignment with
    pruning on per-point sorted distance multisets; worst case is factorial in
    the set size. Returns the bijection as a dict, or None.
    """
    m = len(A)
    if m != len(B):
        return None
    if m == 0:
        return {}
    da = _distance_matrix(A)
    db = _distance_matrix(B)
    profiles_b = [tuple(sorted(db[j])) for j in range(m)]
    candidates = [
        [j for j in range(m) if profiles_b[j] == tuple(sorted(da[i]))] for i in range(m)
    ]
    assign = [-1] * m
    used = [False] * m

    def backtrack(i: int) -> bool:
        if i == m:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            if any(da[i][t] != db[j][assign[t]] for t in range(i)):
                continue
            assign[i] = j
            used[j] = True
            if backtrack(i + 1):
                return True
            used[j] = False
        assign[i] = -1
        return False

    if not backtrack(0):
        return None
    return {A.points[i]: B.points[assign[i]] for i in range(m)}


def random_isometry_image(A: PointSet, seed: int) -> PointSet:
    """Image of A under a seeded random isometry of its cube.

    The isometry is a uniform coordinate permutation composed with an
    independent uniform value permutation of {0, ..., q-1} at each coordinate.
    Deterministic for a fixed seed.
    """
    rng = random.Random(seed)
    n, q = A.params.n, A.params.q
    perm = rng.sample(range(n), n)
    tables = [rng.sample(range(q), q) for _ in range(n)]
    mapped = [
        Point(A.params, tuple(tables[i][p.coords[perm[i]]] for i in range(n)))
        for p in A
    ]
    return PointSet(A.params, tuple(mapped))
