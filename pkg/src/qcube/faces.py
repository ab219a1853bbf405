"""k-face enumeration and exact face-intersection distributions.

A k-face is fixed by choosing k free positions and a value for each remaining
position. For a point set A, the distribution at level k maps each e >= 0 to
the number of k-faces whose intersection with A has exactly e elements.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from dataclasses import dataclass
from itertools import combinations, product
from operator import itemgetter
from typing import Callable, Iterator, Mapping

from .core import (
    DEFAULT_GUARD,
    ConsistencyError,
    CubeError,
    CubeParams,
    Face,
    Point,
    PointSet,
    binom,
    check_guard,
)
from .rank import rank


@dataclass(frozen=True)
class FaceDistribution:
    """Counts of k-faces by intersection size e.

    counts stores every nonzero entry plus the e = 0 entry explicitly, so two
    distributions are equal iff they agree as dataclasses. Missing keys read
    as zero through indexing.
    """

    params: CubeParams
    k: int
    counts: dict[int, int]

    @classmethod
    def checked(cls, params: CubeParams, k: int, counts: Mapping[int, int]) -> "FaceDistribution":
        """Normalize (drop zero entries except e = 0) and verify conservation:
        the counts must add up to the total number of k-faces."""
        normalized = {e: c for e, c in counts.items() if c != 0 or e == 0}
        normalized.setdefault(0, 0)
        expected = total_faces(params, k)
        actual = sum(normalized.values())
        if actual != expected:
            raise ConsistencyError(
                f"face tally {actual} does not match the face count {expected} at k={k}"
            )
        return cls(params, k, normalized)

    def __getitem__(self, e: int) -> int:
        return self.counts.get(e, 0)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self.counts.items())

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def _check_k(params: CubeParams, k: int) -> None:
    if not 0 <= k <= params.n:
        raise CubeError(f"k must be in [0, {params.n}], got {k}")


def _require_nonempty(A: PointSet) -> None:
    if len(A) == 0:
        raise CubeError("operation requires a nonempty point set")


def total_faces(params: CubeParams, k: int) -> int:
    """Number of k-faces of the cube: binom(n, k) * q**(n - k)."""
    _check_k(params, k)
    return binom(params.n, k) * params.q ** (params.n - k)


def enumerate_faces(params: CubeParams, k: int) -> Iterator[Face]:
    """Yield every k-face exactly once.

    Deterministic order: free-position sets lexicographically, then fixed
    values lexicographically.
    """
    _check_k(params, k)
    n, q = params.n, params.q
    for free in combinations(range(n), k):
        free_set = set(free)
        fixed_positions = [i for i in range(n) if i not in free_set]
        for vals in product(range(q), repeat=n - k):
            yield Face(params, frozenset(free), tuple(zip(fixed_positions, vals)))


def face_contains(F: Face, p: Point) -> bool:
    """Whether the point matches every fixed coordinate of the face."""
    if F.params != p.params:
        raise CubeError("face and point live in different cubes")
    return all(p.coords[i] == v for i, v in F.fixed_values)


def faces_containing_count(A: PointSet, k: int) -> int:
    """Closed-form count of k-faces containing all of A: C(n - r, k - r) with
    r = rank(A). Zero whenever k < r."""
    _require_nonempty(A)
    _check_k(A.params, k)
    r = rank(A)
    return binom(A.params.n - r, k - r)


def _projector(positions: tuple[int, ...]) -> Callable[[tuple[int, ...]], tuple[int, ...]]:
    # itemgetter with one index returns a scalar, so normalize to tuples.
    if not positions:
        return lambda row: ()
    if len(positions) == 1:
        i = positions[0]
        return lambda row: (row[i],)
    return itemgetter(*positions)


def faces_containing_bruteforce(A: PointSet, k: int, guard: int = DEFAULT_GUARD) -> int:
    """Count k-faces containing all of A by scanning every face.

    Deliberately independent of the closed form: no ranks, just membership
    tests (with early exit), one fixed-value assignment at a time. Budget:
    |A| membership tests per face against the guard.
    """
    _require_nonempty(A)
    params = A.params
    _check_k(params, k)
    n, q = params.n, params.q
    nf = n - k
    check_guard(total_faces(params, k) * len(A), guard)
    rows = A.coord_rows()
    count = 0
    for fixed_positions in combinations(range(n), nf):
        proj = _projector(fixed_positions)
        projected = [proj(row) for row in rows]
        for vals in product(range(q), repeat=nf):
            if all(pv == vals for pv in projected):
                count += 1
    return count


@lru_cache(maxsize=1024)
def _distribution_grouped(A: PointSet, k: int, guard: int) -> FaceDistribution:
    params = A.params
    n, q = params.n, params.q
    nf = n - k
    check_guard(binom(n, k) * max(len(A), 1), guard)
    rows = A.coord_rows()
    faces_per_choice = q**nf
    counts: Counter[int] = Counter()
    empty = 0
    for fixed_positions in combinations(range(n), nf):
        proj = _projector(fixed_positions)
        groups = Counter(map(proj, rows))
        for size in groups.values():
            counts[size] += 1
        empty += faces_per_choice - len(groups)
    result = dict(counts)
    result[0] = empty
    return FaceDistribution.checked(params, k, result)


def distribution(A: PointSet, k: int, guard: int = DEFAULT_GUARD) -> FaceDistribution:
    """Exact distribution e -> number of k-faces meeting A in exactly e points.

    Faces are tallied one free-position choice at a time: within a choice, a
    face is the fiber of one value assignment on the fixed positions, so
    grouping the projections of A onto those positions yields every nonempty
    intersection size at once, and the remaining fibers are empty. This visits
    |A| projections per choice instead of |A| tests per face, which is what
    makes dense parameter sweeps tractable; the per-face scan survives as
    distribution_bruteforce for cross-checking.

    Results are cached per (A, k, guard); treat the returned counts as
    read-only.
    """
    _check_k(A.params, k)
    return _distribution_grouped(A, k, guard)


def distribution_bruteforce(A: PointSet, k: int, guard: int = DEFAULT_GUARD) -> FaceDistribution:
    """Oracle twin of distribution(): visit every k-face and count its overlap.

    Budget: |A| membership comparisons per face against the guard.
    """
    params = A.params
    _check_k(params, k)
    n, q = params.n, params.q
    nf = n - k
    check_guard(total_faces(params, k) * max(len(A), 1), guard)
    rows = A.coord_rows()
    counts: Counter[int] = Counter()
    for fixed_positions in combinations(range(n), nf):
        proj = _projector(fixed_positions)
        projected = [proj(row) for row in rows]
        for vals in product(range(q), repeat=nf):
            counts[projected.count(vals)] += 1
    return FaceDistribution.checked(params, k, dict(counts))
