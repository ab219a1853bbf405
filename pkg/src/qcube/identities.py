"""Two-sided evaluation of the face-count identities.

Each check computes its left side from the face-intersection distribution and
its right side from subset ranks or pairwise distances, through code paths
that share nothing beyond the core primitives, then reports exact equality.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Optional

from .core import DEFAULT_GUARD, ConsistencyError, CubeError, PointSet, binom, check_guard
from .faces import distribution
from .rank import distance_sum, rank_rows

Terms = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check: both sides, equality, optional per-term
    breakdowns (label, value) whose values sum to their side."""

    identity: str
    params: dict[str, Any]
    lhs: int
    rhs: int
    equal: bool
    lhs_terms: Optional[Terms] = None
    rhs_terms: Optional[Terms] = None
    note: Optional[str] = None

    @classmethod
    def of(
        cls,
        identity: str,
        params: dict[str, Any],
        lhs: int,
        rhs: int,
        lhs_terms: Optional[Terms] = None,
        rhs_terms: Optional[Terms] = None,
        proven: bool = False,
    ) -> "IdentityReport":
        equal = lhs == rhs
        note = None
        if proven and not equal:
            note = "sides of a proven identity differ: implementation defect"
        return cls(identity, params, lhs, rhs, equal, lhs_terms, rhs_terms, note)


def intersection_cap(A: PointSet, k: int) -> int:
    """Largest possible |A ∩ F| over k-faces F: min(|A|, q**k)."""
    return min(len(A), A.params.q**k)


def _check_s(A: PointSet, k: int, s: int) -> None:
    cap = intersection_cap(A, k)
    if not 1 <= s <= cap:
        raise CubeError(f"s must be in [1, {cap}] for this set and k, got {s}")


def _require_size(A: PointSet, least: int, what: str) -> None:
    if len(A) < least:
        raise CubeError(f"{what} requires at least {least} points, got {len(A)}")


def _lhs_terms(A: PointSet, k: int, s: int, guard: int) -> Terms:
    dist = distribution(A, k, guard)
    return tuple(
        (f"e={e}", binom(e, s) * count) for e, count in dist.items() if e >= s
    )


def main_lhs(A: PointSet, k: int, s: int, guard: int = DEFAULT_GUARD) -> int:
    """Left side: sum over e >= s of C(e, s) * (number of k-faces meeting A in
    exactly e points)."""
    _require_size(A, 1, "main_lhs")
    _check_s(A, k, s)
    return sum(v for _, v in _lhs_terms(A, k, s, guard))


@lru_cache(maxsize=512)
def _subset_rank_histogram(A: PointSet, s: int) -> tuple[tuple[int, int], ...]:
    rows = A.coord_rows()
    hist: Counter[int] = Counter()
    for combo in combinations(rows, s):
        hist[rank_rows(combo)] += 1
    return tuple(sorted(hist.items()))


def _rhs_terms(A: PointSet, k: int, s: int) -> Terms:
    n = A.params.n
    rows = A.coord_rows()
    out = []
    for idx in combinations(range(len(rows)), s):
        r = rank_rows([rows[i] for i in idx])
        out.append((f"B={idx}", binom(n - r, k - r)))
    return tuple(out)


def main_rhs(A: PointSet, k: int, s: int, guard: int = DEFAULT_GUARD) -> int:
    """Right side: sum of C(n - r(B), k - r(B)) over all s-element subsets B
    of A, where r(B) is the subset rank."""
    _require_size(A, 1, "main_rhs")
    _check_s(A, k, s)
    check_guard(binom(len(A), s), guard)
    n = A.params.n
    return sum(
        count * binom(n - r, k - r) for r, count in _subset_rank_histogram(A, s)
    )


def verify_main(
    A: PointSet,
    k: int,
    s: int,
    guard: int = DEFAULT_GUARD,
    include_terms: bool = False,
) -> IdentityReport:
    """Evaluate both sides of the face-count identity independently.

    Holds for every nonempty A, 0 <= k <= n and 1 <= s <= min(|A|, q**k), so
    an unequal report indicates a defect, and is marked as such.
    """
    lhs = main_lhs(A, k, s, guard)
    rhs = main_rhs(A, k, s, guard)
    params = {"q": A.params.q, "n": A.params.n, "k": k, "s": s, "m": len(A)}
    lt = _lhs_terms(A, k, s, guard) if include_terms else None
    rt = _rhs_terms(A, k, s) if include_terms else None
    return IdentityReport.of("main", params, lhs, rhs, lt, rt, proven=True)


def corollary_s1(
    A: PointSet, k: int, guard: int = DEFAULT_GUARD, include_terms: bool = False
) -> IdentityReport:
    """Singleton case: the e-weighted face tally equals |A| * C(n, k).

    Valid for every q (each point lies in exactly C(n, k) k-faces).
    """
    _require_size(A, 1, "corollary_s1")
    dist = distribution(A, k, guard)
    lhs_terms = tuple((f"e={e}", e * c) for e, c in dist.items() if e >= 1)
    lhs = sum(v for _, v in lhs_terms)
    rhs = len(A) * binom(A.params.n, k)
    params = {"q": A.params.q, "n": A.params.n, "k": k, "s": 1, "m": len(A)}
    lt = lhs_terms if include_terms else None
    rt = (("m*binom(n,k)", rhs),) if include_terms else None
    return IdentityReport.of("corollary1", params, lhs, rhs, lt, rt, proven=True)


def corollary_s2(
    A: PointSet, k: int, guard: int = DEFAULT_GUARD, include_terms: bool = False
) -> IdentityReport:
    """Pair case: sum of C(e, 2) counts equals the sum over point pairs of
    C(n - d, k - d) at pair distance d.

    Valid for every q: a pair at distance d spans a d-dimensional face, so its
    rank is d and no separate rank computation is needed.
    """
    _require_size(A, 2, "corollary_s2")
    check_guard(binom(len(A), 2), guard)
    n = A.params.n
    lhs_terms = _lhs_terms(A, k, 2, guard)
    lhs = sum(v for _, v in lhs_terms)
    prof = distance_sum(A)
    if include_terms:
        rt: Optional[Terms] = tuple(
            (f"pair={ij}", binom(n - d, k - d)) for ij, d in sorted(prof.pairwise.items())
        )
        rhs = sum(v for _, v in rt)
        lt: Optional[Terms] = lhs_terms
    else:
        hist = Counter(prof.pairwise.values())
        rhs = sum(c * binom(n - d, k - d) for d, c in hist.items())
        lt = rt = None
    params = {"q": A.params.q, "n": n, "k": k, "s": 2, "m": len(A)}
    return IdentityReport.of("corollary2", params, lhs, rhs, lt, rt, proven=True)


def corollary_s3(
    A: PointSet, k: int, guard: int = DEFAULT_GUARD, include_terms: bool = False
) -> IdentityReport:
    """Triple case, binary cubes only: sum of C(e, 3) counts equals the sum
    over point triples of C(n - r, k - r) with r the half-sum of the three
    pairwise distances (an integer in a binary cube)."""
    if A.params.q != 2:
        raise CubeError("corollary_s3 is defined for q = 2 only")
    _require_size(A, 3, "corollary_s3")
    m = len(A)
    check_guard(binom(m, 3), guard)
    n = A.params.n
    lhs_terms = _lhs_terms(A, k, 3, guard)
    lhs = sum(v for _, v in lhs_terms)
    d = distance_sum(A).pairwise
    rhs = 0
    rt: list[tuple[str, int]] = []
    for i, j, t in combinations(range(m), 3):
        dsum = d[(i, j)] + d[(i, t)] + d[(j, t)]
        if dsum % 2:
            raise ConsistencyError(
                f"odd distance sum {dsum} for a binary triple {(i, j, t)}"
            )
        r = dsum // 2
        term = binom(n - r, k - r)
        rhs += term
        if include_terms:
            rt.append((f"triple={(i, j, t)}", term))
    params = {"q": 2, "n": n, "k": k, "s": 3, "m": m}
    lt = lhs_terms if include_terms else None
    return IdentityReport.of(
        "corollary3", params, lhs, rhs, lt, tuple(rt) if include_terms else None, proven=True
    )
