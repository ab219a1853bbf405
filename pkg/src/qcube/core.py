"""Domain types and exact integer combinatorics for q-valued cubes.

Everything here is pure and immutable: points, point sets, and faces of the
cube E_q^n (vectors of length n over {0, ..., q-1}), plus the binomial and
Hamming primitives the rest of the package is built on. No floating point.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping


class CubeError(ValueError):
    """Malformed or mismatched cube data."""


class ParseError(CubeError):
    """Point-set text that could not be parsed; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SizeGuardError(CubeError):
    """Instance too large: the configured operation budget would be exceeded."""


class ConsistencyError(RuntimeError):
    """An internal invariant that should be unreachable was violated."""


DEFAULT_GUARD = 10_000_000


def check_guard(ops: int, guard: int = DEFAULT_GUARD) -> None:
    """Raise SizeGuardError if an operation estimate exceeds the budget."""
    if ops > guard:
        raise SizeGuardError(
            f"instance too large: about {ops} elementary operations, guard is {guard}"
        )


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), zero-extended: 0 whenever k < 0 or k > n.

    A negative n is a usage error, not a value in the extended convention.
    """
    if n < 0:
        raise ValueError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class CubeParams:
    """Alphabet size q >= 2 and dimension n >= 0."""

    q: int
    n: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise CubeError(f"alphabet size q must be >= 2, got {self.q}")
        if self.n < 0:
            raise CubeError(f"dimension n must be >= 0, got {self.n}")

    @property
    def volume(self) -> int:
        """Number of points of the cube, q**n."""
        return self.q**self.n


@dataclass(frozen=True)
class Point:
    """One vector of the cube. Equality compares the owning cube and coordinates."""

    params: CubeParams
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.params.n:
            raise CubeError(
                f"point has {len(coords)} coordinates, cube dimension is {self.params.n}"
            )
        q = self.params.q
        for c in coords:
            if not isinstance(c, int) or not 0 <= c < q:
                raise CubeError(f"coordinate {c!r} out of range for q={q}")


@dataclass(frozen=True)
class PointSet:
    """A deduplicated set of points of one cube.

    Canonical form: points are stored (and iterated) in lexicographic order of
    their coordinate tuples, so equal sets compare and hash equal regardless of
    construction order. May be empty.
    """

    params: CubeParams
    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        for p in pts:
            if p.params != self.params:
                raise CubeError("point does not belong to this cube")
        canonical = tuple(sorted(set(pts), key=lambda p: p.coords))
        object.__setattr__(self, "points", canonical)

    @classmethod
    def from_coords(cls, params: CubeParams, coords: Iterable[Iterable[int]]) -> "PointSet":
        return cls(params, tuple(Point(params, tuple(c)) for c in coords))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, p: object) -> bool:
        return p in self.points

    def coord_rows(self) -> tuple[tuple[int, ...], ...]:
        """The coordinate matrix: one row per point, canonical order."""
        return tuple(p.coords for p in self.points)


@dataclass(frozen=True)
class Face:
    """A face of the cube: a set of free positions plus fixed values elsewhere.

    free_positions and the positions of fixed_values partition {0, ..., n-1}.
    fixed_values is normalized to a tuple of (position, value) pairs sorted by
    position; a mapping may be passed in.
    """

    params: CubeParams
    free_positions: frozenset[int]
    fixed_values: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        free = frozenset(int(i) for i in self.free_positions)
        raw = self.fixed_values
        items = raw.items() if isinstance(raw, Mapping) else raw
        fixed = tuple(sorted((int(i), int(v)) for i, v in items))
        object.__setattr__(self, "free_positions", free)
        object.__setattr__(self, "fixed_values", fixed)

        n, q = self.params.n, self.params.q
        fixed_positions = [i for i, _ in fixed]
        if len(set(fixed_positions)) != len(fixed_positions):
            raise CubeError("duplicate fixed position")
        seen = free | set(fixed_positions)
        if free & set(fixed_positions):
            raise CubeError("a position cannot be both free and fixed")
        if seen != set(range(n)):
            raise CubeError("free and fixed positions must partition the coordinate set")
        for i, v in fixed:
            if not 0 <= v < q:
                raise CubeError(f"fixed value {v} at position {i} out of range for q={q}")

    @property
    def dimension(self) -> int:
        return len(self.free_positions)

    def points(self) -> Iterator[Point]:
        """All q**dimension points of the face."""
        n, q = self.params.n, self.params.q
        free = sorted(self.free_positions)
        base = [0] * n
        for i, v in self.fixed_values:
            base[i] = v
        for vals in product(range(q), repeat=len(free)):
            coords = base[:]
            for i, v in zip(free, vals):
                coords[i] = v
            yield Point(self.params, tuple(coords))


def hamming(a: Point, b: Point) -> int:
    """Number of positions where the two points differ."""
    if a.params != b.params:
        raise CubeError("points live in different cubes")
    return sum(x != y for x, y in zip(a.coords, b.coords))


def _parse_vector(line: str, params: CubeParams, line_no: int) -> tuple[int, ...]:
    q, n = params.q, params.n
    if "," in line or q > 10:
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != n:
            if q > 10 and "," not in line:
                raise ParseError(
                    f"q={q} > 10 requires comma-separated coordinates", line_no
                )
            raise ParseError(f"expected {n} coordinates, got {len(parts)}", line_no)
        coords = []
        for part in parts:
            try:
                coords.append(int(part))
            except ValueError:
                raise ParseError(f"not an integer: {part!r}", line_no) from None
    else:
        if len(line) != n:
            raise ParseError(f"expected {n} digits, got {len(line)}", line_no)
        for ch in line:
            if ch not in string.digits:
                raise ParseError(f"invalid character {ch!r}", line_no)
        coords = [int(ch) for ch in line]
    for c in coords:
        if not 0 <= c < q:
            raise ParseError(f"coordinate {c} out of range for q={q}", line_no)
    return tuple(coords)


def parse_pointset(text: str, params: CubeParams) -> tuple[PointSet, int]:
    """Parse the one-vector-per-line text format.

    For q <= 10 a line may be a compact digit string ("01021"); comma-separated
    coordinates ("0,1,0,2,1") are accepted for any q and are mandatory for
    q > 10. Blank lines and lines starting with '#' are ignored. Duplicate
    vectors are dropped, not rejected.

    Returns (pointset, number_of_duplicates_dropped). Errors carry the 1-based
    line number.
    """
    points: list[Point] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        points.append(Point(params, _parse_vector(line, params, line_no)))
    dropped = len(points) - len(set(points))
    return PointSet(params, tuple(points)), dropped


def serialize_pointset(A: PointSet) -> str:
    """Inverse of parse_pointset: one vector per line, canonical order.

    parse(serialize(A)) == A for every n >= 1. The n = 0 cube has no line
    representation (the empty coordinate string is a blank line), so both the
    empty set and the singleton set serialize to "" there.
    """
    q = A.params.q
    if q <= 10:
        lines = ["".join(str(c) for c in p.coords) for p in A]
    else:
        lines = [",".join(str(c) for c in p.coords) for p in A]
    return "\n".join(lines)
