"""Split elements of the rank-3 groups as integer points of a quadric.

A split class O(x) + O(y) + O(z) lies in the group over the base
O(a) + O(b) exactly when

    x + y + z = a + b        and        xy + yz + zx = ab.

Substituting c = a - x, d = b - y turns the system into the projective
quadric Q = c^2 + d^2 - bd - ac + cd = 0 in [a : b : c : d].  Lines
through the rational point [1:0:0:0] sweep out its points, which gives
two explicit solution families after clearing denominators: a
four-parameter family (u, v, l, w) and the two-parameter family of
identity-type solutions (those with a zero coordinate).  Brute-force
enumeration provides the independent check that the families cover what
a box scan finds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, DomainError
from .rank3 import Rank3BundleClass

__all__ = [
    "Provenance",
    "QuadricSolution",
    "QuadricPoint",
    "quadric_Q",
    "solution_to_point",
    "param_family1",
    "param_family2",
    "brute_force_solutions",
    "coverage_check",
    "CoverageReport",
    "enumerate_nonidentity_splits",
]

FAMILY1 = "family1"
FAMILY2 = "family2"
BRUTE_FORCE = "brute_force"


@dataclass(frozen=True)
class Provenance:
    """Where a solution came from.

    kind is one of "family1" (params (u, v, l, w)), "family2"
    (params (t, l, variant)), or "brute_force" (no params).
    """

    kind: str
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in (FAMILY1, FAMILY2, BRUTE_FORCE):
            raise DomainError(f"unknown provenance kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(self.params))


@dataclass(frozen=True)
class QuadricSolution:
    """Integer solution (x, y, z, a, b) of the two symmetric equations."""

    x: int
    y: int
    z: int
    a: int
    b: int
    provenance: Provenance = Provenance(BRUTE_FORCE)

    def __post_init__(self) -> None:
        if self.x + self.y + self.z != self.a + self.b:
            raise DomainError(
                f"x + y + z = {self.x + self.y + self.z} differs from "
                f"a + b = {self.a + self.b}"
            )
        if self.x * self.y + self.y * self.z + self.z * self.x != self.a * self.b:
            raise DomainError(
                "xy + yz + zx differs from ab for "
                f"({self.x}, {self.y}, {self.z}, {self.a}, {self.b})"
            )

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    @property
    def base(self) -> tuple[int, int]:
        return (self.a, self.b)


@dataclass(frozen=True)
class QuadricPoint:
    """Projective integer point [a : b : c : d] on Q = 0."""

    coords: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        coords = tuple(self.coords)
        if len(coords) != 4 or not all(isinstance(v, int) for v in coords):
            raise DomainError("a quadric point needs four integer coordinates")
        if not any(coords):
            raise DomainError("projective coordinates must not all vanish")
        if quadric_Q(*coords) != 0:
            raise DomainError(f"Q{coords} != 0; the point is not on the quadric")
        object.__setattr__(self, "coords", coords)


def quadric_Q(a: int, b: int, c: int, d: int) -> int:
    """The quadric form c^2 + d^2 - bd - ac + cd."""
    return c * c + d * d - b * d - a * c + c * d


def solution_to_point(s: QuadricSolution) -> QuadricPoint:
    """Coordinate change c = a - x, d = b - y landing on Q = 0."""
    c = s.a - s.x
    d = s.b - s.y
    if s.z != c + d:
        # forced by the first symmetric equation; a failure is a bug
        raise ConsistencyError(f"z = {s.z} differs from c + d = {c + d}")
    return QuadricPoint((s.a, s.b, c, d))


def param_family1(u: int, v: int, l: int, w: int) -> QuadricSolution:
    """Four-parameter solution family from lines through [1:0:0:0].

    The line through [0 : l : u : v] meets the quadric again at a
    rational point; clearing denominators with the overall scale w gives
    an integer solution for every (u, v, l, w).
    """
    x = w * (v * v + u * v - l * v)
    y = w * u * (l - v)
    z = w * u * (u + v)
    a = w * (u * u + v * v + u * v - l * v)
    b = w * u * l
    return QuadricSolution(x, y, z, a, b, Provenance(FAMILY1, (u, v, l, w)))


def param_family2(t: int, l: int) -> tuple[QuadricSolution, QuadricSolution]:
    """The two identity-type solutions for (t, l): a coordinate of the triple is 0.

    These come from entire lines contained in the quadric and correspond
    to identity elements O(t) + O(l) + O of the groups they live in.
    """
    first = QuadricSolution(t, l, 0, l, t, Provenance(FAMILY2, (t, l, 1)))
    second = QuadricSolution(t, 0, l, t, l, Provenance(FAMILY2, (t, l, 2)))
    return first, second


def _canonical(triple: tuple[int, int, int]) -> tuple[int, int, int]:
    ordered = sorted(triple, reverse=True)
    return (ordered[0], ordered[1], ordered[2])


def brute_force_solutions(
    a: int, b: int, box: int, include_permutations: bool = False
) -> list[QuadricSolution]:
    """All solutions with max(|x|, |y|, |z|) <= box, exhaustively.

    By default triples are canonicalized by sorting descending and
    deduplicated; ``include_permutations`` returns every ordered triple
    instead.  Output order is deterministic either way.
    """
    if not isinstance(box, int) or box < 0:
        raise DomainError(f"box must be a non-negative integer, got {box!r}")
    s1 = a + b
    s2 = a * b
    found: list[tuple[int, int, int]] = []
    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            z = s1 - x - y
            if abs(z) <= box and x * y + y * z + z * x == s2:
                found.append((x, y, z))
    if not include_permutations:
        found = sorted({_canonical(t) for t in found})
    else:
        found.sort()
    return [
        QuadricSolution(x, y, z, a, b, Provenance(BRUTE_FORCE)) for x, y, z in found
    ]


@dataclass(frozen=True)
class CoverageReport:
    """How much of a brute-force box the two parametrized families explain.

    ``matched`` pairs each canonical solution with the provenance of a
    generator found within the parameter bound (permutations of the
    triple allowed, and the base pair may appear swapped since the
    equations are symmetric in a and b).  ``unmatched`` solutions are
    findings, never silently dropped.
    """

    a: int
    b: int
    box: int
    param_bound: int
    matched: tuple[tuple[QuadricSolution, Provenance], ...]
    unmatched: tuple[QuadricSolution, ...]

    @property
    def total(self) -> int:
        return len(self.matched) + len(self.unmatched)

    @property
    def all_matched(self) -> bool:
        return not self.unmatched

    @property
    def match_rate(self) -> Fraction:
        if self.total == 0:
            return Fraction(1)
        return Fraction(len(self.matched), self.total)


def coverage_check(a: int, b: int, box: int, param_bound: int) -> CoverageReport:
    """Match every brute-force solution against the two families.

    Identity-type solutions are matched by the two-parameter family
    first; everything else is searched for among family-1 parameters
    with |u|, |v|, |l|, |w| <= param_bound.  The first generator found
    in deterministic scan order is recorded.
    """
    if not isinstance(param_bound, int) or param_bound < 0:
        raise DomainError(
            f"param_bound must be a non-negative integer, got {param_bound!r}"
        )
    targets = brute_force_solutions(a, b, box)
    matches: dict[tuple[int, int, int], Provenance] = {}

    identity_triple = _canonical((a, b, 0))
    for t, l, variant in ((b, a, 1), (a, b, 2)):
        if max(abs(t), abs(l)) <= param_bound:
            sol = param_family2(t, l)[variant - 1]
            if sol.base == (a, b) and identity_triple not in matches:
                matches[identity_triple] = sol.provenance

    wanted = {s.triple for s in targets} - set(matches)
    if wanted:
        span = range(-param_bound, param_bound + 1)
        for u in span:
            for v in span:
                uv = u + v
                for l in span:
                    x0 = v * v + u * v - l * v
                    y0 = u * (l - v)
                    z0 = u * uv
                    a0 = u * u + x0
                    b0 = u * l
                    for w in span:
                        base = (w * a0, w * b0)
                        if base != (a, b) and base != (b, a):
                            continue
                        key = _canonical((w * x0, w * y0, w * z0))
                        if key in wanted and key not in matches:
                            matches[key] = Provenance(FAMILY1, (u, v, l, w))
    matched = []
    unmatched = []
    for sol in targets:
        if sol.triple in matches:
            matched.append((sol, matches[sol.triple]))
        else:
            unmatched.append(sol)
    return CoverageReport(
        a=a,
        b=b,
        box=box,
        param_bound=param_bound,
        matched=tuple(matched),
        unmatched=tuple(unmatched),
    )


def enumerate_nonidentity_splits(a: int, b: int, box: int) -> list[Rank3BundleClass]:
    """Split classes in the group over O(a) + O(b) with nonzero c3, from a box scan.

    Solutions with xyz != 0 map to classes (a + b, ab, xyz); the result
    is deduplicated by class and sorted by c3.
    """
    classes = {
        s.x * s.y * s.z
        for s in brute_force_solutions(a, b, box)
        if s.x * s.y * s.z != 0
    }
    return [Rank3BundleClass(a + b, a * b, c3) for c3 in sorted(classes)]
