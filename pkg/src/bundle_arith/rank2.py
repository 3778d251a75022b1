"""Rank-2 topological bundle classes on CP^3 and their additive structures.

A class is the complete invariant triple (c1, c2, alpha): two integer
Chern classes plus the Z/2 Atiyah-Rees invariant alpha, which exists
exactly when c1 is even.  Realizable Chern pairs are those with c1*c2
even; even-c1 pairs carry two classes (alpha = 0, 1), odd-c1 pairs one.

On the set of classes with a fixed c1 the module implements two
families of abelian group laws (the plain one, whose identity is
O(a1) + O, and a shifted one with identity O(a1-b) + O(b)), the
Horrocks-style sum with its alpha correction, tensoring by line
bundles, and a bounded search demonstrating that split classes generate
everything under twisting and Horrocks sums.

Z/2 values are canonical integers 0/1 and every congruence uses
Euclidean remainders, so negative inputs behave correctly.  All values
are immutable and all functions pure.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import count

from .errors import (
    ConsistencyError,
    DomainError,
    FormulaNotApplicableError,
    HorrocksUndefinedError,
)

__all__ = [
    "Rank2BundleClass",
    "GroupDescriptorA1",
    "ReachedClass",
    "GenerationReport",
    "epsilon",
    "delta",
    "alpha_extendable",
    "alpha_balanced_split",
    "split_rank2",
    "add",
    "negate",
    "add_shifted",
    "horrocks_sum",
    "agreement_check",
    "tensor_line",
    "count_classes",
    "realizable_classes",
    "generation_closure",
]


def epsilon(a: int) -> int:
    """Z/2 correction term of the plain group law: 1 iff a = 4 (mod 8)."""
    if a % 2:
        raise DomainError(f"epsilon is defined for even integers only, got {a}")
    return 1 if a % 8 == 4 else 0


def delta(c1: int, c2: int) -> int:
    """Normalized discriminant (c1^2 - 4*c2) / 4; needs even c1 for integrality."""
    if c1 % 2:
        raise DomainError(f"delta needs an even c1, got {c1}")
    return (c1 * c1 - 4 * c2) // 4


def alpha_extendable(c1: int, c2: int) -> int:
    """alpha of an even-c1 class that extends to CP^4: D(D-1)/12 mod 2.

    With D the normalized discriminant, the closed form applies only
    when 12 divides D(D-1); split classes always qualify.  Outside that
    range the formula is silent, so the call fails rather than guess.
    """
    d = delta(c1, c2)
    m = d * (d - 1)
    if m % 12:
        raise FormulaNotApplicableError(
            f"D(D-1) = {m} is not divisible by 12 for (c1, c2) = ({c1}, {c2}); "
            "the closed-form alpha does not cover this class"
        )
    return (m // 12) % 2


def alpha_balanced_split(b: int) -> int:
    """alpha of O(b) + O(-b) via the 8-divisibility of b^2(b+1)(b-1).

    b^2(b+1)(b-1) is always divisible by 4; alpha is the parity of the
    quotient, which is 1 exactly when b = 2 (mod 4).
    """
    m = b * b * (b + 1) * (b - 1)
    return (m // 4) % 2


@dataclass(frozen=True)
class Rank2BundleClass:
    """Topological class of a rank-2 bundle on CP^3: (c1, c2, alpha)."""

    c1: int
    c2: int
    alpha: int | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.c1, int) or not isinstance(self.c2, int):
            raise DomainError("c1 and c2 must be integers")
        if (self.c1 * self.c2) % 2:
            raise DomainError(
                f"(c1, c2) = ({self.c1}, {self.c2}) is not realizable: "
                "c1*c2 must be even"
            )
        if self.c1 % 2 == 0:
            if self.alpha not in (0, 1):
                raise DomainError(
                    f"alpha in {{0, 1}} is required when c1 is even, got {self.alpha!r}"
                )
        elif self.alpha is not None:
            raise DomainError(f"alpha is not defined for odd c1 = {self.c1}")


def split_rank2(x: int, y: int) -> Rank2BundleClass:
    """Class of the split bundle O(x) + O(y).

    Chern data are the elementary symmetric functions (x+y, x*y); when
    that first class is even, alpha comes from the extendable-class
    formula (split bundles always extend).
    """
    c1, c2 = x + y, x * y
    if c1 % 2:
        return Rank2BundleClass(c1, c2)
    return Rank2BundleClass(c1, c2, alpha_extendable(c1, c2))


@dataclass(frozen=True)
class GroupDescriptorA1:
    """Additive structure on the classes with first Chern class ``a1``.

    ``b is None`` selects the plain law, identity O(a1) + O; an integer
    ``b`` selects the shifted law, identity O(a1-b) + O(b).  For the
    plain law the alpha of the identity must equal epsilon(a1) (the
    group law forces it); this self-consistency is asserted here.
    """

    a1: int
    b: int | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.a1, int):
            raise DomainError(f"a1 must be an integer, got {self.a1!r}")
        if self.b is not None and not isinstance(self.b, int):
            raise DomainError(f"shift b must be an integer or None, got {self.b!r}")
        if self.b is None and self.a1 % 2 == 0:
            if split_rank2(self.a1, 0).alpha != epsilon(self.a1):
                raise ConsistencyError(
                    f"alpha of the identity at a1 = {self.a1} does not equal "
                    f"epsilon(a1); the group law cannot be consistent"
                )

    @property
    def identity(self) -> Rank2BundleClass:
        if self.b is None:
            return split_rank2(self.a1, 0)
        return split_rank2(self.a1 - self.b, self.b)


def _require_plain(g: GroupDescriptorA1) -> None:
    if g.b is not None:
        raise DomainError("this operation needs a plain (unshifted) descriptor")


def _require_member(g: GroupDescriptorA1, v: Rank2BundleClass) -> None:
    if v.c1 != g.a1:
        raise DomainError(f"class has c1 = {v.c1}, expected a1 = {g.a1}")


def add(
    g: GroupDescriptorA1, v: Rank2BundleClass, w: Rank2BundleClass
) -> Rank2BundleClass:
    """Plain sum: c2 adds, alpha adds with the epsilon(a1) correction."""
    _require_plain(g)
    _require_member(g, v)
    _require_member(g, w)
    if g.a1 % 2:
        return Rank2BundleClass(g.a1, v.c2 + w.c2)
    return Rank2BundleClass(
        g.a1, v.c2 + w.c2, (v.alpha + w.alpha + epsilon(g.a1)) % 2
    )


def negate(g: GroupDescriptorA1, v: Rank2BundleClass) -> Rank2BundleClass:
    """Inverse for the plain sum: (a1, -c2, alpha).

    Solving add(v, -v) = identity with alpha(identity) = epsilon(a1)
    forces the inverse to keep the same alpha.
    """
    _require_plain(g)
    _require_member(g, v)
    return Rank2BundleClass(g.a1, -v.c2, v.alpha)


def add_shifted(
    g: GroupDescriptorA1, v: Rank2BundleClass, w: Rank2BundleClass
) -> Rank2BundleClass:
    """Shifted sum: the plain sum minus the shifted identity O(a1-b) + O(b)."""
    if g.b is None:
        raise DomainError("descriptor carries no shift; use add for the plain law")
    plain = GroupDescriptorA1(g.a1)
    return add(plain, add(plain, v, w), negate(plain, g.identity))


def horrocks_sum(v: Rank2BundleClass, w: Rank2BundleClass) -> Rank2BundleClass:
    """Extension-style sum of two classes with shared c1 = -m, m >= 0.

    c2 is additive.  For even c1 = -2n, alpha is additive when n is odd
    or n = 0 (mod 4) and picks up an extra 1 when n = 2 (mod 4).
    Positive shared c1 leaves no regular sections to glue along, so the
    sum is undefined there.
    """
    if v.c1 != w.c1:
        raise DomainError(f"summands must share c1, got {v.c1} and {w.c1}")
    if v.c1 > 0:
        raise HorrocksUndefinedError(
            f"Horrocks sum undefined for shared c1 = {v.c1} > 0"
        )
    c2 = v.c2 + w.c2
    if v.c1 % 2:
        return Rank2BundleClass(v.c1, c2)
    n = -v.c1 // 2
    bump = 1 if n % 4 == 2 else 0
    return Rank2BundleClass(v.c1, c2, (v.alpha + w.alpha + bump) % 2)


def agreement_check(v: Rank2BundleClass, w: Rank2BundleClass) -> bool:
    """Whether the Horrocks sum and the plain group sum of (v, w) coincide.

    Both must be defined (shared c1 <= 0).  The comparison reduces to
    epsilon(-2n) = [n = 2 (mod 4)] with n = -c1/2; the reduction is
    cross-checked against the direct class comparison and a mismatch
    between the two would be a structural bug.
    """
    direct = horrocks_sum(v, w) == add(GroupDescriptorA1(v.c1), v, w)
    if v.c1 % 2 == 0:
        n = -v.c1 // 2
        reduced = (1 if n % 4 == 2 else 0) == epsilon(v.c1)
        if reduced != direct:
            raise ConsistencyError(
                f"class comparison and epsilon reduction disagree at c1 = {v.c1}"
            )
    return direct


def tensor_line(v: Rank2BundleClass, k: int) -> Rank2BundleClass:
    """Tensor with O(k): (c1 + 2k, c2 + k*c1 + k^2), alpha unchanged.

    alpha depends only on the class normalized to c1 = 0, which is
    unchanged by further twisting, and the parity of c1 is preserved so
    alpha's presence is too.
    """
    if not isinstance(k, int):
        raise DomainError(f"twist must be an integer, got {k!r}")
    return Rank2BundleClass(v.c1 + 2 * k, v.c2 + k * v.c1 + k * k, v.alpha)


def count_classes(c1: int, c2: int) -> int:
    """Number of rank-2 classes on CP^3 with the given Chern pair: 0, 1, or 2."""
    if (c1 * c2) % 2:
        return 0
    return 2 if c1 % 2 == 0 else 1


@dataclass(frozen=True)
class ReachedClass:
    """A class reached by the generation search, with a cheapest witness."""

    cls: Rank2BundleClass
    cost: int
    witness: str


@dataclass(frozen=True)
class GenerationReport:
    """Outcome of the bounded generation search.

    ``reached``/``unreached`` cover every realizable class in the report
    box; the search itself may roam the (possibly larger) search box.
    Unreached classes are findings, not errors: witnesses may need
    intermediate classes outside any fixed box.
    """

    c1_min: int
    c1_max: int
    c2_bound: int
    search_c1_min: int
    search_c1_max: int
    search_c2_bound: int
    reached: tuple[ReachedClass, ...]
    unreached: tuple[Rank2BundleClass, ...]
    searched: int

    @property
    def all_reached(self) -> bool:
        return not self.unreached


def _class_sort_key(cls: Rank2BundleClass) -> tuple[int, int, int]:
    return (cls.c1, cls.c2, -1 if cls.alpha is None else cls.alpha)


def realizable_classes(c1_min: int, c1_max: int, c2_bound: int):
    """All realizable classes in the box, in sorted order."""
    for c1 in range(c1_min, c1_max + 1):
        for c2 in range(-c2_bound, c2_bound + 1):
            if (c1 * c2) % 2:
                continue
            if c1 % 2 == 0:
                yield Rank2BundleClass(c1, c2, 0)
                yield Rank2BundleClass(c1, c2, 1)
            else:
                yield Rank2BundleClass(c1, c2)


def generation_closure(
    c1_min: int,
    c1_max: int,
    c2_bound: int,
    search_c1_min: int | None = None,
    search_c1_max: int | None = None,
    search_c2_bound: int | None = None,
) -> GenerationReport:
    """Closure of split classes under twisting and Horrocks sums, inside a box.

    Starts from every split class inside the search box and combines
    reached classes with tensor_line (any twist staying in the box) and
    horrocks_sum (pairs sharing a non-positive c1).  A cheapest witness
    expression, counted in operations applied to splits, is recorded for
    each reached class via uniform-cost search.
    """
    for name, value in (("c1_min", c1_min), ("c1_max", c1_max), ("c2_bound", c2_bound)):
        if not isinstance(value, int):
            raise DomainError(f"{name} must be an integer, got {value!r}")
    if c1_min > c1_max or c2_bound < 0:
        raise DomainError("empty report box")
    s1min = c1_min if search_c1_min is None else search_c1_min
    s1max = c1_max if search_c1_max is None else search_c1_max
    s2 = c2_bound if search_c2_bound is None else search_c2_bound
    if s1min > c1_min or s1max < c1_max or s2 < c2_bound:
        raise DomainError("the search box must contain the report box")

    def in_search_box(c1: int, c2: int) -> bool:
        return s1min <= c1 <= s1max and abs(c2) <= s2

    heap: list[tuple] = []
    tick = count()

    def push(cost: int, expr: str, cls: Rank2BundleClass) -> None:
        heapq.heappush(heap, (cost, *_class_sort_key(cls), expr, next(tick), cls))

    # Any split O(x) + O(y) in the box has |x|, |y| bounded by the roots
    # of t^2 - c1*t + c2 over the box, hence by max|c1| + c2_bound.
    xb = max(abs(s1min), abs(s1max)) + s2
    for x in range(-xb, xb + 1):
        for y in range(x, xb + 1):
            if in_search_box(x + y, x * y):
                push(0, f"split({x},{y})", split_rank2(x, y))

    settled: dict[Rank2BundleClass, tuple[int, str]] = {}
    peers_by_c1: dict[int, list[tuple[Rank2BundleClass, int, str]]] = {}
    while heap:
        cost, _c1, _c2, _a, expr, _t, cls = heapq.heappop(heap)
        if cls in settled:
            continue
        settled[cls] = (cost, expr)
        peers = peers_by_c1.setdefault(cls.c1, [])
        peers.append((cls, cost, expr))

        k_lo = -((cls.c1 - s1min) // 2)
        k_hi = (s1max - cls.c1) // 2
        for k in range(k_lo, k_hi + 1):
            if k == 0:
                continue
            twisted = tensor_line(cls, k)
            if abs(twisted.c2) <= s2 and twisted not in settled:
                push(cost + 1, f"tensor({expr}, {k})", twisted)

        if cls.c1 <= 0:
            for other, other_cost, other_expr in list(peers):
                combined = horrocks_sum(cls, other)
                if abs(combined.c2) <= s2 and combined not in settled:
                    first, second = sorted((expr, other_expr))
                    push(
                        cost + other_cost + 1,
                        f"horrocks({first}, {second})",
                        combined,
                    )

    reached = []
    unreached = []
    for cls in realizable_classes(c1_min, c1_max, c2_bound):
        if cls in settled:
            cost, expr = settled[cls]
            reached.append(ReachedClass(cls, cost, expr))
        else:
            unreached.append(cls)
    return GenerationReport(
        c1_min=c1_min,
        c1_max=c1_max,
        c2_bound=c2_bound,
        search_c1_min=s1min,
        search_c1_max=s1max,
        search_c2_bound=s2,
        reached=tuple(reached),
        unreached=tuple(unreached),
        searched=len(settled),
    )
