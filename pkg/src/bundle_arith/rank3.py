"""Rank-3 bundle classes on CP^5 and the groups over a fixed rank-2 base.

A class is the Chern triple (c1, c2, c3), validated against the
integrality predicate of :mod:`bundle_arith.cohomology`.  The known Z/3
refinement of the classification is deliberately not modeled: classes
carry an explicit "untracked" marker instead of a value, and the one
place it could matter (subgroup indices over a base with Z/3 kernel)
uses a Smith-normal-form determinant that is independent of it.

The group over a base (c1, c2) fixes the first two Chern classes and
adds on c3.  The module also decides split realizability by exact
integer factorization of the characteristic cubic, finds non-split
multiples, and produces the prime witness showing subgroups generated
by split classes contain non-split members.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cohomology import ChernVector, feasible_c3_lattice, is_feasible
from .errors import ConsistencyError, DomainError

__all__ = [
    "RHO_UNTRACKED",
    "KERNEL_TRIVIAL",
    "KERNEL_Z3",
    "Rank3BundleClass",
    "GroupDescriptorV0",
    "split_rank3",
    "is_split_realizable",
    "make_group",
    "add",
    "iterate",
    "smallest_nonsplit_multiple",
    "prime_witness",
    "smith_normal_form",
    "subgroup_index",
]

RHO_UNTRACKED = "untracked"
KERNEL_TRIVIAL = "trivial"
KERNEL_Z3 = "Z/3"


@dataclass(frozen=True)
class Rank3BundleClass:
    """Chern triple (c1, c2, c3) of a rank-3 class on CP^5."""

    c1: int
    c2: int
    c3: int

    def __post_init__(self) -> None:
        if not all(isinstance(c, int) for c in (self.c1, self.c2, self.c3)):
            raise DomainError("Chern classes must be integers")
        if not is_feasible(ChernVector(3, 5, (self.c1, self.c2, self.c3))):
            raise DomainError(
                f"(c1, c2, c3) = ({self.c1}, {self.c2}, {self.c3}) fails the "
                "integrality conditions for rank 3 on CP^5"
            )

    @property
    def rho(self) -> str:
        """The Z/3 refinement is intentionally untracked; never a value."""
        return RHO_UNTRACKED


def split_rank3(x: int, y: int, z: int) -> Rank3BundleClass:
    """Class of O(x) + O(y) + O(z): elementary symmetric functions."""
    return Rank3BundleClass(x + y + z, x * y + y * z + z * x, x * y * z)


def _divisors(n: int) -> list[int]:
    """All positive divisors of |n|, n != 0, ascending."""
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def is_split_realizable(c1: int, c2: int, c3: int) -> tuple[int, int, int] | None:
    """Twists (x, y, z) with these symmetric functions, or None.

    The triple exists exactly when t^3 - c1 t^2 + c2 t - c3 has three
    integer roots.  Integer roots of the monic cubic divide c3 (with 0
    forced as a root when c3 = 0), and once one root is found the
    remaining quadratic factors over Z iff its discriminant is a perfect
    square.  Returned triples are sorted in descending order.
    """

    def value(t: int) -> int:
        return ((t - c1) * t + c2) * t - c3

    if c3 == 0:
        candidates: list[int] = [0]
    else:
        candidates = []
        for d in _divisors(c3):
            candidates.extend((d, -d))
        candidates.sort(key=abs)
    for r in candidates:
        if value(r):
            continue
        # cubic = (t - r)(t^2 + p t + q)
        p = r - c1
        q = c2 + r * p
        disc = p * p - 4 * q
        if disc < 0:
            continue
        s = math.isqrt(disc)
        if s * s != disc:
            continue
        roots = sorted((r, (-p + s) // 2, (-p - s) // 2), reverse=True)
        return (roots[0], roots[1], roots[2])
    return None


@dataclass(frozen=True)
class GroupDescriptorV0:
    """Group of rank-3 classes over a rank-2 base with Chern data (base_c1, base_c2).

    ``kernel_kind`` records the kernel of the c3 homomorphism (Z/3 when
    both base classes are divisible by 3, trivial otherwise) and
    ``c3_generator`` the spacing of the feasible c3 lattice.
    """

    base_c1: int
    base_c2: int
    kernel_kind: str
    c3_generator: int

    def __post_init__(self) -> None:
        if self.kernel_kind not in (KERNEL_TRIVIAL, KERNEL_Z3):
            raise DomainError(f"unknown kernel kind {self.kernel_kind!r}")
        expected = (
            KERNEL_Z3
            if self.base_c1 % 3 == 0 and self.base_c2 % 3 == 0
            else KERNEL_TRIVIAL
        )
        if self.kernel_kind != expected:
            raise DomainError(
                f"kernel kind {self.kernel_kind!r} contradicts the mod-3 rule "
                f"for base ({self.base_c1}, {self.base_c2})"
            )
        if not isinstance(self.c3_generator, int) or self.c3_generator < 1:
            raise DomainError("c3_generator must be a positive integer")
        if not is_feasible(ChernVector(3, 5, (self.base_c1, self.base_c2, 0))):
            raise DomainError(
                f"identity data ({self.base_c1}, {self.base_c2}, 0) is not "
                "feasible on CP^5"
            )

    @property
    def identity(self) -> Rank3BundleClass:
        return Rank3BundleClass(self.base_c1, self.base_c2, 0)


def make_group(base_c1: int, base_c2: int, scan: int) -> GroupDescriptorV0:
    """Descriptor for the group over base (base_c1, base_c2).

    The kernel kind comes from the mod-3 test and the c3 lattice spacing
    from the integrality scan over |c3| <= scan.
    """
    kernel = (
        KERNEL_Z3 if base_c1 % 3 == 0 and base_c2 % 3 == 0 else KERNEL_TRIVIAL
    )
    d = feasible_c3_lattice(base_c1, base_c2, scan)
    return GroupDescriptorV0(base_c1, base_c2, kernel, d)


def _require_member(g: GroupDescriptorV0, v: Rank3BundleClass) -> None:
    if v.c1 != g.base_c1 or v.c2 != g.base_c2:
        raise DomainError(
            f"class ({v.c1}, {v.c2}, {v.c3}) is not in the group over "
            f"({g.base_c1}, {g.base_c2})"
        )


def add(
    g: GroupDescriptorV0, v: Rank3BundleClass, w: Rank3BundleClass
) -> Rank3BundleClass:
    """Group sum: c1 and c2 stay fixed, c3 adds."""
    _require_member(g, v)
    _require_member(g, w)
    return Rank3BundleClass(g.base_c1, g.base_c2, v.c3 + w.c3)


def iterate(g: GroupDescriptorV0, w: Rank3BundleClass, n: int) -> Rank3BundleClass:
    """n-fold group sum of w with itself: c3 becomes n * c3(w)."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"iteration count must be a positive integer, got {n!r}")
    _require_member(g, w)
    return Rank3BundleClass(g.base_c1, g.base_c2, n * w.c3)


def smallest_nonsplit_multiple(
    g: GroupDescriptorV0, w: Rank3BundleClass, bound: int
) -> int | None:
    """Least 1 <= n <= bound whose n-fold sum of w is not a sum of line bundles.

    None when every multiple within the bound splits, which is guaranteed
    to persist forever when c3(w) = 0 and the base itself splits.
    """
    if not isinstance(bound, int) or bound < 1:
        raise DomainError(f"bound must be a positive integer, got {bound!r}")
    _require_member(g, w)
    for n in range(1, bound + 1):
        m = iterate(g, w, n)
        if is_split_realizable(m.c1, m.c2, m.c3) is None:
            return n
    return None


def _next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""

    def is_prime(m: int) -> bool:
        if m < 2:
            return False
        if m % 2 == 0:
            return m == 2
        i = 3
        while i * i <= m:
            if m % i == 0:
                return False
            i += 2
        return True

    candidate = n + 1
    while not is_prime(candidate):
        candidate += 1
    return candidate


def prime_witness(g: GroupDescriptorV0, w: Rank3BundleClass) -> tuple[int, bool]:
    """Prime p and whether the p-fold sum of w fails to split.

    p is the smallest prime exceeding max(3|c1(w)|, 3|c3(w)|).  For such
    p the p-fold sum of a class with c3 != 0 can never be a sum of line
    bundles (any factorization would force a root divisible by p, making
    the root sum too large), so ``verified`` is expected to be True; a
    False would contradict that argument and is reported, not hidden.
    """
    _require_member(g, w)
    if w.c3 == 0:
        raise DomainError("prime witness needs a class with c3 != 0")
    p = _next_prime(max(3 * abs(w.c1), 3 * abs(w.c3)))
    m = iterate(g, w, p)
    return p, is_split_realizable(m.c1, m.c2, m.c3) is None


def smith_normal_form(matrix) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix.

    Plain lists of lists, arbitrary-precision entries.  Row and column
    operations are unimodular, so for a square nonsingular input the
    product of the invariants equals |det|.  Zeros pad the tail when the
    rank falls short of min(rows, cols).
    """
    if not matrix or not all(isinstance(row, (list, tuple)) for row in matrix):
        raise DomainError("matrix must be a non-empty sequence of rows")
    m = len(matrix)
    n = len(matrix[0])
    if n == 0 or any(len(row) != n for row in matrix):
        raise DomainError("matrix rows must be non-empty and of equal length")
    a = [list(row) for row in matrix]
    if not all(isinstance(x, int) for row in a for x in row):
        raise DomainError("matrix entries must be integers")

    invariants: list[int] = []
    t = 0
    size = min(m, n)
    while t < size:
        # pivot: smallest nonzero |entry| of the trailing submatrix
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]

        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                q, r = divmod(a[i][t], a[t][t])
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if r:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j]:
                q, r = divmod(a[t][j], a[t][t])
                for row in a:
                    row[j] -= q * row[t]
                if r:
                    dirty = True
        if dirty:
            continue  # smaller remainders appeared; reselect the pivot
        # divisibility: fold in any entry the pivot does not divide
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            continue
        invariants.append(a[t][t])
        t += 1
    invariants.extend([0] * (size - len(invariants)))
    return invariants


def subgroup_index(g: GroupDescriptorV0, w: Rank3BundleClass):
    """Index of the subgroup generated by w; math.inf when c3(w) = 0.

    With k = c3(w) / c3_generator, a trivial kernel gives |k| directly.
    A Z/3 kernel gives the cokernel order of the presentation
    [[k, r], [0, 3]], whose Smith-form determinant 3|k| is independent
    of the unknown coordinate r; independence is verified over all
    residues rather than assumed.
    """
    _require_member(g, w)
    if w.c3 == 0:
        return math.inf
    k, remainder = divmod(w.c3, g.c3_generator)
    if remainder:
        raise ConsistencyError(
            f"c3 = {w.c3} is not a multiple of the lattice generator "
            f"{g.c3_generator}; the lattice structure is broken"
        )
    if g.kernel_kind == KERNEL_TRIVIAL:
        return abs(k)
    indices = {
        math.prod(smith_normal_form([[k, r], [0, 3]])) for r in (0, 1, 2)
    }
    if len(indices) != 1:
        raise ConsistencyError(
            "subgroup index depends on the untracked coordinate; "
            f"got {sorted(indices)}"
        )
    return indices.pop()
