"""Integer vector families in strictly convex position.

The outer construction walks a 3D grid along vectors lying on the
paraboloid z = x^2 + y^2.  Every vector of ``W`` is a vertex of the
convex hull of ``W'`` (the set of moves a competing path could use),
which is what makes the critical paths unique shortest paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple


class IntVec3(NamedTuple):
    x: int
    y: int
    z: int

    def __add__(self, other):  # type: ignore[override]
        return IntVec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return IntVec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return IntVec3(-self.x, -self.y, -self.z)

    def scale(self, k: int) -> IntVec3:
        return IntVec3(k * self.x, k * self.y, k * self.z)

    def dot(self, other) -> int:
        return self.x * other[0] + self.y * other[1] + self.z * other[2]


def _check_r(r: int) -> None:
    if not isinstance(r, int) or isinstance(r, bool):
        raise TypeError(f"r must be an int, got {type(r).__name__}")
    if r < 2 or r % 2:
        raise ValueError(f"r must be even and >= 2, got {r}")


def gen_w1(r: int) -> tuple[IntVec3, ...]:
    """(x, 0, x^2) for x in [r/2, r]."""
    _check_r(r)
    return tuple(IntVec3(x, 0, x * x) for x in range(r // 2, r + 1))


def gen_w2(r: int) -> tuple[IntVec3, ...]:
    """(0, y, y^2) for y in [r/2, r]."""
    _check_r(r)
    return tuple(IntVec3(0, y, y * y) for y in range(r // 2, r + 1))


# -- stripes -----------------------------------------------------------------

STRICT = "strict"
RELAXED = "relaxed"


@dataclass(frozen=True)
class StripeIndexing:
    """Integer stripes I_1 < I_2 < ... < I_c inside [r/2, r].

    ``width_bound`` and ``gap_bound`` are the nominal targets; the
    ``achieved_*`` fields are what integer rounding actually produced.
    """

    r: int
    c: int
    profile: str
    intervals: tuple[tuple[int, int], ...]
    width_bound: Fraction
    gap_bound: Fraction

    def stripe_of_coord(self, v: int) -> int | None:
        for i, (lo, hi) in enumerate(self.intervals, start=1):
            if lo <= v <= hi:
                return i
        return None

    @property
    def achieved_max_width(self) -> int:
        return max(hi - lo for lo, hi in self.intervals)

    @property
    def achieved_min_gap(self) -> int | None:
        if len(self.intervals) < 2:
            return None
        return min(b[0] - a[1] for a, b in zip(self.intervals, self.intervals[1:]))

    def check(self) -> list[str]:
        """Return violated invariants (empty when all hold)."""
        bad = []
        lo0, hi0 = self.r // 2, self.r
        for i, (lo, hi) in enumerate(self.intervals, start=1):
            if lo > hi:
                bad.append(f"I_{i} is empty")
            if lo < lo0 or hi > hi0:
                bad.append(f"I_{i}=[{lo},{hi}] leaves [{lo0},{hi0}]")
            if hi - lo > self.width_bound:
                bad.append(f"I_{i} wider than {self.width_bound}")
        for i, (a, b) in enumerate(zip(self.intervals, self.intervals[1:]), start=1):
            if b[0] <= a[1]:
                bad.append(f"I_{i} and I_{i + 1} overlap")
        return bad


def gen_intervals(
    r: int,
    c: int,
    profile: str = STRICT,
    alpha: Fraction | None = None,
    beta: Fraction | None = None,
) -> StripeIndexing:
    """Build the stripe intervals for ``c`` stripes.

    ``strict`` places stripe i at r/2 + (i-1) r/(2c) with width
    r/(16 c^3) and needs r >= 16 c^3.  ``relaxed`` uses width ``alpha*r``
    and spacing ``beta*r`` (defaults 1/(4c^2) and 1/(2c)).  Each stripe is
    the set of integers inside its real interval.
    """
    _check_r(r)
    if not isinstance(c, int) or c < 1:
        raise ValueError(f"c must be a positive int, got {c!r}")
    if profile == STRICT:
        if alpha is not None or beta is not None:
            raise ValueError("alpha/beta only apply to the relaxed profile")
        if r < 16 * c**3:
            raise ValueError(f"strict stripes need r >= 16c^3 = {16 * c**3}, got r={r}")
        alpha, beta = Fraction(1, 16 * c**3), Fraction(1, 2 * c)
    elif profile == RELAXED:
        alpha = Fraction(1, 4 * c * c) if alpha is None else Fraction(alpha)
        beta = Fraction(1, 2 * c) if beta is None else Fraction(beta)
        if alpha < 0 or beta <= 0:
            raise ValueError("alpha must be >= 0 and beta > 0")
        if (c - 1) * beta + alpha > Fraction(1, 2):
            raise ValueError("stripes do not fit in [r/2, r]: need (c-1)*beta + alpha <= 1/2")
    else:
        raise ValueError(f"unknown stripe profile {profile!r}")

    intervals = []
    for i in range(c):
        lo = Fraction(r, 2) + i * beta * r
        # integer points of the real interval [lo, lo + alpha r]
        ilo, ihi = math.ceil(lo), math.floor(lo + alpha * r)
        if ilo > ihi:
            raise ValueError(f"stripe {i + 1} = [{lo}, {lo + alpha * r}] holds no integer (r={r}, c={c})")
        intervals.append((ilo, ihi))
    for (_, hi), (lo, _) in zip(intervals, intervals[1:]):
        if lo <= hi:
            raise ValueError(f"stripes overlap after rounding (r={r}, c={c})")
    return StripeIndexing(r, c, profile, tuple(intervals), alpha * r, beta * r)


# -- families ----------------------------------------------------------------


@dataclass(frozen=True)
class VectorFamily:
    """W1, W2 and the sum set W, plus stripe labels when striped.

    ``pairs`` lists the (w1, w2) generating pairs of W, one per element,
    sorted lexicographically by w1 + w2.
    """

    r: int
    w1: tuple[IntVec3, ...]
    w2: tuple[IntVec3, ...]
    pairs: tuple[tuple[IntVec3, IntVec3], ...]
    stripes: StripeIndexing | None = None
    stripe_of: dict[IntVec3, int] = field(default_factory=dict)

    @property
    def w(self) -> tuple[IntVec3, ...]:
        return tuple(a + b for a, b in self.pairs)

    @property
    def c(self) -> int | None:
        return None if self.stripes is None else self.stripes.c

    def index1(self, v: IntVec3) -> int:
        return self.w1.index(v)

    def index2(self, v: IntVec3) -> int:
        return self.w2.index(v)

    def stripe_members(self, i: int) -> tuple[tuple[IntVec3, ...], tuple[IntVec3, ...]]:
        """W1 and W2 vectors of stripe i, in increasing order."""
        return (
            tuple(v for v in self.w1 if self.stripe_of.get(v) == i),
            tuple(v for v in self.w2 if self.stripe_of.get(v) == i),
        )


def gen_w(r: int) -> VectorFamily:
    """W = W1 + W2 = {(x, y, x^2 + y^2)}, with (r/2 + 1)^2 elements."""
    w1, w2 = gen_w1(r), gen_w2(r)
    pairs = sorted(((a, b) for a in w1 for b in w2), key=lambda p: p[0] + p[1])
    return VectorFamily(r, w1, w2, tuple(pairs))


def gen_striped_families(
    r: int,
    c: int,
    profile: str = STRICT,
    alpha: Fraction | None = None,
    beta: Fraction | None = None,
) -> VectorFamily:
    """Restrict W1, W2 to the stripes; W keeps only same-stripe sums."""
    st = gen_intervals(r, c, profile, alpha, beta)
    stripe_of: dict[IntVec3, int] = {}
    w1, w2 = [], []
    for v in gen_w1(r):
        i = st.stripe_of_coord(v.x)
        if i is not None:
            w1.append(v)
            stripe_of[v] = i
    for v in gen_w2(r):
        i = st.stripe_of_coord(v.y)
        if i is not None:
            w2.append(v)
            stripe_of[v] = i
    pairs = sorted(
        ((a, b) for a in w1 for b in w2 if stripe_of[a] == stripe_of[b]),
        key=lambda p: p[0] + p[1],
    )
    for a, b in pairs:
        stripe_of[a + b] = stripe_of[a]
    return VectorFamily(r, tuple(w1), tuple(w2), tuple(pairs), st, stripe_of)


def assemble_wprime(fam: VectorFamily) -> tuple[IntVec3, ...]:
    """W u -W u (W1 - W2) u (W2 - W1), deduplicated and sorted."""
    out = set(fam.w)
    out.update(-v for v in fam.w)
    for a in fam.w1:
        for b in fam.w2:
            out.add(a - b)
            out.add(b - a)
    return tuple(sorted(out))


# -- extreme point certificate -----------------------------------------------


@dataclass(frozen=True)
class CertificateReport:
    ok: bool
    checked: int
    # (w, u, <c,u>, <c,w>) for every u that ties or beats w
    violations: tuple[tuple[IntVec3, IntVec3, int, int], ...]


def witness_direction(w: IntVec3) -> IntVec3:
    """(2x, 2y, -1): the paraboloid normal at w."""
    return IntVec3(2 * w.x, 2 * w.y, -1)


def certify_extreme_points(
    fam: VectorFamily, wprime: tuple[IntVec3, ...] | None = None
) -> CertificateReport:
    """Check that each w in W is the unique maximiser of <(2x,2y,-1), .> over W'.

    Never raises on a failed check; failures are listed in the report.
    """
    if wprime is None:
        wprime = assemble_wprime(fam)
    bad = []
    checked = 0
    for w in fam.w:
        cvec = witness_direction(w)
        top = w.dot(cvec)
        for u in wprime:
            checked += 1
            if u != w and u.dot(cvec) >= top:
                bad.append((w, u, u.dot(cvec), top))
    return CertificateReport(not bad, checked, tuple(bad))
