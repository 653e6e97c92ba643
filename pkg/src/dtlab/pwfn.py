"""Exact calculus of increasing piecewise-linear functions with jumps.

Every value is a `fractions.Fraction`; nothing is ever rounded.  A function
is stored as a strictly x-sorted list of breakpoints, each carrying the
triple (limit from below, value, limit from above), with affine segments
joining the right limit of one breakpoint to the left limit of the next.
The domain is either a closed interval (breakpoints mark its ends) or all
of the reals, in which case the function continues past the extreme
breakpoints with linear tails of nonnegative slope.

Construction always canonicalises: breakpoints that sit on the interior of
an affine stretch and carry no jump are dropped, so two representations of
the same function compare equal with plain ``==``.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError, NotInvertibleError

Rat = Fraction


def rat(value) -> Fraction:
    """Coerce ints and strings like ``"3/4"`` to an exact rational."""
    return Fraction(value)


def format_rat(q: Fraction) -> str:
    """Serialize as an integer literal or ``p/q``."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class _Infinity:
    """Signed infinity marker returned by `right_inverse`."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self):
        return "+inf" if self.sign > 0 else "-inf"

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __gt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign > other.sign
        return self.sign > 0

    def __le__(self, other):
        return self == other or self < other

    def __ge__(self, other):
        return self == other or self > other


NEG_INF = _Infinity(-1)
POS_INF = _Infinity(1)

ExtendedRat = Union[Fraction, _Infinity]


@dataclass(frozen=True)
class Breakpoint:
    """One abscissa with its (left limit, value, right limit) triple."""

    x: Fraction
    left: Fraction
    at: Fraction
    right: Fraction


def bp(x, left, at=None, right=None) -> Breakpoint:
    """Breakpoint from rationals; ``bp(x, v)`` is the continuous point (v, v, v)."""
    x = rat(x)
    left = rat(left)
    at = left if at is None else rat(at)
    right = at if right is None else rat(right)
    return Breakpoint(x, left, at, right)


def _slope(x0: Fraction, y0: Fraction, x1: Fraction, y1: Fraction) -> Fraction:
    return (y1 - y0) / (x1 - x0)


@dataclass(frozen=True)
class PiecewiseMonotone:
    """Increasing piecewise-linear function with jumps, in canonical form.

    ``tails is None`` means the domain is the closed interval between the
    first and last breakpoint; otherwise the domain is all reals and
    ``tails`` holds the (lower, upper) linear slopes.
    """

    breakpoints: tuple[Breakpoint, ...]
    tails: tuple[Fraction, Fraction] | None = None
    _xs: tuple[Fraction, ...] = field(
        init=False, repr=False, compare=False, hash=False, default=()
    )

    def __post_init__(self):
        bps = tuple(self.breakpoints)
        if not bps:
            raise ValueError("at least one breakpoint is required")
        for b in bps:
            if not (b.left <= b.at <= b.right):
                raise ValueError(f"breakpoint triple out of order at x={b.x}")
        for a, c in zip(bps, bps[1:]):
            if a.x >= c.x:
                raise ValueError("breakpoint abscissas must be strictly increasing")
            if a.right > c.left:
                raise ValueError(f"function decreases between x={a.x} and x={c.x}")
        if self.tails is None:
            if len(bps) < 2:
                raise ValueError("a bounded domain needs breakpoints at both ends")
            if bps[0].left != bps[0].at or bps[-1].at != bps[-1].right:
                raise ValueError("endpoint limits must equal the endpoint values")
        else:
            lo, hi = self.tails
            if lo < 0 or hi < 0:
                raise ValueError("tail slopes must be nonnegative")
            object.__setattr__(self, "tails", (rat(lo), rat(hi)))
        object.__setattr__(self, "breakpoints", self._canonical(bps))
        object.__setattr__(self, "_xs", tuple(b.x for b in self.breakpoints))

    def _canonical(self, bps: tuple[Breakpoint, ...]) -> tuple[Breakpoint, ...]:
        n = len(bps)
        keep = []
        for i, b in enumerate(bps):
            if self.tails is None and (i == 0 or i == n - 1):
                keep.append(b)
                continue
            if not (b.left == b.at == b.right):
                keep.append(b)
                continue
            if i > 0:
                before = _slope(bps[i - 1].x, bps[i - 1].right, b.x, b.at)
            else:
                before = self.tails[0]
            if i < n - 1:
                after = _slope(b.x, b.at, bps[i + 1].x, bps[i + 1].left)
            else:
                after = self.tails[1]
            if before != after:
                keep.append(b)
        if not keep:
            # Pure affine function on the reals; anchor it at x = 0.
            b0 = bps[0]
            v = b0.at + self.tails[0] * (0 - b0.x)
            keep = [Breakpoint(Fraction(0), v, v, v)]
        return tuple(keep)

    # -- domain -----------------------------------------------------------

    @property
    def is_bounded(self) -> bool:
        return self.tails is None

    @property
    def lo(self) -> Fraction:
        return self.breakpoints[0].x

    @property
    def hi(self) -> Fraction:
        return self.breakpoints[-1].x

    def in_domain(self, x: Fraction) -> bool:
        return not self.is_bounded or self.lo <= x <= self.hi

    def value_bounds(self) -> tuple[ExtendedRat, ExtendedRat]:
        """Inf and sup of the function's values (closure of the range)."""
        first, last = self.breakpoints[0], self.breakpoints[-1]
        if self.is_bounded:
            return first.at, last.at
        lo = NEG_INF if self.tails[0] > 0 else first.left
        hi = POS_INF if self.tails[1] > 0 else last.right
        return lo, hi

    # -- evaluation -------------------------------------------------------

    def eval3(self, x) -> tuple[Fraction, Fraction, Fraction]:
        """The triple (f(x-), f(x), f(x+)), all read off symbolically.

        At the ends of a bounded domain the one-sided limit that points
        outside falls back to the endpoint value.
        """
        x = rat(x)
        bps, xs = self.breakpoints, self._xs
        if x < xs[0]:
            if self.is_bounded:
                raise DomainError(f"{x} is below the domain [{self.lo}, {self.hi}]")
            v = bps[0].left - self.tails[0] * (xs[0] - x)
            return v, v, v
        if x > xs[-1]:
            if self.is_bounded:
                raise DomainError(f"{x} is above the domain [{self.lo}, {self.hi}]")
            v = bps[-1].right + self.tails[1] * (x - xs[-1])
            return v, v, v
        i = bisect_left(xs, x)
        if xs[i] == x:
            b = bps[i]
            return b.left, b.at, b.right
        a, c = bps[i - 1], bps[i]
        v = a.right + _slope(a.x, a.right, c.x, c.left) * (x - a.x)
        return v, v, v

    def __call__(self, x) -> Fraction:
        return self.eval3(x)[1]

    def _flat_right_of(self, x: Fraction) -> bool | None:
        """Whether the function is constant just above x; None if x is the
        upper end of a bounded domain."""
        bps, xs = self.breakpoints, self._xs
        if x >= xs[-1]:
            if self.is_bounded:
                return None if x == xs[-1] else False
            return self.tails[1] == 0
        if x < xs[0]:
            return self.tails[0] == 0
        i = bisect_left(xs, x)
        if xs[i] != x:
            i -= 1
        return bps[i].right == bps[i + 1].left

    def _flat_left_of(self, x: Fraction) -> bool | None:
        bps, xs = self.breakpoints, self._xs
        if x <= xs[0]:
            if self.is_bounded:
                return None if x == xs[0] else False
            return self.tails[0] == 0
        if x > xs[-1]:
            return self.tails[1] == 0
        i = bisect_left(xs, x)
        return bps[i - 1].right == bps[i].left


# -- constructors ----------------------------------------------------------


def bounded(points: Iterable[Breakpoint | tuple]) -> PiecewiseMonotone:
    """Function on the closed interval spanned by the given breakpoints."""
    return PiecewiseMonotone(tuple(_as_bp(p) for p in points), None)


def on_reals(points: Iterable[Breakpoint | tuple], tail_lo, tail_hi) -> PiecewiseMonotone:
    """Function on all reals with the given linear tail slopes."""
    return PiecewiseMonotone(
        tuple(_as_bp(p) for p in points), (rat(tail_lo), rat(tail_hi))
    )


def _as_bp(p) -> Breakpoint:
    if isinstance(p, Breakpoint):
        return p
    return bp(*p)


def from_points(pairs: Sequence[tuple]) -> PiecewiseMonotone:
    """Continuous piecewise-linear interpolant through (x, y) pairs, on the
    bounded domain they span."""
    return bounded([bp(x, y) for x, y in pairs])


def identity(lo=None, hi=None) -> PiecewiseMonotone:
    """Identity on [lo, hi], or on all reals when no interval is given."""
    if lo is None:
        return affine(1, 0)
    return from_points([(lo, lo), (hi, hi)])


def affine(slope, intercept) -> PiecewiseMonotone:
    """x -> slope*x + intercept on the reals (slope >= 0)."""
    c = rat(intercept)
    return on_reals([bp(0, c)], slope, slope)


def step_open(c) -> PiecewiseMonotone:
    """Indicator of (c, 1] on [0, 1]: 0 up to and at c, 1 strictly above."""
    c = rat(c)
    return bounded([bp(0, 0), bp(c, 0, 0, 1), bp(1, 1)])


def step_closed(c) -> PiecewiseMonotone:
    """Indicator of [c, 1] on [0, 1]: jumps to 1 at c itself."""
    c = rat(c)
    return bounded([bp(0, 0), bp(c, 0, 1, 1), bp(1, 1)])


# -- classification --------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    increasing: bool
    strictly_increasing: bool
    continuous: bool
    left_continuous: bool
    right_continuous: bool
    surjective: bool


def classify(f: PiecewiseMonotone) -> Classification:
    """Exact membership flags, decided from the representation alone.

    ``surjective`` means the range has no gaps and covers the hull implied
    by the domain: the whole real line for unbounded functions, the closed
    interval between the endpoint values otherwise.
    """
    bps = f.breakpoints
    continuous = all(b.left == b.at == b.right for b in bps)
    left_continuous = all(b.left == b.at for b in bps)
    right_continuous = all(b.at == b.right for b in bps)
    strictly = all(a.right < c.left for a, c in zip(bps, bps[1:]))
    if not f.is_bounded:
        strictly = strictly and f.tails[0] > 0 and f.tails[1] > 0
    surjective = continuous and (f.is_bounded or (f.tails[0] > 0 and f.tails[1] > 0))
    return Classification(
        increasing=True,
        strictly_increasing=strictly,
        continuous=continuous,
        left_continuous=left_continuous,
        right_continuous=right_continuous,
        surjective=surjective,
    )


# -- operations ------------------------------------------------------------


def right_inverse(f: PiecewiseMonotone, x) -> ExtendedRat:
    """sup{y : f(y) <= x}, with sup of the empty set being -inf.

    Total on the rationals; the result is exact: a breakpoint abscissa, a
    segment preimage, or an infinity marker.
    """
    x = rat(x)
    bps = f.breakpoints
    # region above the last breakpoint
    if f.is_bounded:
        if bps[-1].at <= x:
            return bps[-1].x
    else:
        s = f.tails[1]
        if bps[-1].right <= x:
            if s == 0:
                return POS_INF
            return bps[-1].x + (x - bps[-1].right) / s
    # walk down through breakpoints and the segments above them
    for i in range(len(bps) - 1, -1, -1):
        b = bps[i]
        if b.at <= x:
            return b.x
        if i > 0:
            a = bps[i - 1]
            lo_v, hi_v = a.right, b.left
            if lo_v <= x:
                if hi_v <= x:
                    return b.x
                slope = _slope(a.x, lo_v, b.x, hi_v)
                return a.x + (x - lo_v) / slope
    # region below the first breakpoint
    if not f.is_bounded:
        s = f.tails[0]
        b0 = bps[0]
        if s == 0:
            return b0.x if b0.left <= x else NEG_INF
        if b0.left <= x:
            return b0.x
        return b0.x - (b0.left - x) / s
    return NEG_INF


def compose(f: PiecewiseMonotone, g: PiecewiseMonotone) -> PiecewiseMonotone:
    """Canonical representation of f o g.

    One-sided limits are composed symbolically: the right limit of f o g at
    x is f evaluated at g(x+), using f's own right limit there unless g is
    locally constant just above x.
    """
    glo, ghi = g.value_bounds()
    if f.is_bounded:
        if isinstance(glo, _Infinity) or isinstance(ghi, _Infinity) or glo < f.lo or ghi > f.hi:
            raise DomainError("range of the inner function leaves the outer domain")

    xs: set[Fraction] = {b.x for b in g.breakpoints}
    targets = [b.x for b in f.breakpoints]
    gbps = g.breakpoints
    for a, c in zip(gbps, gbps[1:]):
        lo_v, hi_v = a.right, c.left
        if lo_v == hi_v:
            continue
        slope = _slope(a.x, lo_v, c.x, hi_v)
        for t in targets:
            if lo_v <= t <= hi_v:
                xs.add(a.x + (t - lo_v) / slope)
    if not g.is_bounded:
        s_lo, s_hi = g.tails
        if s_lo > 0:
            for t in targets:
                if t <= gbps[0].left:
                    xs.add(gbps[0].x - (gbps[0].left - t) / s_lo)
        if s_hi > 0:
            for t in targets:
                if t >= gbps[-1].right:
                    xs.add(gbps[-1].x + (t - gbps[-1].right) / s_hi)

    out = []
    for x in sorted(xs):
        gl, ga, gr = g.eval3(x)
        at = f(ga)
        flat_r = g._flat_right_of(x)
        if flat_r is None:
            right = at
        elif flat_r:
            right = f(gr)
        else:
            right = f.eval3(gr)[2]
        flat_l = g._flat_left_of(x)
        if flat_l is None:
            left = at
        elif flat_l:
            left = f(gl)
        else:
            left = f.eval3(gl)[0]
        out.append(Breakpoint(x, left, at, right))

    if g.is_bounded:
        return PiecewiseMonotone(tuple(out), None)
    s_lo = f.tails[0] * g.tails[0] if g.tails[0] > 0 else Fraction(0)
    s_hi = f.tails[1] * g.tails[1] if g.tails[1] > 0 else Fraction(0)
    return PiecewiseMonotone(tuple(out), (s_lo, s_hi))


def strict_inverse(f: PiecewiseMonotone) -> PiecewiseMonotone:
    """Functional inverse of a strictly increasing continuous surjection.

    Round-trips exactly: composing either way yields the identity in
    canonical form.
    """
    c = classify(f)
    if not (c.strictly_increasing and c.continuous and c.surjective):
        raise NotInvertibleError(
            "only strictly increasing continuous surjections are invertible"
        )
    bps = tuple(Breakpoint(b.at, b.x, b.x, b.x) for b in f.breakpoints)
    tails = None if f.is_bounded else (1 / f.tails[0], 1 / f.tails[1])
    return PiecewiseMonotone(bps, tails)


def pseudo_inverse(f: PiecewiseMonotone) -> PiecewiseMonotone:
    """x -> sup{y : f(y) <= x} realised as a function on the reals.

    Requires both tail slopes positive so the supremum stays finite; flat
    stretches of f become jumps of the result and jumps become flats.
    """
    if f.is_bounded or f.tails[0] == 0 or f.tails[1] == 0:
        raise NotInvertibleError("pseudo-inverse needs positive tail slopes")
    values = sorted({v for b in f.breakpoints for v in (b.left, b.at, b.right)})
    out = []
    for v in values:
        at = right_inverse(f, v)
        left = _sup_strictly_below(f, v)
        assert isinstance(at, Fraction) and isinstance(left, Fraction)
        out.append(Breakpoint(v, left, at, at))
    return PiecewiseMonotone(tuple(out), (1 / f.tails[0], 1 / f.tails[1]))


def _sup_strictly_below(f: PiecewiseMonotone, x: Fraction) -> ExtendedRat:
    """sup{y : f(y) < x}; helper for the left limits of `pseudo_inverse`."""
    bps = f.breakpoints
    if not f.is_bounded:
        s = f.tails[1]
        if bps[-1].right < x:
            if s == 0:
                return POS_INF
            return bps[-1].x + (x - bps[-1].right) / s
    elif bps[-1].at < x:
        return bps[-1].x
    for i in range(len(bps) - 1, -1, -1):
        b = bps[i]
        if b.at < x:
            return b.x
        if i > 0:
            a = bps[i - 1]
            lo_v, hi_v = a.right, b.left
            if lo_v < x:
                if hi_v < x:
                    return b.x
                slope = _slope(a.x, lo_v, b.x, hi_v)
                return a.x + (x - lo_v) / slope
    if not f.is_bounded:
        s = f.tails[0]
        b0 = bps[0]
        if s == 0:
            return b0.x if b0.left < x else NEG_INF
        return b0.x if b0.left <= x else b0.x - (b0.left - x) / s
    return NEG_INF
