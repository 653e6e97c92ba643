"""Compactly supported distributions on the reals, stored as exact cdfs.

A distribution is a right-continuous increasing step-and-ramp function from
0 to 1: point masses are jumps, uniform stretches are affine ramps.  The
representation is canonical, so two equal distributions compare equal
structurally, and the atom/segment decomposition is recoverable exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import LevelError, SpecError
from .pwfn import Breakpoint, PiecewiseMonotone, _slope, rat


@dataclass(frozen=True)
class Cdf:
    """Canonical cdf of a compactly supported distribution."""

    fn: PiecewiseMonotone

    def __post_init__(self):
        f = self.fn
        if f.is_bounded or f.tails != (0, 0):
            raise SpecError("a cdf lives on the reals with flat tails")
        bps = f.breakpoints
        if bps[0].left != 0 or bps[-1].right != 1:
            raise SpecError("a cdf must rise from 0 to 1")
        if any(b.at != b.right for b in bps):
            raise SpecError("a cdf must be right-continuous")

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        """Smallest closed interval carrying all the mass."""
        return self.fn.lo, self.fn.hi

    def __call__(self, x) -> Fraction:
        return self.fn(x)

    def eval3(self, x) -> tuple[Fraction, Fraction, Fraction]:
        return self.fn.eval3(x)


# -- components and constructors --------------------------------------------


@dataclass(frozen=True)
class Atom:
    x: Fraction
    w: Fraction


@dataclass(frozen=True)
class Uniform:
    a: Fraction
    b: Fraction
    w: Fraction


def atom(x, w) -> Atom:
    return Atom(rat(x), rat(w))


def unif(a, b, w) -> Uniform:
    return Uniform(rat(a), rat(b), rat(w))


Component = Atom | Uniform


def make(components: Iterable[Component]) -> Cdf:
    """Canonical cdf of a mixture of point masses and uniform stretches.

    Weights must be positive and sum to one; coincident atoms merge and
    overlapping uniforms stack.
    """
    comps = list(components)
    total = Fraction(0)
    atoms: dict[Fraction, Fraction] = {}
    segs: list[Uniform] = []
    for c in comps:
        if c.w <= 0:
            raise SpecError(f"component weight {c.w} is not positive")
        total += c.w
        if isinstance(c, Atom):
            atoms[c.x] = atoms.get(c.x, Fraction(0)) + c.w
        else:
            if c.a >= c.b:
                raise SpecError(f"uniform needs a < b, got [{c.a}, {c.b}]")
            segs.append(c)
    if total != 1:
        raise SpecError(f"weights sum to {total}, not 1")

    xs = sorted(set(atoms) | {s.a for s in segs} | {s.b for s in segs})

    def mass_below_or_at(x: Fraction) -> Fraction:
        m = sum((w for loc, w in atoms.items() if loc <= x), Fraction(0))
        for s in segs:
            if x >= s.b:
                m += s.w
            elif x > s.a:
                m += s.w * (x - s.a) / (s.b - s.a)
        return m

    bps = []
    for x in xs:
        at = mass_below_or_at(x)
        left = at - atoms.get(x, Fraction(0))
        bps.append(Breakpoint(x, left, at, at))
    return Cdf(PiecewiseMonotone(tuple(bps), (Fraction(0), Fraction(0))))


def dirac(x) -> Cdf:
    return make([atom(x, 1)])


def bernoulli(p) -> Cdf:
    """Mass p at 1 and the rest at 0; degenerate at p = 0 or 1."""
    p = rat(p)
    if not 0 <= p <= 1:
        raise SpecError("bernoulli parameter must lie in [0, 1]")
    if p == 0:
        return dirac(0)
    if p == 1:
        return dirac(1)
    return make([atom(0, 1 - p), atom(1, p)])


def uniform(a, b) -> Cdf:
    return make([unif(a, b, 1)])


def two_point(alpha, y, z) -> Cdf:
    """Mass alpha at y and 1 - alpha at z."""
    alpha = rat(alpha)
    return make([atom(y, alpha), atom(z, 1 - alpha)])


def decompose(F: Cdf) -> tuple[list[Atom], list[Uniform]]:
    """Split a canonical cdf back into its atoms and uniform stretches."""
    bps = F.fn.breakpoints
    atoms = [Atom(b.x, b.at - b.left) for b in bps if b.at > b.left]
    segs = [
        Uniform(a.x, b.x, b.left - a.right)
        for a, b in zip(bps, bps[1:])
        if b.left > a.right
    ]
    return atoms, segs


# -- quantiles ---------------------------------------------------------------


def left_quantile(F: Cdf, t) -> Fraction:
    """inf{x : F(x) >= t} for t in (0, 1]; always attained."""
    t = rat(t)
    if not 0 < t <= 1:
        raise LevelError(f"left quantile level must be in (0, 1], got {t}")
    bps = F.fn.breakpoints
    for i, b in enumerate(bps):
        if b.at >= t:
            if i > 0:
                a = bps[i - 1]
                lo_v, hi_v = a.right, b.left
                if lo_v < t <= hi_v:
                    return a.x + (t - lo_v) / _slope(a.x, lo_v, b.x, hi_v)
            return b.x
    raise AssertionError("unreachable: cdf tops out at 1")


def right_quantile(F: Cdf, t) -> Fraction:
    """inf{x : F(x) > t} for t in [0, 1)."""
    t = rat(t)
    if not 0 <= t < 1:
        raise LevelError(f"right quantile level must be in [0, 1), got {t}")
    bps = F.fn.breakpoints
    for i, b in enumerate(bps):
        if b.at > t:
            if i > 0:
                a = bps[i - 1]
                lo_v, hi_v = a.right, b.left
                if lo_v <= t < hi_v:
                    return a.x + (t - lo_v) / _slope(a.x, lo_v, b.x, hi_v)
            return b.x
    raise AssertionError("unreachable: cdf tops out at 1")


# -- order, moments, equality ------------------------------------------------


def merged_abscissas(F: Cdf, G: Cdf) -> list[Fraction]:
    return sorted({b.x for b in F.fn.breakpoints} | {b.x for b in G.fn.breakpoints})


def leq_st(F: Cdf, G: Cdf) -> bool:
    """First-order stochastic dominance: F everywhere at least as high as G.

    Decided exactly by comparing the two piecewise representations,
    including one-sided limits, on the merged breakpoint set.
    """
    for x in merged_abscissas(F, G):
        fl, fa, fr = F.eval3(x)
        gl, ga, gr = G.eval3(x)
        if fl < gl or fa < ga or fr < gr:
            return False
    return True


def first_dominance_failure(F: Cdf, G: Cdf):
    """Smallest merged breakpoint where F dips below G, or None."""
    for x in merged_abscissas(F, G):
        ft = F.eval3(x)
        gt = G.eval3(x)
        for i in (1, 0, 2):
            if ft[i] < gt[i]:
                return x, ft[i], gt[i]
    return None


def equals(F: Cdf, G: Cdf) -> bool:
    """Pointwise equality of cdfs, including all one-sided limits."""
    return F.fn == G.fn


def first_difference(F: Cdf, G: Cdf):
    """Smallest merged breakpoint where two cdfs differ: (x, F-val, G-val).

    Returns None exactly when the cdfs are equal.
    """
    for x in merged_abscissas(F, G):
        ft = F.eval3(x)
        gt = G.eval3(x)
        if ft != gt:
            for i in (1, 0, 2):
                if ft[i] != gt[i]:
                    return x, ft[i], gt[i]
    return None


def mean(F: Cdf) -> Fraction:
    """Exact first moment: atoms weigh their location, ramps their midpoint."""
    atoms, segs = decompose(F)
    m = sum((a.x * a.w for a in atoms), Fraction(0))
    m += sum((s.w * (s.a + s.b) / 2 for s in segs), Fraction(0))
    return m
