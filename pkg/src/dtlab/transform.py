"""The transform algebra on distributions.

Two primitive families act on cdfs: reweighting the cumulative probability
through an increasing map of [0, 1] (a distortion), and pushing the
underlying outcome through an increasing map of the reals (a utility
pushforward).  Words over the primitives evaluate right to left; admissible
words collapse to the normal shape distort-after-push.  Everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Union

from . import pwfn
from .dist import Atom, Cdf, Uniform, decompose, make, mean
from .errors import ClassError, LevelError, NormalFormError, NotInvertibleError
from .pwfn import (
    Breakpoint,
    Classification,
    PiecewiseMonotone,
    classify,
    rat,
)


@dataclass(frozen=True)
class Distortion:
    """Increasing map of [0, 1] onto itself fixing both endpoints."""

    fn: PiecewiseMonotone
    cls: Classification = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        f = self.fn
        if not f.is_bounded or f.lo != 0 or f.hi != 1:
            raise ClassError("a distortion is defined on [0, 1]")
        if f(0) != 0 or f(1) != 1:
            raise ClassError("a distortion fixes 0 and 1")
        object.__setattr__(self, "cls", classify(f))

    def __call__(self, t) -> Fraction:
        return self.fn(t)


@dataclass(frozen=True)
class Utility:
    """Increasing map of the reals, with linear tails."""

    fn: PiecewiseMonotone
    cls: Classification = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.fn.is_bounded:
            raise ClassError("a utility is defined on all reals")
        object.__setattr__(self, "cls", classify(self.fn))

    def __call__(self, x) -> Fraction:
        return self.fn(x)


def identity_distortion() -> Distortion:
    return Distortion(pwfn.identity(0, 1))


def identity_utility() -> Utility:
    return Utility(pwfn.identity())


def affine_utility(slope, intercept) -> Utility:
    return Utility(pwfn.affine(slope, intercept))


@dataclass(frozen=True)
class Distort:
    d: Distortion


@dataclass(frozen=True)
class Push:
    u: Utility


Primitive = Union[Distort, Push]


@dataclass(frozen=True)
class TransformWord:
    """Finite composition of primitives, applied right to left."""

    steps: tuple[Primitive, ...] = ()

    def __call__(self, F: Cdf) -> Cdf:
        return apply_word(self, F)


@dataclass(frozen=True)
class RduForm:
    """Collapsed shape of an admissible word: push by u, then distort by d."""

    d: Distortion
    u: Utility

    def __call__(self, F: Cdf) -> Cdf:
        return apply_distortion(self.d, apply_utility(self.u, F))

    def as_word(self) -> TransformWord:
        return TransformWord((Distort(self.d), Push(self.u)))


Transform = Callable[[Cdf], Cdf]


# -- primitive actions -------------------------------------------------------


def apply_distortion(d: Distortion, F: Cdf) -> Cdf:
    """Right limit of d composed with the cdf, as a canonical cdf.

    The right limit is read off the breakpoint triples, never approximated;
    the result is right-continuous by construction even when d is not, and
    its support stays inside F's support.
    """
    h = pwfn.compose(d.fn, F.fn)
    bps = tuple(Breakpoint(b.x, b.left, b.right, b.right) for b in h.breakpoints)
    return Cdf(PiecewiseMonotone(bps, h.tails))


def apply_utility(u: Utility, F: Cdf) -> Cdf:
    """Distribution of u(X) when X is distributed by F, computed exactly.

    Atoms land at the pointwise image; a uniform stretch is cut at the
    breakpoints of u, each affine piece rescaling to a uniform stretch and
    each flat piece collapsing its mass into an atom.  The open gap of a
    jump of u receives no mass.
    """
    atoms, segs = decompose(F)
    out: list[Atom | Uniform] = [Atom(u(a.x), a.w) for a in atoms]
    for s in segs:
        density = s.w / (s.b - s.a)
        cuts = [s.a] + [x for x in u.fn._xs if s.a < x < s.b] + [s.b]
        for p, q in zip(cuts, cuts[1:]):
            lo = u.fn.eval3(p)[2]
            hi = u.fn.eval3(q)[0]
            m = density * (q - p)
            if lo == hi:
                out.append(Atom(lo, m))
            else:
                out.append(Uniform(lo, hi, m))
    return make(out)


def apply_word(word: TransformWord, F: Cdf) -> Cdf:
    """Apply the primitives right to left; the empty word is the identity."""
    for step in reversed(word.steps):
        if isinstance(step, Distort):
            F = apply_distortion(step.d, F)
        else:
            F = apply_utility(step.u, F)
    return F


# -- composition and normal form ---------------------------------------------


def compose_utilities(u1: Utility, u2: Utility) -> Utility:
    """u1 o u2; pushing forward by it equals pushing by u2 then u1."""
    return Utility(pwfn.compose(u1.fn, u2.fn))


def compose_distortions(d2: Distortion, d1: Distortion) -> Distortion:
    """d2 o d1, valid as a transform collapse only for right-continuous d2.

    With a right-continuous outer function the pointwise composition
    commutes with the right limit taken by `apply_distortion`, so applying
    the result equals applying d1 then d2.  Anything else is refused;
    callers keep evaluating word-wise.
    """
    if not d2.cls.right_continuous:
        raise ClassError("outer distortion must be right-continuous to collapse")
    return Distortion(pwfn.compose(d2.fn, d1.fn))


def normal_form(word: TransformWord) -> RduForm:
    """Collapse an admissible word to a single distort-after-push shape.

    Admissible means: every pushforward uses a continuous utility (so it
    commutes with every distortion), and every distortion except possibly
    the leftmost is right-continuous (so the distortion run collapses).
    """
    ds: list[Distortion] = []
    us: list[Utility] = []
    for step in word.steps:
        if isinstance(step, Push):
            if not step.u.cls.continuous:
                raise NormalFormError("pushforwards must use continuous utilities")
            us.append(step.u)
        else:
            if ds and not step.d.cls.right_continuous:
                raise NormalFormError(
                    "only the leftmost distortion may fail right-continuity"
                )
            ds.append(step.d)
    # Non-leftmost factors are right-continuous, so the inner run collapses
    # to a right-continuous function and the leftmost composes onto it.
    d = (
        reduce(lambda acc, nxt: Distortion(pwfn.compose(acc.fn, nxt.fn)), ds)
        if ds
        else identity_distortion()
    )
    u = reduce(compose_utilities, us) if us else identity_utility()
    return RduForm(d, u)


# -- conjugation --------------------------------------------------------------


def conjugate_utility(u1: Utility, u2: Utility) -> Utility:
    """The unique u3 with u3 o u1 = u1 o u2, namely u1 o u2 o u1^{-1}.

    u1 must be strictly increasing, continuous and onto the reals.
    """
    if not (u1.cls.strictly_increasing and u1.cls.surjective):
        raise NotInvertibleError("conjugating utility must be a strict surjection")
    inv = pwfn.strict_inverse(u1.fn)
    return Utility(pwfn.compose(u1.fn, pwfn.compose(u2.fn, inv)))


def conjugate_distortion(d: Distortion, d1: Distortion) -> Distortion:
    """The unique d2 with d2 o d = d o d1, namely d o d1 o d^{-1}.

    d must be strictly increasing and continuous (hence a bijection of
    [0, 1]); d1 may be any distortion.  Swapping arguments to the inverse
    direction is ``conjugate_distortion(inverse_distortion(d), d1)``.
    """
    if not (d.cls.strictly_increasing and d.cls.continuous):
        raise NotInvertibleError("conjugating distortion must be a continuous bijection")
    inv = pwfn.strict_inverse(d.fn)
    return Distortion(pwfn.compose(d.fn, pwfn.compose(d1.fn, inv)))


def inverse_distortion(d: Distortion) -> Distortion:
    if not (d.cls.strictly_increasing and d.cls.continuous):
        raise NotInvertibleError("distortion is not invertible")
    return Distortion(pwfn.strict_inverse(d.fn))


def inverse_utility(u: Utility) -> Utility:
    if not (u.cls.strictly_increasing and u.cls.surjective):
        raise NotInvertibleError("utility is not invertible")
    return Utility(pwfn.strict_inverse(u.fn))


# -- functionals and risk measures --------------------------------------------


def expected_utility(u: Utility, F: Cdf) -> Fraction:
    """Mean of the pushforward: the integral of u against F."""
    return mean(apply_utility(u, F))


def dual_utility(d: Distortion, F: Cdf) -> Fraction:
    """Mean of the distorted distribution."""
    return mean(apply_distortion(d, F))


def rank_dependent_value(d: Distortion, u: Utility, F: Cdf) -> Fraction:
    """Mean after pushing through u and distorting by d."""
    return mean(apply_distortion(d, apply_utility(u, F)))


def var_distortion(p) -> Distortion:
    return Distortion(pwfn.step_open(p))


def es_distortion(alpha) -> Distortion:
    """t -> max(0, (t - (1 - alpha)) / alpha) on [0, 1]."""
    alpha = rat(alpha)
    if alpha == 1:
        return identity_distortion()
    return Distortion(pwfn.from_points([(0, 0), (1 - alpha, 0), (1, 1)]))


def value_at_risk(p, F: Cdf) -> Fraction:
    """Upper quantile at level p, computed as a distorted mean."""
    p = rat(p)
    if not 0 < p < 1:
        raise LevelError(f"value-at-risk level must be in (0, 1), got {p}")
    return dual_utility(var_distortion(p), F)


def expected_shortfall(alpha, F: Cdf) -> Fraction:
    """Average of the upper alpha tail of the quantile function."""
    alpha = rat(alpha)
    if not 0 < alpha <= 1:
        raise LevelError(f"expected-shortfall level must be in (0, 1], got {alpha}")
    return dual_utility(es_distortion(alpha), F)
