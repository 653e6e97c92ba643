"""Verification lab: law checkers, black-box extraction, seeded generators.

Checks run over a finite corpus of distributions and decide each law
bit-exactly; a failed law yields a Witness that pins down the first
discriminating point.  Generators are deterministic in their seed and
certify their output against the requested function class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Iterator, Sequence

from . import pwfn
from .dist import (
    Cdf,
    atom,
    bernoulli,
    dirac,
    decompose,
    first_difference,
    first_dominance_failure,
    left_quantile,
    leq_st,
    make,
    two_point,
    unif,
    uniform,
)
from .errors import ClassError, DomainError, ExtractionError
from .pwfn import NEG_INF, POS_INF, PiecewiseMonotone, format_rat, rat
from .transform import (
    Distort,
    Distortion,
    Push,
    RduForm,
    Transform,
    TransformWord,
    Utility,
    apply_distortion,
    apply_utility,
    apply_word,
    conjugate_distortion,
    conjugate_utility,
    inverse_distortion,
    inverse_utility,
    normal_form,
)


# -- corpus -------------------------------------------------------------------


@dataclass(frozen=True)
class Corpus:
    """Named distributions standing in for a universal quantifier."""

    entries: tuple[tuple[str, Cdf], ...]

    def __iter__(self) -> Iterator[tuple[str, Cdf]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def cdfs(self) -> list[Cdf]:
        return [F for _, F in self.entries]


def canonical_corpus() -> Corpus:
    """The fixed deterministic corpus: point masses, coin flips, a two-point
    mixture, uniforms, and an atom-plus-ramp mixture."""
    half = Fraction(1, 2)
    return Corpus(
        (
            ("dirac(-2)", dirac(-2)),
            ("dirac(0)", dirac(0)),
            ("dirac(1/2)", dirac(half)),
            ("dirac(3)", dirac(3)),
            ("bernoulli(1/4)", bernoulli(Fraction(1, 4))),
            ("bernoulli(1/2)", bernoulli(half)),
            ("two_point(1/3;-1,2)", two_point(Fraction(1, 3), -1, 2)),
            ("uniform(0,1)", uniform(0, 1)),
            ("uniform(-1,1)", uniform(-1, 1)),
            ("atom_plus_ramp", make([atom(0, half), unif(0, 1, half)])),
        )
    )


def corpus_with_random(seed: int, extra: int = 5) -> Corpus:
    """Canonical corpus plus `extra` seeded random distributions."""
    entries = list(canonical_corpus().entries)
    for i in range(extra):
        entries.append((f"seeded-cdf-{seed}-{i}", gen_cdf(seed * 1009 + i)))
    return Corpus(tuple(entries))


# -- results ------------------------------------------------------------------


@dataclass(frozen=True)
class Pass:
    law: str
    count: int

    def report(self) -> str:
        return f"PASS {self.law} {self.count}"


@dataclass(frozen=True)
class Witness:
    """A concrete law failure: on F, the two sides differ at x."""

    law: str
    name: str
    F: Cdf
    x: Fraction
    lhs: Fraction
    rhs: Fraction

    def report(self) -> str:
        return (
            f"WITNESS {self.law} F={self.name} x={format_rat(self.x)} "
            f"lhs={format_rat(self.lhs)} rhs={format_rat(self.rhs)}"
        )


CheckResult = Pass | Witness


@dataclass(frozen=True)
class LscResult:
    violated: bool
    premise_holds: bool
    limit_dominated: bool

    def report(self) -> str:
        return "VIOLATED lsc" if self.violated else "HOLDS lsc"


@dataclass(frozen=True)
class Extraction:
    """Recovered generator plus the probe data and the corpus round-trip."""

    recovered: Distortion | Utility
    samples: tuple[tuple[Fraction, Fraction], ...]
    round_trip_ok: bool
    witness: Witness | None


# -- checkers -----------------------------------------------------------------


def commute_check(
    t1: Transform, t2: Transform, corpus: Corpus, law: str = "commute"
) -> CheckResult:
    """Compare both composition orders on every corpus element.

    The witness point is the smallest breakpoint of the merged
    representation at which the two sides differ.
    """
    count = 0
    for name, F in corpus:
        lhs = t1(t2(F))
        rhs = t2(t1(F))
        diff = first_difference(lhs, rhs)
        if diff is not None:
            x, a, b = diff
            return Witness(law, name, F, x, a, b)
        count += 1
    return Pass(law, count)


def _composed_equal(
    outer_first: Transform,
    outer_second: Transform,
    inner_first: Transform,
    inner_second: Transform,
    corpus: Corpus,
    law: str,
) -> CheckResult:
    """Check outer_first o outer_second = inner_first o inner_second."""
    count = 0
    for name, F in corpus:
        lhs = outer_first(outer_second(F))
        rhs = inner_first(inner_second(F))
        diff = first_difference(lhs, rhs)
        if diff is not None:
            x, a, b = diff
            return Witness(law, name, F, x, a, b)
        count += 1
    return Pass(law, count)


def set_commute_check(
    form: RduForm,
    family: str,
    probes: Sequence[Distortion | Utility],
    corpus: Corpus,
    probe_anyway: bool = False,
) -> CheckResult:
    """Set commutation of a collapsed transform with a whole family.

    For each probe g a matching partner is built by conjugation and both
    orientations are verified exactly: partner o T = T o g, and
    T o partner' = g o T.  With ``probe_anyway`` a transform whose
    components fail the class preconditions is probed with a best-effort
    pseudo-inverse instead of raising, so genuine failures surface as
    witnesses.
    """
    total = 0
    if family == "utilities":
        u1 = form.u
        eligible = u1.cls.strictly_increasing and u1.cls.surjective
        if not eligible and not probe_anyway:
            raise ClassError("set commutation with utilities needs a strict surjection")
        if eligible:
            inv = inverse_utility(u1)
        else:
            inv = Utility(pwfn.pseudo_inverse(u1.fn))
        for probe in probes:
            partner = Utility(
                pwfn.compose(u1.fn, pwfn.compose(probe.fn, inv.fn))
            )
            res = _composed_equal(
                lambda F: apply_utility(partner, F),
                form,
                form,
                lambda F: apply_utility(probe, F),
                corpus,
                "set-commute-utilities",
            )
            if isinstance(res, Witness):
                return res
            total += res.count
            partner_r = Utility(
                pwfn.compose(inv.fn, pwfn.compose(probe.fn, u1.fn))
            )
            res = _composed_equal(
                form,
                lambda F: apply_utility(partner_r, F),
                lambda F: apply_utility(probe, F),
                form,
                corpus,
                "set-commute-utilities",
            )
            if isinstance(res, Witness):
                return res
            total += res.count
        return Pass("set-commute-utilities", total)

    if family == "distortions":
        d = form.d
        if not (d.cls.strictly_increasing and d.cls.continuous):
            raise ClassError(
                "set commutation with distortions needs a strictly increasing continuous one"
            )
        for probe in probes:
            if not probe.cls.right_continuous:
                raise ClassError("distortion probes must be right-continuous")
            partner = conjugate_distortion(d, probe)
            res = _composed_equal(
                lambda F: apply_distortion(partner, F),
                form,
                form,
                lambda F: apply_distortion(probe, F),
                corpus,
                "set-commute-distortions",
            )
            if isinstance(res, Witness):
                return res
            total += res.count
            partner_r = conjugate_distortion(inverse_distortion(d), probe)
            res = _composed_equal(
                form,
                lambda F: apply_distortion(partner_r, F),
                lambda F: apply_distortion(probe, F),
                form,
                corpus,
                "set-commute-distortions",
            )
            if isinstance(res, Witness):
                return res
            total += res.count
        return Pass("set-commute-distortions", total)

    raise ValueError(f"unknown family {family!r}")


def monotone_check(t: Transform, corpus: Corpus, law: str = "monotone") -> CheckResult:
    """Dominance preservation over every ordered corpus pair."""
    count = 0
    images = {name: t(F) for name, F in corpus}
    for name_f, F in corpus:
        for name_g, G in corpus:
            if not leq_st(F, G):
                continue
            fail = first_dominance_failure(images[name_f], images[name_g])
            if fail is not None:
                x, a, b = fail
                return Witness(law, f"{name_f}<=st:{name_g}", F, x, a, b)
            count += 1
    return Pass(law, count)


def lsc_check(
    t: Transform, sequence: Sequence[Cdf], limit: Cdf, bound: Cdf
) -> LscResult:
    """Dominance along a convergent sequence versus at its limit.

    Violated means every transformed sequence element stays below the bound
    but the transformed limit does not; convergence of the supplied
    sequence is the caller's responsibility.
    """
    premise = all(leq_st(t(F), bound) for F in sequence)
    limit_ok = leq_st(t(limit), bound)
    return LscResult(
        violated=premise and not limit_ok,
        premise_holds=premise,
        limit_dominated=limit_ok,
    )


def bernoulli_tail_sequence(n_lo: int = 2, n_hi: int = 16) -> tuple[list[Cdf], Cdf]:
    """Coin flips drifting up to a fair coin: the stock non-lsc instance."""
    seq = [bernoulli(Fraction(1, 2) - Fraction(1, n)) for n in range(n_lo, n_hi + 1)]
    return seq, bernoulli(Fraction(1, 2))


# -- extraction ---------------------------------------------------------------


def extract_distortion(
    t: Transform, levels: Sequence, corpus: Corpus | None = None
) -> Extraction:
    """Recover a candidate distortion from black-box probes.

    A two-point distribution with cumulative probability p below its upper
    atom reveals the candidate's value at p when the box is a distortion;
    the recovered function interpolates the samples with endpoints pinned
    at (0,0) and (1,1), then is re-tested against the box on the corpus.
    """
    lv = [rat(p) for p in levels]
    if len(set(lv)) != len(lv):
        raise ExtractionError("probe levels must be distinct")
    if any(not 0 < p < 1 for p in lv):
        raise ExtractionError("probe levels must lie strictly between 0 and 1")
    samples = []
    for p in sorted(lv):
        out = t(bernoulli(1 - p))
        v = out(0)
        if not 0 <= v <= 1:
            raise ExtractionError(f"probe at {p} returned {v}, not a cdf value")
        samples.append((p, v))
    values = [v for _, v in samples]
    if any(a > b for a, b in zip(values, values[1:])) or (
        samples and (values[0] < 0 or values[-1] > 1)
    ):
        raise ExtractionError("probe values are not increasing")
    pts = [(Fraction(0), Fraction(0))] + samples + [(Fraction(1), Fraction(1))]
    recovered = Distortion(pwfn.from_points(pts))
    corpus = corpus or canonical_corpus()
    res = commute_check_like_roundtrip(
        t, lambda F: apply_distortion(recovered, F), corpus, "extract-distortion"
    )
    ok = isinstance(res, Pass)
    return Extraction(recovered, tuple(samples), ok, None if ok else res)


def extract_utility(
    t: Transform, points: Sequence, corpus: Corpus | None = None
) -> Extraction:
    """Recover a candidate utility from the images of point masses.

    Each point mass must map to a point mass; the image locations are
    interpolated and extended with the outermost sample slopes, then the
    candidate is re-tested against the box on the corpus.
    """
    xs = sorted(rat(x) for x in points)
    if len(set(xs)) != len(xs):
        raise ExtractionError("probe points must be distinct")
    samples = []
    for x in xs:
        out = t(dirac(x))
        atoms, segs = decompose(out)
        if segs or len(atoms) != 1 or atoms[0].w != 1:
            raise ExtractionError(f"image of the point mass at {x} is not a point mass")
        samples.append((x, atoms[0].x))
    ys = [y for _, y in samples]
    if any(a > b for a, b in zip(ys, ys[1:])):
        raise ExtractionError("point-mass images are not increasing")
    if len(samples) == 1:
        (x0, y0) = samples[0]
        fn = pwfn.on_reals([pwfn.bp(x0, y0)], 1, 1)
    else:
        s_lo = (samples[1][1] - samples[0][1]) / (samples[1][0] - samples[0][0])
        s_hi = (samples[-1][1] - samples[-2][1]) / (samples[-1][0] - samples[-2][0])
        fn = pwfn.on_reals([pwfn.bp(x, y) for x, y in samples], s_lo, s_hi)
    recovered = Utility(fn)
    corpus = corpus or canonical_corpus()
    res = commute_check_like_roundtrip(
        t, lambda F: apply_utility(recovered, F), corpus, "extract-utility"
    )
    ok = isinstance(res, Pass)
    return Extraction(recovered, tuple(samples), ok, None if ok else res)


def commute_check_like_roundtrip(
    t: Transform, candidate: Transform, corpus: Corpus, law: str
) -> CheckResult:
    """Pointwise corpus agreement between a box and a reconstruction."""
    count = 0
    for name, F in corpus:
        diff = first_difference(t(F), candidate(F))
        if diff is not None:
            x, a, b = diff
            return Witness(law, name, F, x, a, b)
        count += 1
    return Pass(law, count)


# -- seeded generators ----------------------------------------------------------


DISTORTION_KINDS = ("df", "df-rc", "df-strict")
UTILITY_KINDS = ("uf", "uf-left", "uf-strict")
KINDS = ("cdf",) + DISTORTION_KINDS + UTILITY_KINDS


def gen(seed: int, kind: str, complexity: int = 3):
    """Deterministic seeded value of the requested kind.

    Kinds: ``cdf``; distortions ``df`` (any), ``df-rc`` (right-continuous),
    ``df-strict`` (strictly increasing continuous); utilities ``uf``
    (continuous), ``uf-left`` (left-continuous), ``uf-strict`` (strictly
    increasing continuous surjection).  Output is certified against the
    requested class before being returned.
    """
    if kind == "cdf":
        return gen_cdf(seed, complexity)
    if kind in DISTORTION_KINDS:
        return gen_distortion(seed, kind, complexity)
    if kind in UTILITY_KINDS:
        return gen_utility(seed, kind, complexity)
    raise ValueError(f"unknown kind {kind!r}")


def _rng(seed: int, kind: str, complexity: int) -> random.Random:
    return random.Random(f"{seed}|{kind}|{complexity}")


def _rational(rng: random.Random, lo, hi, den: int = 8) -> Fraction:
    lo, hi = rat(lo), rat(hi)
    q = rng.randint(1, den)
    n = rng.randint(ceil(lo * q), floor(hi * q))
    return Fraction(n, q)


def gen_cdf(seed: int, complexity: int = 3) -> Cdf:
    rng = _rng(seed, "cdf", complexity)
    k = rng.randint(1, max(1, complexity))
    weights = [rng.randint(1, 6) for _ in range(k)]
    total = sum(weights)
    comps = []
    for w in weights:
        mass = Fraction(w, total)
        if rng.random() < Fraction(1, 2):
            comps.append(atom(_rational(rng, -3, 3, 4), mass))
        else:
            a = _rational(rng, -3, 2, 4)
            b = a + _rational(rng, Fraction(1, 4), 2, 4)
            comps.append(unif(a, b, mass))
    return make(comps)


def _sorted_sample(rng: random.Random, pool: Sequence[Fraction], k: int) -> list[Fraction]:
    return sorted(rng.sample(list(pool), k))


def gen_distortion(seed: int, kind: str = "df", complexity: int = 3) -> Distortion:
    rng = _rng(seed, kind, complexity)
    k = rng.randint(0 if kind != "df-strict" else 1, max(1, complexity))
    grid16 = [Fraction(i, 16) for i in range(1, 16)]
    xs = _sorted_sample(rng, grid16, k)
    points = []
    if kind == "df-strict":
        vals = _sorted_sample(rng, [Fraction(i, 48) for i in range(1, 48)], k)
        points = [pwfn.bp(0, 0)] + [pwfn.bp(x, v) for x, v in zip(xs, vals)] + [pwfn.bp(1, 1)]
    elif kind == "df-rc":
        jumpy = rng.random() < Fraction(3, 5)
        if jumpy and k > 0:
            ladder = _sorted_sample(rng, [Fraction(i, 48) for i in range(0, 49)], 2 * k + 1)
            lefts = ladder[0::2][:k]
            ats = ladder[1::2][:k]
            l_end = ladder[2 * k]
            points = [pwfn.bp(0, 0)]
            points += [pwfn.bp(x, l, a, a) for x, l, a in zip(xs, lefts, ats)]
            points += [pwfn.bp(1, l_end, 1, 1)]
        else:
            vals = sorted(_rational(rng, 0, 1, 12) for _ in range(k))
            points = [pwfn.bp(0, 0)] + [pwfn.bp(x, v) for x, v in zip(xs, vals)] + [pwfn.bp(1, 1)]
    else:  # any distortion, jumps allowed anywhere
        jumpy = rng.random() < Fraction(11, 20)
        if jumpy and k == 0:
            k = 1
            xs = _sorted_sample(rng, grid16, 1)
        if jumpy:
            m = 3 * k + 2
            ladder = _sorted_sample(rng, [Fraction(i, 48) for i in range(0, 49)], m)
            r0 = ladder[0]
            l_end = ladder[m - 1]
            points = [pwfn.Breakpoint(Fraction(0), Fraction(0), Fraction(0), r0)]
            for i, x in enumerate(xs):
                l, a, r = ladder[1 + 3 * i : 4 + 3 * i]
                points.append(pwfn.Breakpoint(x, l, a, r))
            points.append(pwfn.Breakpoint(Fraction(1), l_end, Fraction(1), Fraction(1)))
        else:
            vals = sorted(_rational(rng, 0, 1, 12) for _ in range(k))
            points = [pwfn.bp(0, 0)] + [pwfn.bp(x, v) for x, v in zip(xs, vals)] + [pwfn.bp(1, 1)]
    d = Distortion(pwfn.bounded(points))
    _certify_distortion(d, kind)
    return d


def _certify_distortion(d: Distortion, kind: str) -> None:
    if kind == "df-rc":
        assert d.cls.right_continuous
    elif kind == "df-strict":
        assert d.cls.strictly_increasing and d.cls.continuous


def gen_utility(seed: int, kind: str = "uf", complexity: int = 3) -> Utility:
    rng = _rng(seed, kind, complexity)
    k = rng.randint(1, max(1, complexity))
    grid = [Fraction(i, 4) for i in range(-12, 13)]
    xs = _sorted_sample(rng, grid, k)
    if kind == "uf-strict":
        vals = _sorted_sample(rng, [Fraction(i, 8) for i in range(-32, 33)], k)
        tails = (rng.choice([Fraction(1, 2), 1, 2, 3]), rng.choice([Fraction(1, 2), 1, 2, 3]))
        points = [pwfn.bp(x, v) for x, v in zip(xs, vals)]
    elif kind == "uf-left":
        ladder = sorted(_rational(rng, -4, 4, 8) for _ in range(2 * k))
        points = []
        for i, x in enumerate(xs):
            l, r = ladder[2 * i], ladder[2 * i + 1]
            points.append(pwfn.Breakpoint(x, l, l, r))
        tails = (rng.choice([Fraction(0), Fraction(1, 2), 1, 2]), rng.choice([Fraction(0), Fraction(1, 2), 1, 2]))
    else:  # continuous utility; flats allowed
        ladder = sorted(_rational(rng, -4, 4, 8) for _ in range(k))
        points = [pwfn.bp(x, v) for x, v in zip(xs, ladder)]
        tails = (rng.choice([Fraction(0), Fraction(1, 2), 1, 2]), rng.choice([Fraction(0), Fraction(1, 2), 1, 2]))
    u = Utility(pwfn.on_reals(points, *tails))
    _certify_utility(u, kind)
    return u


def _certify_utility(u: Utility, kind: str) -> None:
    if kind == "uf":
        assert u.cls.continuous
    elif kind == "uf-left":
        assert u.cls.left_continuous
    elif kind == "uf-strict":
        assert u.cls.strictly_increasing and u.cls.continuous and u.cls.surjective


# -- function comparison --------------------------------------------------------


def first_fn_difference(f: PiecewiseMonotone, g: PiecewiseMonotone):
    """Locate a point where two piecewise functions differ: (x, f-val, g-val).

    None when the canonical forms are equal.  Probes the merged breakpoints,
    segment midpoints, and one point beyond each end.
    """
    if f == g:
        return None
    xs = sorted({b.x for b in f.breakpoints} | {b.x for b in g.breakpoints})
    probes = [xs[0] - 1] + xs + [(a + b) / 2 for a, b in zip(xs, xs[1:])] + [xs[-1] + 1]
    for x in sorted(set(probes)):
        try:
            tf = f.eval3(x)
            tg = g.eval3(x)
        except DomainError:
            continue
        if tf != tg:
            for i in (1, 0, 2):
                if tf[i] != tg[i]:
                    return x, tf[i], tg[i]
    raise AssertionError("functions differ but no probe separates them")


# -- fuzz drivers -----------------------------------------------------------------


def pairing_formula_value(d: Distortion, u: Utility, F: Cdf, x) -> Fraction:
    """d(F(sup{y : u(y) <= x})), reading F as 0 at -inf and 1 at +inf."""
    y = pwfn.right_inverse(u.fn, rat(x))
    if y is NEG_INF:
        fy = Fraction(0)
    elif y is POS_INF:
        fy = Fraction(1)
    else:
        fy = F(y)
    return d(fy)


def fuzz_distort_push_commute(
    iters: int, seed: int, corpus: Corpus
) -> tuple[CheckResult, int]:
    """Seeded distortion/continuous-utility pairs: both orders must agree.

    Also reports how many sampled distortions carried a jump.
    """
    jumps = 0
    count = 0
    entries = corpus.entries
    for i in range(iters):
        d = gen_distortion(seed * 7919 + i, "df")
        u = gen_utility(seed * 104729 + i, "uf")
        if not d.cls.continuous:
            jumps += 1
        name, F = entries[i % len(entries)]
        lhs = apply_distortion(d, apply_utility(u, F))
        rhs = apply_utility(u, apply_distortion(d, F))
        diff = first_difference(lhs, rhs)
        if diff is not None:
            return Witness("distort-push-commute", name, F, *diff), jumps
        count += 1
    return Pass("distort-push-commute", count), jumps


def fuzz_rc_left_pairing(iters: int, seed: int, corpus: Corpus) -> CheckResult:
    """Right-continuous distortion with left-continuous utility: both orders
    agree and match the closed-form value at a deterministic probe grid."""
    count = 0
    entries = corpus.entries
    for i in range(iters):
        d = gen_distortion(seed * 3571 + i, "df-rc")
        u = gen_utility(seed * 6397 + i, "uf-left")
        name, F = entries[i % len(entries)]
        lhs = apply_distortion(d, apply_utility(u, F))
        rhs = apply_utility(u, apply_distortion(d, F))
        diff = first_difference(lhs, rhs)
        if diff is not None:
            return Witness("rc-left-pairing", name, F, *diff)
        xs = sorted(
            {b.x for b in lhs.fn.breakpoints} | {b.x for b in u.fn.breakpoints}
        )
        probes = xs + [(a + b) / 2 for a, b in zip(xs, xs[1:])]
        probes += [xs[0] - 1, xs[-1] + 1]
        for x in probes:
            want = pairing_formula_value(d, u, F, x)
            got = lhs(x)
            if got != want:
                return Witness("rc-left-pairing-formula", name, F, x, got, want)
        count += 1
    return Pass("rc-left-pairing", count)


def fuzz_quantile_identity(iters: int, seed: int, corpus: Corpus) -> CheckResult:
    """Lower quantiles of a continuous pushforward pass through the utility."""
    count = 0
    entries = corpus.entries
    for i in range(iters):
        u = gen_utility(seed * 2749 + i, "uf")
        rng = random.Random(f"{seed}|quantile|{i}")
        p = Fraction(rng.randint(1, 23), 24)
        name, F = entries[i % len(entries)]
        lhs = left_quantile(apply_utility(u, F), p)
        rhs = u(left_quantile(F, p))
        if lhs != rhs:
            return Witness("quantile-pushforward", name, F, p, lhs, rhs)
        count += 1
    return Pass("quantile-pushforward", count)


def fuzz_set_commute(
    family: str, iters: int, seed: int, corpus: Corpus, probes_per: int = 5
) -> CheckResult:
    """Seeded collapsed transforms set-commute with seeded probe families,
    and the conjugation identities hold symbolically."""
    total = 0
    for i in range(iters):
        if family == "utilities":
            d = gen_distortion(seed * 433 + i, "df")
            u1 = gen_utility(seed * 439 + i, "uf-strict")
            form = RduForm(d, u1)
            probes = [
                gen_utility(seed * 443 + i * probes_per + j, "uf")
                for j in range(probes_per)
            ]
            for probe in probes:
                partner = conjugate_utility(u1, probe)
                lhs_fn = pwfn.compose(partner.fn, u1.fn)
                rhs_fn = pwfn.compose(u1.fn, probe.fn)
                if lhs_fn != rhs_fn:
                    x, a, b = first_fn_difference(lhs_fn, rhs_fn)
                    return Witness("conjugate-identity-u", f"probe-{i}", dirac(0), x, a, b)
            res = set_commute_check(form, family, probes, corpus)
        else:
            d = gen_distortion(seed * 449 + i, "df-strict")
            u = gen_utility(seed * 457 + i, "uf-left")
            form = RduForm(d, u)
            probes = [
                gen_distortion(seed * 461 + i * probes_per + j, "df-rc")
                for j in range(probes_per)
            ]
            for probe in probes:
                partner = conjugate_distortion(d, probe)
                lhs_fn = pwfn.compose(partner.fn, d.fn)
                rhs_fn = pwfn.compose(d.fn, probe.fn)
                if lhs_fn != rhs_fn:
                    x, a, b = first_fn_difference(lhs_fn, rhs_fn)
                    return Witness("conjugate-identity-d", f"probe-{i}", dirac(0), x, a, b)
            res = set_commute_check(form, family, probes, corpus)
        if isinstance(res, Witness):
            return res
        total += res.count
    return Pass(f"set-commute-{family}", total)


def gen_admissible_word(seed: int, max_len: int = 6) -> TransformWord:
    """Random word: continuous pushforwards, right-continuous distortions,
    except that the leftmost distortion may be arbitrary."""
    rng = random.Random(f"{seed}|word|{max_len}")
    length = rng.randint(0, max_len)
    steps = []
    for j in range(length):
        if rng.random() < 0.5:
            steps.append(Push(gen_utility(seed * 31 + j * 97 + 13, "uf")))
        else:
            steps.append(Distort(gen_distortion(seed * 37 + j * 89 + 17, "df-rc")))
    first_d = next((k for k, s in enumerate(steps) if isinstance(s, Distort)), None)
    if first_d is not None and rng.random() < Fraction(2, 5):
        steps[first_d] = Distort(gen_distortion(seed * 41 + 19, "df"))
    return TransformWord(tuple(steps))


def fuzz_normal_form(
    iters: int, seed: int, corpus: Corpus, max_len: int = 6
) -> CheckResult:
    """Collapsing an admissible word must match word-wise evaluation."""
    count = 0
    for i in range(iters):
        word = gen_admissible_word(seed * 1013 + i, max_len)
        form = normal_form(word)
        for name, F in corpus:
            diff = first_difference(apply_word(word, F), form(F))
            if diff is not None:
                return Witness("word-normal-form", name, F, *diff)
            count += 1
    return Pass("word-normal-form", count)


def fuzz_collapse_nonrc(iters: int, seed: int, corpus: Corpus) -> CheckResult:
    """Search for a distortion pair where pointwise composition disagrees
    with sequential application; no constraint is placed on continuity.

    Whether such a witness exists in this function class is left open;
    this target searches rather than asserts.
    """
    count = 0
    entries = corpus.entries
    for i in range(iters):
        d2 = gen_distortion(seed * 509 + i, "df")
        d1 = gen_distortion(seed * 521 + i, "df")
        collapsed = Distortion(pwfn.compose(d2.fn, d1.fn))
        name, F = entries[i % len(entries)]
        lhs = apply_distortion(collapsed, F)
        rhs = apply_distortion(d2, apply_distortion(d1, F))
        diff = first_difference(lhs, rhs)
        if diff is not None:
            return Witness("distortion-collapse", name, F, *diff)
        count += 1
    return Pass("distortion-collapse", count)
