"""Exact rational algebra of distributional transforms.

Distributions are compactly supported cdfs over the rationals; the two
primitive transform families reweight cumulative probability (distortions)
or push outcomes through increasing maps (utility pushforwards).  All
operations are symbolic and bit-exact, so algebraic laws are decided by
structural equality rather than tolerances.
"""

from .dist import (
    Cdf,
    atom,
    bernoulli,
    decompose,
    dirac,
    equals,
    left_quantile,
    leq_st,
    make,
    mean,
    right_quantile,
    two_point,
    unif,
    uniform,
)
from .errors import (
    ClassError,
    DomainError,
    DtlabError,
    ExtractionError,
    LevelError,
    NormalFormError,
    NotInvertibleError,
    ParseError,
    SpecError,
    UnknownExample,
)
from .pwfn import (
    NEG_INF,
    POS_INF,
    Breakpoint,
    PiecewiseMonotone,
    classify,
    compose,
    rat,
    right_inverse,
    strict_inverse,
)
from .transform import (
    Distort,
    Distortion,
    Push,
    RduForm,
    TransformWord,
    Utility,
    apply_distortion,
    apply_utility,
    apply_word,
    compose_distortions,
    compose_utilities,
    conjugate_distortion,
    conjugate_utility,
    dual_utility,
    expected_shortfall,
    expected_utility,
    normal_form,
    rank_dependent_value,
    value_at_risk,
)

__version__ = "0.1.0"
