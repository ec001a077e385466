"""Rankin-Cohen brackets for modular forms and their quasimodular variant.

The modular bracket of weights (k, l) at order v is

    [f, g]_v = sum_{r=0}^{v} (-1)^r C(v+k-1, v-r) C(v+l-1, r) D^r f D^(v-r} g

and lands in weight k + l + 2v; it is cuspidal for v >= 1.  The
quasimodular bracket shifts each binomial by the operand's depth:
C(k-s+n-1, n-r) C(l-t+n-1, r), producing weight k+l+2n with depth bound
s+t.  Binomials C(a, b) vanish outside 0 <= b <= a, keeping both formulas
literal for every r.
"""

from dataclasses import dataclass
from math import comb

from .forms import GradedForm, eisenstein
from .qseries import QSeries

__all__ = [
    "BracketSpec",
    "binomial",
    "rc_bracket",
    "quasi_bracket",
    "is_cuspidal",
    "e2_bracket_family",
]


def binomial(a, b):
    """C(a, b), defined as 0 whenever b < 0 or b > a."""
    if b < 0 or b > a:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class BracketSpec:
    """Order and operand grading of a bracket; knows the result grading."""

    order: int
    left_weight: int
    left_depth: int
    right_weight: int
    right_depth: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("bracket order must be non-negative")
        for w, s, side in (
            (self.left_weight, self.left_depth, "left"),
            (self.right_weight, self.right_depth, "right"),
        ):
            if w < 2 or w % 2:
                raise ValueError(f"{side} weight must be even and >= 2, got {w}")
            if not 0 <= s <= w // 2:
                raise ValueError(f"{side} depth {s} outside 0..{w // 2}")

    @property
    def result_weight(self):
        return self.left_weight + self.right_weight + 2 * self.order

    @property
    def result_depth(self):
        return self.left_depth + self.right_depth


def rc_bracket(f, g, order):
    """Order-v Rankin-Cohen bracket of two modular (depth-0) forms.

    Order 0 is permitted and collapses to the plain product.
    """
    if order < 0:
        raise ValueError("bracket order must be non-negative")
    for name, h in (("left", f), ("right", g)):
        if h.weight is None:
            raise TypeError(f"{name} operand is weight-inhomogeneous")
        if h.depth != 0:
            raise TypeError(
                f"{name} operand has depth bound {h.depth}; "
                "the modular bracket needs depth 0 (use the quasimodular bracket)"
            )
        if h.weight < 4 or h.weight % 2:
            raise ValueError(f"{name} operand weight {h.weight} not an even weight >= 4")
    k, l = f.weight, g.weight
    n = min(f.truncation, g.truncation)
    total = QSeries.zero(n)
    for r in range(order + 1):
        c = binomial(order + k - 1, order - r) * binomial(order + l - 1, r)
        if c == 0:
            continue
        if r % 2:
            c = -c
        total = total + (f.series.derive(r) * g.series.derive(order - r)).scale(c)
    return GradedForm(total, k + l + 2 * order, 0)


def quasi_bracket(order, f, g, left=None, right=None):
    """Quasimodular bracket of order n for operands of grading (k,s), (l,t).

    The gradings default to the operands' own tags; pass left=(k, s) or
    right=(l, t) to override, e.g. when treating a form inside a larger
    depth bound.
    """
    if f.weight is None or g.weight is None:
        raise TypeError("bracket operands must be weight-homogeneous")
    k, s = left if left is not None else (f.weight, f.depth)
    l, t = right if right is not None else (g.weight, g.depth)
    spec = BracketSpec(order, k, s, l, t)
    n = min(f.truncation, g.truncation)
    total = QSeries.zero(n)
    for r in range(order + 1):
        c = binomial(k - s + order - 1, order - r) * binomial(l - t + order - 1, r)
        if c == 0:
            continue
        if r % 2:
            c = -c
        total = total + (f.series.derive(r) * g.series.derive(order - r)).scale(c)
    return GradedForm(total, spec.result_weight, spec.result_depth)


def is_cuspidal(h):
    """True iff the constant coefficient vanishes exactly."""
    return h.series.coefficient(0) == 0


def e2_bracket_family(truncation):
    """The six weight-12 quasimodular brackets built from derivatives of E2.

    Keys f1..f6; f4 = -3*f2 and f6 = -2*f5 hold identically, and the family
    decomposes over the weight-12 graded generators with the golden
    coordinates exercised in the tests.
    """
    e2 = eisenstein(2, truncation)
    d = [e2, e2.derive(1), e2.derive(2), e2.derive(3)]
    return {
        "f1": quasi_bracket(1, d[3], d[0]),
        "f2": quasi_bracket(1, d[2], d[1]),
        "f3": quasi_bracket(2, d[2], d[0]),
        "f4": quasi_bracket(2, d[1], d[1]),
        "f5": quasi_bracket(3, d[1], d[0]),
        "f6": quasi_bracket(4, d[0], d[0]),
    }
