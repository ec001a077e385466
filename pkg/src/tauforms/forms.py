"""Named modular and quasimodular forms, divisor sums and the tau function.

Everything is constructed from scratch: Bernoulli numbers by recurrence,
divisor-power sums by sieving, Eisenstein series from their defining
expansions, the discriminant form as an explicit product, and tau(n) by
four independent strategies that are required to agree.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .qseries import QSeries, as_rational, _convolve_int

__all__ = [
    "GradedForm",
    "SigmaTable",
    "bernoulli",
    "sigma_table",
    "sigma_series",
    "eisenstein",
    "delta_product",
    "delta_from_eisenstein",
    "tau",
    "tau_range",
    "tau_cross_check",
    "TauStrategyDisagreement",
    "dim_modular",
    "EISENSTEIN_COEFFICIENT",
    "TAU_STRATEGIES",
]


@dataclass(frozen=True)
class GradedForm:
    """A q-expansion tagged with its weight and a depth bound.

    weight None marks a weight-inhomogeneous combination (it can still be
    added and printed, but refuses brackets and decomposition).  depth is
    an upper bound: 0 means plainly modular.
    """

    series: QSeries
    weight: int | None
    depth: int = 0

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth bound must be non-negative")
        if self.weight is not None:
            if self.weight < 0 or self.weight % 2:
                raise ValueError(f"weight must be even and non-negative, got {self.weight}")
            if self.depth > self.weight // 2:
                raise ValueError(
                    f"depth bound {self.depth} exceeds weight/2 = {self.weight // 2}"
                )

    @property
    def truncation(self):
        return self.series.truncation

    def coefficient(self, n):
        return self.series.coefficient(n)

    @property
    def is_zero(self):
        return self.series.is_zero

    def _merged_weight(self, other):
        if self.is_zero:
            return other.weight
        if other.is_zero:
            return self.weight
        if self.weight == other.weight:
            return self.weight
        return None

    def __add__(self, other):
        if not isinstance(other, GradedForm):
            return NotImplemented
        return GradedForm(
            self.series + other.series,
            self._merged_weight(other),
            max(self.depth, other.depth),
        )

    def __sub__(self, other):
        if not isinstance(other, GradedForm):
            return NotImplemented
        return GradedForm(
            self.series - other.series,
            self._merged_weight(other),
            max(self.depth, other.depth),
        )

    def __neg__(self):
        return GradedForm(-self.series, self.weight, self.depth)

    def __mul__(self, other):
        if not isinstance(other, GradedForm):
            return NotImplemented
        if self.weight is None or other.weight is None:
            w = None
        else:
            w = self.weight + other.weight
        return GradedForm(self.series * other.series, w, self.depth + other.depth)

    def scale(self, c):
        return GradedForm(self.series.scale(c), self.weight, self.depth)

    def derive(self, times=1):
        """Derivation raises weight by 2 and the depth bound by 1 per step."""
        if times < 0:
            raise ValueError("cannot integrate, only derive")
        w = None if self.weight is None else self.weight + 2 * times
        return GradedForm(self.series.derive(times), w, self.depth + times)


@lru_cache(maxsize=None)
def bernoulli(m):
    """Exact m-th Bernoulli number, convention x/(e^x - 1), so B_1 = -1/2.

    >>> bernoulli(0), bernoulli(1), bernoulli(2)
    (Fraction(1, 1), Fraction(-1, 2), Fraction(1, 6))
    """
    if m < 0:
        raise ValueError("Bernoulli numbers are indexed by m >= 0")
    if m == 0:
        return Fraction(1)
    # sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    acc = Fraction(0)
    for j in range(m):
        acc += comb(m + 1, j) * bernoulli(j)
    return -acc / (m + 1)


@dataclass(frozen=True)
class SigmaTable:
    """sigma_k(1) .. sigma_k(N): sums of k-th powers of divisors."""

    k: int
    values: tuple  # index n, values[0] unused (0)

    @property
    def limit(self):
        return len(self.values) - 1

    def __getitem__(self, n):
        if not 1 <= n <= self.limit:
            raise IndexError(f"sigma_{self.k}({n}) outside tabulated range 1..{self.limit}")
        return self.values[n]


@lru_cache(maxsize=64)
def sigma_table(k, limit):
    """Sieve sigma_k(n) for n <= limit in O(N log N) additions."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    if k < 0:
        raise ValueError("divisor-power exponent must be non-negative")
    values = [0] * (limit + 1)
    for d in range(1, limit + 1):
        dk = d ** k
        for n in range(d, limit + 1, d):
            values[n] += dk
    return SigmaTable(k, tuple(values))


def sigma_series(k, truncation):
    """The generating series sum_{n>=1} sigma_k(n) q^n."""
    return QSeries(sigma_table(k, max(truncation, 1)).values[: truncation + 1])


# Leading coefficients of the normalised Eisenstein expansions
# E_k = 1 + c_k * sum sigma_{k-1}(n) q^n.
EISENSTEIN_COEFFICIENT = {
    2: -24,
    4: 240,
    6: -504,
    8: 480,
    10: -264,
    12: Fraction(65520, 691),
}


@lru_cache(maxsize=None)
def eisenstein(k, truncation):
    """Normalised Eisenstein series E_k as a GradedForm.

    E_2 is quasimodular (depth 1); the others are modular.  Only the
    weights with tabulated leading coefficients are supported.
    """
    if k not in EISENSTEIN_COEFFICIENT:
        raise ValueError(f"unsupported Eisenstein weight {k}; choose from 2,4,6,8,10,12")
    c = EISENSTEIN_COEFFICIENT[k]
    if k >= 4:
        # The tabulated constants are the -2k/B_k normalisation; anything
        # else would break every product relation downstream.
        assert Fraction(-2 * k) / bernoulli(k) == c
    series = QSeries.one(truncation) + sigma_series(k - 1, truncation).scale(c)
    return GradedForm(series, k, 1 if k == 2 else 0)


@lru_cache(maxsize=None)
def delta_product(truncation):
    """The weight-12 cusp form q * prod_{n=1..N} (1 - q^n)^24.

    Factors with n > N cannot touch coefficients <= N and are omitted.
    """
    n = truncation
    if n < 1:
        raise ValueError("truncation must be at least 1")
    base = [0] * (n + 1)
    base[0] = 1
    for j in range(1, n + 1):
        for i in range(n, j - 1, -1):
            base[i] -= base[i - j]
    powered = QSeries(base) ** 24
    return GradedForm(powered.shift(1), 12, 0)


@lru_cache(maxsize=None)
def delta_from_eisenstein(truncation):
    """The same cusp form via (E4^3 - E6^2) / 1728."""
    e4 = eisenstein(4, truncation).series
    e6 = eisenstein(6, truncation).series
    return GradedForm((e4 ** 3 - e6 ** 2).scale(Fraction(1, 1728)), 12, 0)


def dim_modular(k):
    """Dimension of the space of level-one modular forms of even weight k.

    >>> [dim_modular(k) for k in (0, 2, 4, 10, 12, 14)]
    [1, 0, 1, 1, 2, 1]
    """
    if k % 2:
        raise ValueError(f"odd weight {k} has no level-one modular forms")
    if k < 0 or k == 2:
        return 0
    return k // 12 + (0 if k % 12 == 2 else 1)


class TauStrategyDisagreement(Exception):
    """Two tau strategies produced different values; carries the smallest n."""

    def __init__(self, n, values):
        self.n = n
        self.values = dict(values)
        detail = ", ".join(f"{name}={v}" for name, v in sorted(values.items()))
        super().__init__(f"tau strategies disagree at n={n}: {detail}")


def _ceil_pow2(n, floor=64):
    m = floor
    while m < n:
        m *= 2
    return m


def _tau_vdp(n, s3, s7):
    acc = 0
    for mm in range(1, n):
        acc += mm * (n - mm) * s3[mm] * s3[n - mm]
    return n * n * s7[n] - 540 * acc


def _tau_niebur(n, s1):
    acc = 0
    for mm in range(1, n):
        acc += (35 * mm ** 4 - 52 * mm ** 3 * n + 18 * mm ** 2 * n * n) * s1[mm] * s1[n - mm]
    return n ** 4 * s1[n] - 24 * acc


def tau(n, strategy="product"):
    """Ramanujan's tau(n), by one of four independent strategies.

    product     coefficient of q^n in q*prod(1-q^m)^24
    eisenstein  coefficient of q^n in (E4^3 - E6^2)/1728
    vdp         n^2*sigma7(n) - 540 * sum m(n-m) sigma3(m) sigma3(n-m)
    niebur      n^4*sigma(n) - 24 * sum (35m^4 - 52m^3 n + 18m^2 n^2) sigma(m) sigma(n-m)
    """
    if n < 1:
        raise ValueError("tau(n) is defined for n >= 1")
    if strategy == "product":
        value = delta_product(_ceil_pow2(n)).coefficient(n)
    elif strategy == "eisenstein":
        value = delta_from_eisenstein(_ceil_pow2(n)).coefficient(n)
    elif strategy == "vdp":
        limit = _ceil_pow2(n)
        value = _tau_vdp(n, sigma_table(3, limit).values, sigma_table(7, limit).values)
    elif strategy == "niebur":
        value = _tau_niebur(n, sigma_table(1, _ceil_pow2(n)).values)
    else:
        raise ValueError(f"unknown tau strategy {strategy!r}")
    assert as_rational(value).denominator == 1
    return int(value)

TAU_STRATEGIES = ("product", "eisenstein", "vdp", "niebur")


def tau_range(limit, strategy="product"):
    """tau(1..limit) in bulk; returns a list indexed by n with [0] = 0.

    The convolution strategies reuse one sigma sieve per exponent and a
    single exact convolution for the whole range.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    if strategy == "product":
        coeffs = delta_product(limit).series.coefficients
        return [int(c) for c in coeffs]
    if strategy == "eisenstein":
        coeffs = delta_from_eisenstein(limit).series.coefficients
        return [int(c) for c in coeffs]
    if strategy == "vdp":
        s3 = sigma_table(3, limit).values
        s7 = sigma_table(7, limit).values
        u1 = [mm * v for mm, v in enumerate(s3)]
        u2 = [mm * mm * v for mm, v in enumerate(s3)]
        c1 = _convolve_int(u1, s3, limit)
        c2 = _convolve_int(u2, s3, limit)
        return [0] + [
            n * n * s7[n] - 540 * (n * c1[n] - c2[n]) for n in range(1, limit + 1)
        ]
    if strategy == "niebur":
        s1 = sigma_table(1, limit).values
        pows = [
            _convolve_int([mm ** e * v for mm, v in enumerate(s1)], s1, limit)
            for e in (2, 3, 4)
        ]
        a2, a3, a4 = pows
        return [0] + [
            n ** 4 * s1[n] - 24 * (35 * a4[n] - 52 * n * a3[n] + 18 * n * n * a2[n])
            for n in range(1, limit + 1)
        ]
    raise ValueError(f"unknown tau strategy {strategy!r}")


def tau_cross_check(limit, strategies=TAU_STRATEGIES):
    """Compute tau(1..limit) with every strategy and insist they agree.

    Disagreement is an internal-consistency failure, raised with the
    smallest offending n.  Returns the agreed table.
    """
    tables = {name: tau_range(limit, name) for name in strategies}
    names = list(tables)
    reference = tables[names[0]]
    for n in range(1, limit + 1):
        if any(tables[name][n] != reference[n] for name in names[1:]):
            raise TauStrategyDisagreement(n, {name: tables[name][n] for name in names})
    return reference
