from fractions import Fraction
from math import comb, factorial, gcd

import pytest

from tauforms import (
    GradedForm,
    QSeries,
    TauStrategyDisagreement,
    bernoulli,
    delta_product,
    dim_modular,
    eisenstein,
    sigma_series,
    sigma_table,
    tau,
    tau_cross_check,
    tau_range,
)
from tauforms.forms import EISENSTEIN_COEFFICIENT


def bernoulli_oracle(limit):
    """Independent route: invert (e^x - 1)/x as a power series."""
    h = [Fraction(1, factorial(j + 1)) for j in range(limit + 1)]
    g = [Fraction(0)] * (limit + 1)
    g[0] = 1 / h[0]
    for k in range(1, limit + 1):
        g[k] = -sum(h[i] * g[k - i] for i in range(1, k + 1)) / h[0]
    return [g[m] * factorial(m) for m in range(limit + 1)]


def test_bernoulli_against_generating_function():
    oracle = bernoulli_oracle(24)
    for m in range(25):
        assert bernoulli(m) == oracle[m]


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    with pytest.raises(ValueError):
        bernoulli(-1)


def divisor_sum(n, k):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


@pytest.mark.parametrize("k", [0, 1, 3, 5, 7])
def test_sigma_sieve_against_enumeration(k):
    table = sigma_table(k, 200)
    for n in range(1, 201):
        assert table[n] == divisor_sum(n, k)


def test_sigma_examples():
    assert sigma_table(1, 1)[1] == 1
    assert sigma_table(3, 4)[4] == 1 + 8 + 64 == 73
    assert sigma_table(5, 2)[2] == 1 + 32 == 33


def test_sigma_structure():
    t = sigma_table(3, 100)
    for p in (2, 3, 5, 7, 11):
        assert t[p] == 1 + p ** 3
    for a, b in ((4, 9), (5, 8), (7, 9)):
        assert gcd(a, b) == 1
        assert t[a * b] == t[a] * t[b]


def test_sigma_table_bounds():
    t = sigma_table(1, 10)
    with pytest.raises(IndexError):
        t[0]
    with pytest.raises(IndexError):
        t[11]
    with pytest.raises(ValueError):
        sigma_table(1, 0)


def test_eisenstein_leading_coefficients():
    for k, c in EISENSTEIN_COEFFICIENT.items():
        form = eisenstein(k, 6)
        assert form.coefficient(0) == 1
        assert form.coefficient(1) == c
        assert form.weight == k
        assert form.depth == (1 if k == 2 else 0)
    assert eisenstein(8, 4).coefficient(1) == 480
    assert eisenstein(12, 4).coefficient(1) == Fraction(65520, 691)


def test_eisenstein_unsupported_weight():
    with pytest.raises(ValueError):
        eisenstein(14, 8)
    with pytest.raises(ValueError):
        eisenstein(3, 8)


def test_delta_product_leading_terms():
    d = delta_product(12)
    assert d.coefficient(0) == 0
    assert d.coefficient(1) == 1
    # expand (1-q)^24 (1-q^2)^24 to order 2 independently
    order2 = [0] * 3
    for i in range(3):
        for j in range(0, 3 - i, 2):
            order2[i + j] += (-1) ** i * comb(24, i) * (-1) ** (j // 2) * comb(24, j // 2)
    assert d.coefficient(2) == order2[1] == -24
    assert d.weight == 12 and d.depth == 0


def test_delta_equals_eisenstein_combination():
    n = 48
    e12 = eisenstein(12, n).series
    e8e4 = eisenstein(8, n).series * eisenstein(4, n).series
    c = Fraction(691, 65520 - 720 * 691)
    assert (e12 - e8e4).scale(c) == delta_product(n).series


def test_tau_small_values():
    # q prod(1-q^n)^24 expanded by hand up to q^6
    known = {1: 1, 2: -24, 3: 252, 4: -1472, 5: 4830, 6: -6048}
    for n, value in known.items():
        assert tau(n) == value


def test_tau_vdp_hand_computation():
    # n=2: 4*sigma7(2) - 540*sigma3(1)^2, sigma7(2) = 129 by enumeration
    assert divisor_sum(2, 7) == 129
    assert tau(2, "vdp") == 4 * 129 - 540 == -24


def test_tau_strategies_agree():
    reference = tau_range(300, "product")
    for strategy in ("eisenstein", "vdp", "niebur"):
        assert tau_range(300, strategy) == reference
    assert tau_cross_check(64) == tau_range(64, "product")


def test_tau_single_matches_bulk():
    bulk = tau_range(40, "niebur")
    for n in (1, 7, 29, 40):
        assert tau(n, "niebur") == bulk[n]


def test_tau_multiplicativity_spot_check():
    assert tau(6) == tau(2) * tau(3)


def test_tau_errors():
    with pytest.raises(ValueError):
        tau(0)
    with pytest.raises(ValueError):
        tau(5, "magic")
    with pytest.raises(ValueError):
        tau_range(0)


def test_tau_disagreement_exception():
    exc = TauStrategyDisagreement(7, {"product": 1, "vdp": 2})
    assert exc.n == 7 and "n=7" in str(exc)


def test_dim_modular_table():
    assert dim_modular(0) == 1
    assert dim_modular(2) == 0
    for k in (4, 6, 8, 10, 14):
        assert dim_modular(k) == 1
    assert dim_modular(12) == 2
    assert dim_modular(16) == 2
    assert dim_modular(26) == 2
    assert dim_modular(-4) == 0
    with pytest.raises(ValueError):
        dim_modular(3)


def test_graded_form_bookkeeping():
    e4 = eisenstein(4, 8)
    e6 = eisenstein(6, 8)
    prod = e4 * e6
    assert prod.weight == 10 and prod.depth == 0
    d = e4.derive(2)
    assert d.weight == 8 and d.depth == 2
    mixed = e4 + e6
    assert mixed.weight is None
    zero = GradedForm(QSeries.zero(8), None, 0)
    assert (zero + e4).weight == 4


def test_graded_form_depth_bound_enforced():
    with pytest.raises(ValueError):
        GradedForm(QSeries.one(4), 4, 3)
    with pytest.raises(ValueError):
        GradedForm(QSeries.one(4), 5, 0)


def test_sigma_series():
    s = sigma_series(1, 6)
    assert s.coefficients == (0, 1, 3, 4, 7, 6, 12)
