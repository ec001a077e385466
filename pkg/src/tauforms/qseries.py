"""Exact truncated power series in q over arbitrary-precision rationals.

A :class:`QSeries` holds coefficients a_0 .. a_N exactly, as Python ints or
`fractions.Fraction` values, together with the truncation order N.  Nothing
beyond index N is known, so binary operations truncate to the shorter
operand and never invent coefficients.

Coefficients are always kept in canonical form: a `Fraction` with
denominator 1 is stored as a plain int, and every `Fraction` is reduced
(that is what `fractions.Fraction` guarantees).
"""

from fractions import Fraction
from math import gcd
from numbers import Rational

__all__ = ["Rational", "QSeries", "as_rational"]


def as_rational(x):
    """Validate that x is an exact rational; normalise Fraction(p, 1) to int.

    >>> as_rational(Fraction(6, 2))
    3
    >>> as_rational(Fraction(1, 3))
    Fraction(1, 3)
    """
    if type(x) is int:
        return x
    if isinstance(x, Rational):
        return x.numerator if x.denominator == 1 else Fraction(x.numerator, x.denominator)
    raise TypeError(f"exact rational coefficient required, got {type(x).__name__}")


# Below this many coefficients the plain double loop beats the packed
# big-integer product.
_PACK_THRESHOLD = 64


def _schoolbook_convolve(a, b, n):
    out = [0] * (n + 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b[: n + 1 - i]):
                if bj:
                    out[i + j] += ai * bj
    return out


def _packed_convolve_nonneg(a, b, n):
    # Kronecker substitution: evaluate both polynomials at a huge power of
    # two and let CPython's big-integer multiplication do the convolution.
    amax = max(a)
    bmax = max(b)
    if amax == 0 or bmax == 0:
        return [0] * (n + 1)
    bound = min(len(a), len(b)) * amax * bmax
    stride = bound.bit_length() // 8 + 1
    abuf = bytearray(len(a) * stride)
    for i, v in enumerate(a):
        if v:
            abuf[i * stride : i * stride + stride] = v.to_bytes(stride, "little")
    bbuf = bytearray(len(b) * stride)
    for i, v in enumerate(b):
        if v:
            bbuf[i * stride : i * stride + stride] = v.to_bytes(stride, "little")
    prod = int.from_bytes(bytes(abuf), "little") * int.from_bytes(bytes(bbuf), "little")
    cbuf = prod.to_bytes((len(a) + len(b)) * stride, "little")
    return [
        int.from_bytes(cbuf[k * stride : (k + 1) * stride], "little")
        for k in range(n + 1)
    ]


def _convolve_int(a, b, n):
    """Truncated convolution of two integer sequences, exactly.

    Schoolbook for short inputs; for longer ones the sequences are packed
    into big integers (shifted to be non-negative first, with the linear
    correction terms restored afterwards).
    """
    a = list(a[: n + 1])
    b = list(b[: n + 1])
    if n + 1 <= _PACK_THRESHOLD:
        return _schoolbook_convolve(a, b, n)
    mina = min(a)
    minb = min(b)
    if mina >= 0 and minb >= 0:
        return _packed_convolve_nonneg(a, b, n)
    a += [0] * (n + 1 - len(a))
    b += [0] * (n + 1 - len(b))
    ca = -mina if mina < 0 else 0
    cb = -minb if minb < 0 else 0
    a2 = [x + ca for x in a]
    b2 = [x + cb for x in b]
    raw = _packed_convolve_nonneg(a2, b2, n)
    out = []
    sa = sb = 0
    for k in range(n + 1):
        sa += a2[k]
        sb += b2[k]
        out.append(raw[k] - cb * sa - ca * sb + ca * cb * (k + 1))
    return out


def _clear_denominators(coeffs):
    den = 1
    for c in coeffs:
        d = c.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    if den == 1:
        return list(coeffs), 1
    return [int(c * den) for c in coeffs], den


class QSeries:
    """A formal power series in q, truncated after the q^N coefficient.

    >>> f = QSeries([1, 2])
    >>> g = QSeries([3, 4])
    >>> (f + g).coefficients
    (4, 6)
    >>> (f * f).coefficients   # (1+2q)^2, q^2 unknown at truncation 1
    (1, 4)
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs, truncation=None):
        coeffs = [as_rational(c) for c in coeffs]
        if truncation is not None:
            if truncation < 0:
                raise ValueError("truncation must be non-negative")
            if len(coeffs) > truncation + 1:
                coeffs = coeffs[: truncation + 1]
            else:
                coeffs += [0] * (truncation + 1 - len(coeffs))
        elif not coeffs:
            raise ValueError("a series needs at least its constant coefficient")
        self._coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, truncation):
        return cls([0], truncation)

    @classmethod
    def one(cls, truncation):
        return cls([1], truncation)

    @classmethod
    def constant(cls, value, truncation):
        return cls([as_rational(value)], truncation)

    @property
    def truncation(self):
        return len(self._coeffs) - 1

    @property
    def coefficients(self):
        return self._coeffs

    def coefficient(self, n):
        """The exact coefficient of q^n; IndexError outside 0..truncation."""
        if not 0 <= n <= self.truncation:
            raise IndexError(
                f"coefficient index {n} outside known range 0..{self.truncation}"
            )
        return self._coeffs[n]

    @property
    def is_zero(self):
        return not any(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __neg__(self):
        return QSeries([-c for c in self._coeffs])

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.truncation, other.truncation)
        a, b = self._coeffs, other._coeffs
        return QSeries([a[i] + b[i] for i in range(n + 1)])

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.truncation, other.truncation)
        a, b = self._coeffs, other._coeffs
        return QSeries([a[i] - b[i] for i in range(n + 1)])

    def scale(self, c):
        """Multiply every coefficient by the exact rational c."""
        c = as_rational(c)
        if c == 0:
            return QSeries.zero(self.truncation)
        return QSeries([c * x for x in self._coeffs])

    def __mul__(self, other):
        if isinstance(other, QSeries):
            n = min(self.truncation, other.truncation)
            a, da = _clear_denominators(self._coeffs[: n + 1])
            b, db = _clear_denominators(other._coeffs[: n + 1])
            raw = _convolve_int(a, b, n)
            if da == 1 and db == 1:
                return QSeries(raw)
            d = da * db
            return QSeries([Fraction(c, d) for c in raw])
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Rational):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are defined")
        result = QSeries.one(self.truncation)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def derive(self, times=1):
        """Apply the coefficient-scaling derivation: a_n -> n^times * a_n.

        times = 0 is the identity, handy when iterating over operator
        powers in bracket formulas.
        """
        if times < 0:
            raise ValueError("cannot integrate, only derive")
        if times == 0:
            return self
        return QSeries([(i ** times) * c for i, c in enumerate(self._coeffs)])

    def shift(self, k=1):
        """Multiply by q^k, keeping the truncation (top coefficients drop off)."""
        if k < 0:
            raise ValueError("negative shifts would create a Laurent tail")
        n = self.truncation
        return QSeries(([0] * k + list(self._coeffs))[: n + 1])

    def to_text(self, max_terms=None):
        """Render as '1 - 24*q + 252*q^2 - ...' for display purposes."""
        pieces = []
        for i, c in enumerate(self._coeffs):
            if max_terms is not None and len(pieces) >= max_terms:
                pieces.append("...")
                break
            if c == 0:
                continue
            mag = -c if c < 0 else c
            if i == 0:
                body = str(mag)
            elif i == 1:
                body = "q" if mag == 1 else f"{mag}*q"
            else:
                body = f"q^{i}" if mag == 1 else f"{mag}*q^{i}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        if not pieces:
            return "0"
        return " ".join(pieces)

    def __repr__(self):
        head = ", ".join(str(c) for c in self._coeffs[:6])
        tail = ", ..." if self.truncation >= 6 else ""
        return f"QSeries(N={self.truncation}; {head}{tail})"
