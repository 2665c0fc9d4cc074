"""Small exact-arithmetic helpers: dyadic rounding, certified logarithms,
directed decimal rendering.

Everything takes and returns Fractions.  The logarithm enclosure uses the
atanh series log y = 2*sum z^(2k+1)/(2k+1), z = (y-1)/(y+1), after reducing
the argument to [1, 2); truncation error is bounded by the geometric tail,
so both endpoints are rigorous.
"""

from __future__ import annotations

from fractions import Fraction

HALF_ULP_BITS = 8


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def dyadic_down(x: Fraction, bits: int) -> Fraction:
    return Fraction(floor_frac(x * (1 << bits)), 1 << bits)


def dyadic_up(x: Fraction, bits: int) -> Fraction:
    return Fraction(ceil_frac(x * (1 << bits)), 1 << bits)


def _err_bits(err: Fraction) -> int:
    """Smallest b with 2^-b <= err (plus nothing fancy)."""
    b = 0
    scale = Fraction(1)
    while scale > err:
        scale /= 2
        b += 1
    return b


def _atanh_series_bounds(z: Fraction, err: Fraction):
    """Bounds for 2*atanh(z) = log((1+z)/(1-z)), needs 0 <= z < 1/2."""
    assert 0 <= z < Fraction(1, 2)
    if z == 0:
        return Fraction(0), Fraction(0)
    z2 = z * z
    term = 2 * z
    total = Fraction(0)
    k = 0
    while True:
        total += term / (2 * k + 1)
        term *= z2
        k += 1
        # remaining tail <= term/(2k+1) * 1/(1-z^2)
        tail = term / ((2 * k + 1) * (1 - z2))
        if tail <= err:
            return total, total + tail


_LOG2_CACHE: dict = {}


def log2_bounds(err: Fraction):
    bits = _err_bits(err)
    key = bits
    if key not in _LOG2_CACHE:
        _LOG2_CACHE[key] = _atanh_series_bounds(Fraction(1, 3), Fraction(1, 1 << bits))
    return _LOG2_CACHE[key]


def log_bounds(x: Fraction, err: Fraction):
    """Rational lo <= log(x) <= hi with hi - lo <= err (natural log)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of a nonpositive number")
    if x == 1:
        return Fraction(0), Fraction(0)
    if x < 1:
        lo, hi = log_bounds(1 / x, err)
        return -hi, -lo
    # x = m * 2^e with m in [1, 2)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    while Fraction(1 << max(e, 0), 1 << max(-e, 0)) > x:
        e -= 1
    while Fraction(1 << max(e + 1, 0), 1 << max(-e - 1, 0)) <= x:
        e += 1
    m = x / Fraction(1 << max(e, 0), 1 << max(-e, 0))
    assert 1 <= m < 2
    piece = err / 8
    bits = _err_bits(piece) + 2
    m_lo = dyadic_down(m, bits)
    m_hi = dyadic_up(m, bits)
    # |log m - log m'| <= |m - m'| because the derivative is at most 1 on [1, 2]
    s_lo = _atanh_series_bounds((m_lo - 1) / (m_lo + 1), piece)[0] - Fraction(1, 1 << bits)
    s_hi = _atanh_series_bounds((m_hi - 1) / (m_hi + 1), piece)[1] + Fraction(1, 1 << bits)
    if s_lo < 0:
        s_lo = Fraction(0)
    if e == 0:
        lo, hi = s_lo, s_hi
    else:
        l2_lo, l2_hi = log2_bounds(piece / max(1, abs(e)))
        if e > 0:
            lo, hi = e * l2_lo + s_lo, e * l2_hi + s_hi
        else:
            lo, hi = e * l2_hi + s_lo, e * l2_lo + s_hi
    # tidy the endpoints so downstream arithmetic stays small
    tidy = _err_bits(err) + HALF_ULP_BITS
    return dyadic_down(lo, tidy), dyadic_up(hi, tidy)


def decimal_str(x: Fraction, digits: int, direction: str) -> str:
    """Decimal rendering with directed rounding ("down" or "up")."""
    scaled = Fraction(x) * 10**digits
    n = floor_frac(scaled) if direction == "down" else ceil_frac(scaled)
    sign = "-" if n < 0 else ""
    body = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{body[:-digits]}.{body[-digits:]}" if digits else f"{sign}{body}"


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def parse_fraction(text: str) -> Fraction:
    """Parse "p/q", "2^-64", integer, or decimal literals exactly."""
    text = text.strip()
    if "^" in text:
        base, exp = text.split("^")
        return Fraction(int(base)) ** int(exp)
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(text)
