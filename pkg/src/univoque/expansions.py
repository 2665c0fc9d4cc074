"""Certified numerics connecting digit sequences and bases.

A base is always carried around as a rational interval (:class:`BaseEnclosure`)
that provably contains it, optionally tagged with the eventually periodic
expansion of 1 that defines it.  All decisions that feed lexicographic
conclusions (digit choices, orderings of bases) are made with exact integer
or rational arithmetic; nothing here rounds silently.

The bridge between the two worlds is the classical bijection q <-> alpha(q),
where alpha(q) is the quasi-greedy expansion of 1 in base q: the largest
expansion of 1 that does not end in 0^inf.  The bijection is strictly
increasing, which is what makes bisection on digit prefixes sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotQuasiGreedy, PrecisionExhausted
from .intervals import ceil_frac, decimal_str, frac_str
from .words import (
    EpSequence,
    FundamentalWord,
    Word,
    is_quasi_greedy_admissible,
)

#: default tolerance for base enclosures
TOL = Fraction(1, 2**64)


@dataclass(frozen=True)
class BaseEnclosure:
    """A certified rational interval [lo, hi] containing one base q in (1, M+1].

    When ``alpha`` is present it is the quasi-greedy expansion of 1 in base q,
    and the enclosure can be refined arbitrarily by re-bisecting the defining
    polynomial.  Without it the enclosure is as good as it will ever get.
    """

    lo: Fraction
    hi: Fraction
    M: int
    alpha: EpSequence | None = None

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not (1 < self.lo <= self.hi <= self.M + 1):
            raise ValueError(
                f"enclosure [{self.lo}, {self.hi}] outside (1, {self.M + 1}]"
            )
        if self.alpha is not None and self.alpha.M != self.M:
            raise ValueError("defining expansion uses a different alphabet")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def is_point(self) -> bool:
        return self.lo == self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refined(self, tol: Fraction) -> "BaseEnclosure":
        if self.width <= tol:
            return self
        if self.alpha is None:
            raise PrecisionExhausted(
                f"cannot refine enclosure of width {self.width} without a defining expansion"
            )
        return base_from_expansion(self.alpha, tol)

    def to_json(self, digits: int = 12) -> dict:
        return {
            "lo": frac_str(self.lo),
            "hi": frac_str(self.hi),
            "alpha": str(self.alpha) if self.alpha is not None else None,
            "dec_lo": decimal_str(self.lo, digits, "down"),
            "dec_hi": decimal_str(self.hi, digits, "up"),
            "dec_digits": digits,
        }

    def __str__(self):
        return f"[{decimal_str(self.lo, 12, 'down')}, {decimal_str(self.hi, 12, 'up')}]"


def point_base(q, m: int, alpha: EpSequence | None = None) -> BaseEnclosure:
    q = Fraction(q)
    return BaseEnclosure(q, q, m, alpha)


# ---------------------------------------------------------------------------
# evaluating the power series of a sequence


def series_value_at(s: EpSequence, q: Fraction) -> Fraction:
    """Exact value of sum s_i q^-i for an eventually periodic s at rational q > 1."""
    q = Fraction(q)
    if q <= 1:
        raise ValueError("series only converges for q > 1")
    inv = 1 / q
    acc = Fraction(0)
    power = Fraction(1)
    for d in s.preperiod:
        power *= inv
        acc += d * power
    head_scale = power
    per = Fraction(0)
    power = Fraction(1)
    for d in s.period:
        power *= inv
        per += d * power
    return acc + head_scale * per / (1 - inv**s.m)


def series_value_word_at(w: Word, q: Fraction) -> Fraction:
    """Exact value of sum w_i q^-i for a finite word (i.e. of w 0^inf)."""
    q = Fraction(q)
    acc = Fraction(0)
    for d in reversed(w.digits):
        acc = (acc + d) / q
    return acc


def series_value(s: EpSequence, q: BaseEnclosure):
    """Certified enclosure of sum s_i q^-i; the series is decreasing in q."""
    if s.M != q.M:
        raise ValueError("sequence and base use different alphabets")
    return series_value_at(s, q.hi), series_value_at(s, q.lo)


def expansion_polynomial(s: EpSequence) -> list:
    """Integer coefficients (index = power) of P with P(q) = 0 iff sum s_i q^-i = 1.

    P(q) = q^p (q^m - 1)(1 - sum s_i q^-i), so P < 0 below the root and
    P > 0 above it, for q > 1.
    """
    p, m = s.p, s.m
    coeffs = [0] * (p + m + 1)
    coeffs[p + m] += 1
    coeffs[p] -= 1
    for i, u in enumerate(s.preperiod, start=1):
        coeffs[p - i + m] -= u
        coeffs[p - i] += u
    for j, w in enumerate(s.period, start=1):
        coeffs[m - j] -= w
    return coeffs


def poly_sign_at(coeffs: list, q: Fraction) -> int:
    """Sign of sum coeffs[k] q^k, evaluated exactly with integers."""
    num, den = q.numerator, q.denominator
    acc = 0
    dpow = 1
    for c in reversed(coeffs):
        acc = acc * num + c * dpow
        dpow *= den
    return (acc > 0) - (acc < 0)


# ---------------------------------------------------------------------------
# base <-> expansion


def base_from_expansion(s: EpSequence, tol: Fraction = TOL) -> BaseEnclosure:
    """The unique base whose quasi-greedy expansion of 1 equals s.

    Bisection with exact integer sign evaluation of the cleared-denominator
    polynomial; monotonicity of q -> alpha(q) guarantees a single sign change
    on (1, M+1].  Exact rational roots come back as point enclosures.
    """
    if not is_quasi_greedy_admissible(s):
        raise NotQuasiGreedy(f"{s} is not a quasi-greedy expansion of 1")
    m = s.M
    coeffs = expansion_polynomial(s)
    # the polynomial is monic, so any rational root is an integer
    for t in range(2, m + 2):
        if poly_sign_at(coeffs, Fraction(t)) == 0:
            return point_base(t, m, s)
    hi = Fraction(m + 1)
    sign_hi = poly_sign_at(coeffs, hi)
    assert sign_hi > 0, "series at M+1 cannot exceed 1"
    lo = Fraction(3, 2)
    while True:
        sign_lo = poly_sign_at(coeffs, lo)
        if sign_lo == 0:
            return point_base(lo, m, s)
        if sign_lo < 0:
            break
        lo = 1 + (lo - 1) / 2
    if lo > hi:
        lo = Fraction(1 + hi) / 2  # degenerate alphabets where M+1 < 3/2 never occur
    while hi - lo > tol:
        mid = (lo + hi) / 2
        sign = poly_sign_at(coeffs, mid)
        if sign == 0:
            return point_base(mid, m, s)
        if sign < 0:
            lo = mid
        else:
            hi = mid
    return BaseEnclosure(lo, hi, m, s)


def certify_less(a: BaseEnclosure, b: BaseEnclosure, max_rounds: int = 12) -> bool:
    """Certified strict comparison of two enclosed bases, refining as needed.

    Raises PrecisionExhausted when the enclosures keep overlapping and cannot
    be refined further (e.g. both lack defining expansions, or the bases are
    actually equal).
    """
    for _ in range(max_rounds):
        if a.hi < b.lo:
            return True
        if b.hi < a.lo:
            return False
        progress = False
        for enc in (a, b):
            if enc.width > 0 and enc.alpha is not None:
                progress = True
        if not progress:
            break
        if a.alpha is not None and a.width > 0:
            a = a.refined(a.width / 2**16)
        if b.alpha is not None and b.width > 0:
            b = b.refined(b.width / 2**16)
    raise PrecisionExhausted(
        f"cannot separate enclosures [{a.lo},{a.hi}] and [{b.lo},{b.hi}]"
    )


def quasi_greedy_digits_at(q: Fraction, m: int, n: int) -> Word:
    """First n digits of alpha(q) for an exact rational base q in (1, M+1].

    Digit rule: a_k = min(M, ceil(q r) - 1) with remainder r kept strictly
    positive, which at exact integer hits picks the smaller digit (this is
    what keeps the expansion from terminating in 0^inf).
    """
    q = Fraction(q)
    if not (1 < q <= m + 1):
        raise ValueError(f"base {q} outside (1, {m + 1}]")
    if n < 1:
        raise ValueError("need n >= 1")
    r = Fraction(1)
    out = []
    for _ in range(n):
        x = q * r
        d = min(m, ceil_frac(x) - 1)
        out.append(d)
        r = x - d
        assert 0 < r <= 1
    return Word(tuple(out), m)


def _digits_on_interval(qlo: Fraction, qhi: Fraction, m: int, n: int) -> Word:
    rlo = rhi = Fraction(1)
    out = []
    for k in range(1, n + 1):
        xlo, xhi = qlo * rlo, qhi * rhi
        tlo, thi = ceil_frac(xlo), ceil_frac(xhi)
        if tlo != thi:
            raise PrecisionExhausted(
                f"digit {k} of the quasi-greedy expansion is not certified at "
                f"width {qhi - qlo} (certified prefix: {k - 1} digits); supply a "
                f"defining expansion or a tighter interval",
                certified=k - 1,
            )
        d = min(m, tlo - 1)
        out.append(d)
        rlo, rhi = xlo - d, xhi - d
        if rlo <= 0:
            raise PrecisionExhausted(
                f"remainder positivity lost after digit {k} at width {qhi - qlo} "
                f"(certified prefix: {k} digits)",
                certified=k,
            )
    return Word(tuple(out), m)


def quasi_greedy_digits(q: BaseEnclosure, n: int) -> Word:
    """First n digits of alpha(q), certified over the whole enclosure.

    Point enclosures run the digit recursion exactly.  Enclosures tagged with
    their defining expansion read the digits straight off it (the expansion
    *is* alpha(q), by uniqueness of the quasi-greedy expansion).  Bare
    non-point enclosures run the recursion in interval arithmetic and raise
    PrecisionExhausted on the first digit the interval cannot decide --
    unavoidable, since near e.g. a purely periodic base the digits are not
    locally constant in q.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if q.alpha is not None:
        return q.alpha.prefix(n)
    if q.is_point():
        return quasi_greedy_digits_at(q.lo, q.M, n)
    return _digits_on_interval(q.lo, q.hi, q.M, n)


def detect_periodic_expansion(
    q: Fraction, m: int, max_pre: int = 16, max_period: int = 16
) -> EpSequence | None:
    """Certified eventually periodic alpha(q) for exact rational q, if one exists
    with the given preperiod/period budget.  Candidates read off the digit
    recursion are only accepted after an exact check that the series sums to 1
    and the sequence is admissible, so a hit is a proof, not a guess."""
    total = max_pre + 2 * max_period + 8
    w = quasi_greedy_digits_at(q, m, total).digits
    for period in range(1, max_period + 1):
        for pre in range(0, max_pre + 1):
            if any(w[i] != w[i - period] for i in range(pre + period, total)):
                continue
            try:
                s = EpSequence(w[:pre], w[pre : pre + period], m)
            except ValueError:
                continue
            if poly_sign_at(expansion_polynomial(s), q) == 0 and is_quasi_greedy_admissible(s):
                return s
    return None


# ---------------------------------------------------------------------------
# Thue-Morse machinery and the special bases


def thue_morse_bit(i: int) -> int:
    """i-th bit (1-based) of the shifted Thue-Morse sequence 1101 0011 ..."""
    return bin(i).count("1") & 1


def thue_morse(n: int) -> Word:
    if n < 1:
        raise ValueError("need n >= 1")
    return Word(tuple(thue_morse_bit(i) for i in range(1, n + 1)), 1)


def komornik_loreti_digit(m: int, i: int) -> int:
    """i-th digit (1-based) of the expansion of 1 at the Komornik-Loreti base."""
    k = m // 2
    if m % 2 == 0:
        return k + thue_morse_bit(i) - (thue_morse_bit(i - 1) if i > 1 else 0)
    return k + thue_morse_bit(i)


def komornik_loreti_digits(m: int, n: int) -> Word:
    if n < 1:
        raise ValueError("need n >= 1")
    return Word(tuple(komornik_loreti_digit(m, i) for i in range(1, n + 1)), m)


def _compare_digits_to_stream(q: Fraction, m: int, target, max_depth: int = 4096) -> int:
    """Lexicographic position of alpha(q) against a digit stream (1-based callable)."""
    r = Fraction(1)
    for i in range(1, max_depth + 1):
        x = q * r
        d = min(m, ceil_frac(x) - 1)
        c = target(i)
        if d != c:
            return -1 if d < c else 1
        r = x - d
    raise PrecisionExhausted(
        f"alpha({q}) agrees with the target stream to depth {max_depth}", certified=max_depth
    )


def golden_base(m: int, tol: Fraction = TOL) -> BaseEnclosure:
    """Largest base below which 1 has trivial unique-expansion behaviour;
    its expansion of 1 is k^inf (M = 2k) or ((k+1)k)^inf (M = 2k+1)."""
    k = m // 2
    s = EpSequence((), (k,) if m % 2 == 0 else (k + 1, k), m)
    return base_from_expansion(s, tol)


def ladder_base(m: int, n: int, tol: Fraction = TOL) -> BaseEnclosure:
    """The n-th base q_n' of the interval ladder; q_1' is the transitive base.

    Its expansion of 1 is the length 2^(n-1) (even M) or 2^n (odd M) prefix of
    the Komornik-Loreti expansion, followed by (reflected prefix)+ repeating.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    size = 2 ** (n - 1) if m % 2 == 0 else 2**n
    lam = komornik_loreti_digits(m, size)
    s = EpSequence(lam.digits, lam.reflected().incremented().digits, m)
    return base_from_expansion(s, tol)


def transitive_base(m: int, tol: Fraction = TOL) -> BaseEnclosure:
    return ladder_base(m, 1, tol)


def komornik_loreti_base(m: int, tol: Fraction = TOL) -> BaseEnclosure:
    """Smallest base in which 1 has a unique expansion.

    Bisection on exact digit comparison: alpha(q) < (lambda_i) iff q < q_KL.
    The target expansion is aperiodic, so every comparison against a rational
    candidate terminates.  No defining expansion is attached (there is none
    that is eventually periodic).
    """
    target = lambda i: komornik_loreti_digit(m, i)
    lo = Fraction(5, 4)
    while _compare_digits_to_stream(lo, m, target) >= 0:
        lo = 1 + (lo - 1) / 2
    hi = Fraction(m + 1)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _compare_digits_to_stream(mid, m, target) < 0:
            lo = mid
        else:
            hi = mid
    return BaseEnclosure(lo, hi, m, None)


def special_base(m: int, which: str, tol: Fraction = TOL, n: int | None = None) -> BaseEnclosure:
    """Dispatch on the named special bases: q_G, q_KL, q_T and the ladder q_n'."""
    key = which.lower()
    if key in ("g", "golden", "q_g"):
        return golden_base(m, tol)
    if key in ("kl", "komornik_loreti", "q_kl"):
        return komornik_loreti_base(m, tol)
    if key in ("t", "transitive", "q_t"):
        return transitive_base(m, tol)
    if key in ("prime", "ladder", "q_prime"):
        if n is None:
            raise ValueError("ladder base needs n")
        return ladder_base(m, n, tol)
    raise ValueError(f"unknown special base {which!r}")


def fundamental_interval(a: FundamentalWord, tol: Fraction = TOL):
    """Certified enclosures of the endpoints (q_L, q_R) of the interval of a.

    alpha(q_L) = a^inf and alpha(q_R) = a+ (reflect a)^inf; the two enclosures
    are refined until provably disjoint.
    """
    left = base_from_expansion(a.left_alpha(), tol)
    right = base_from_expansion(a.right_alpha(), tol)
    rounds = 0
    while left.hi >= right.lo:
        tol /= 2**8
        rounds += 1
        if rounds > 8:
            raise RuntimeError(f"endpoint enclosures of {a} refuse to separate")
        left, right = left.refined(tol), right.refined(tol)
    return left, right


# ---------------------------------------------------------------------------
# membership in the symbolic univoque set


def _cmp_shift_vs_alpha(d: EpSequence, n: int, alpha: EpSequence, reflected: bool):
    """lex_compare(shift-n of d, alpha or its reflection), exactly."""
    from .words import _stream_cmp  # local import keeps words free of cycles

    at, p, m = d.at, d.p, d.m
    sh = lambda i: at(n + i)
    if reflected:
        other = lambda i: alpha.M - alpha.at(i)
    else:
        other = alpha.at
    return _stream_cmp(sh, max(p - n, 0), m, other, alpha.p, alpha.m)


def is_univoque_sequence(d: EpSequence, q: BaseEnclosure, depth: int = 256) -> bool:
    """True iff d is the unique expansion of its value in base q.

    Lexicographic characterization: for every n >= 1, the shifted tail must
    stay strictly below alpha(q) whenever the digit before it is below M, and
    strictly above reflect(alpha(q)) whenever that digit is above 0.  With an
    eventually periodic alpha both comparisons are exact; otherwise digit
    prefixes of length ``depth`` are used and ties raise PrecisionExhausted.
    """
    if d.M != q.M:
        raise ValueError("sequence and base use different alphabets")
    m = d.M
    if q.alpha is not None:
        alpha = q.alpha
        for n in range(1, d.p + d.m + 1):
            dn = d.at(n - 1)
            if dn < m and _cmp_shift_vs_alpha(d, n, alpha, False) >= 0:
                return False
            if dn > 0 and _cmp_shift_vs_alpha(d, n, alpha, True) <= 0:
                return False
        return True
    prefix = quasi_greedy_digits(q, depth).digits
    for n in range(1, d.p + d.m + 1):
        dn = d.at(n - 1)
        if dn < m:
            verdict = _prefix_cmp(d, n, prefix, False, m)
            if verdict >= 0:
                return False
        if dn > 0:
            verdict = _prefix_cmp(d, n, prefix, True, m)
            if verdict <= 0:
                return False
    return True


def _prefix_cmp(d: EpSequence, n: int, prefix, reflected: bool, m: int) -> int:
    for i, a in enumerate(prefix):
        b = (m - a) if reflected else a
        x = d.at(n + i)
        if x != b:
            return -1 if x < b else 1
    raise PrecisionExhausted(
        f"shift {n} agrees with alpha(q) to depth {len(prefix)}; deepen the prefix",
        certified=len(prefix),
    )
