"""Finite words and eventually periodic sequences over the digits {0, ..., M}.

Everything here is exact and symbolic: a word is a nonempty tuple of digits,
and an eventually periodic sequence is stored in canonical form (primitive
period, shortest possible preperiod) so that structural equality coincides
with equality of the underlying infinite sequences.  Canonical form also
rules out sequences that end in 0^inf, with the single exception of the zero
sequence itself; callers that additionally need the quasi-greedy convention
(no 0^inf tail at all) must test for the zero sequence separately.

Comparisons follow the usual lexicographic order; a finite word is compared
against anything infinite by padding it with 0^inf.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import DigitOverflow, DigitUnderflow, NotFundamental

LT, EQ, GT = -1, 0, 1


def format_digits(digits, m):
    """Render digits: compact string for one-char digits, bracketed otherwise."""
    if m <= 9:
        return "".join(str(d) for d in digits)
    return "[" + ",".join(str(d) for d in digits) + "]"


def parse_digit_block(text, m):
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError(f"unbalanced brackets in {text!r}")
        inner = text[1:-1].strip()
        if not inner:
            return ()
        return tuple(int(part) for part in inner.split(","))
    return tuple(int(ch) for ch in text)


@dataclass(frozen=True)
class Word:
    """A nonempty finite word over {0, ..., M}."""

    digits: tuple
    M: int

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        if self.M < 1:
            raise ValueError("alphabet needs M >= 1")
        if len(self.digits) == 0:
            raise ValueError("empty words are not allowed")
        for d in self.digits:
            if not (0 <= d <= self.M):
                raise ValueError(f"digit {d} outside 0..{self.M}")

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def __str__(self):
        return format_digits(self.digits, self.M)

    def reflected(self) -> "Word":
        return Word(tuple(self.M - d for d in self.digits), self.M)

    def incremented(self) -> "Word":
        if self.digits[-1] >= self.M:
            raise DigitOverflow(f"cannot increment {self}: last digit is {self.M}")
        return Word(self.digits[:-1] + (self.digits[-1] + 1,), self.M)

    def decremented(self) -> "Word":
        if self.digits[-1] <= 0:
            raise DigitUnderflow(f"cannot decrement {self}: last digit is 0")
        return Word(self.digits[:-1] + (self.digits[-1] - 1,), self.M)


def word(text, m) -> Word:
    """Parse a word literal ("110" for M <= 9, "[10,3,0]" for larger M)."""
    return Word(parse_digit_block(text, m), m)


def reflect(w: Word) -> Word:
    return w.reflected()


def increment_last(w: Word) -> Word:
    return w.incremented()


def decrement_last(w: Word) -> Word:
    return w.decremented()


def _primitive_root(block):
    n = len(block)
    for d in range(1, n + 1):
        if n % d == 0 and block == block[:d] * (n // d):
            return block[:d]
    return block


@dataclass(frozen=True)
class EpSequence:
    """An eventually periodic sequence preperiod (period)^inf, canonicalized.

    The constructor reduces the period to its primitive root and rolls back
    the preperiod as far as possible, then rejects any sequence that ends in
    0^inf other than the zero sequence itself.
    """

    preperiod: tuple
    period: tuple
    M: int

    def __post_init__(self):
        pre = tuple(self.preperiod)
        per = tuple(self.period)
        if self.M < 1:
            raise ValueError("alphabet needs M >= 1")
        if len(per) == 0:
            raise ValueError("period must be nonempty")
        for d in pre + per:
            if not (0 <= d <= self.M):
                raise ValueError(f"digit {d} outside 0..{self.M}")
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
        if per == (0,) and pre:
            raise ValueError(
                "sequences ending in 0^inf are not representable "
                "(only the zero sequence itself is)"
            )
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def p(self):
        return len(self.preperiod)

    @property
    def m(self):
        return len(self.period)

    def at(self, i) -> int:
        """Digit at 0-based position i."""
        if i < self.p:
            return self.preperiod[i]
        return self.period[(i - self.p) % self.m]

    def prefix(self, n) -> Word:
        if n < 1:
            raise ValueError("prefix length must be >= 1")
        return Word(tuple(self.at(i) for i in range(n)), self.M)

    def shifted(self, n=1) -> "EpSequence":
        """Drop the first n digits."""
        if n < 0:
            raise ValueError("shift must be >= 0")
        if n <= self.p:
            return EpSequence(self.preperiod[n:], self.period, self.M)
        k = (n - self.p) % self.m
        return EpSequence((), self.period[k:] + self.period[:k], self.M)

    def reflected(self) -> "EpSequence":
        return EpSequence(
            tuple(self.M - d for d in self.preperiod),
            tuple(self.M - d for d in self.period),
            self.M,
        )

    def is_zero(self) -> bool:
        return self.period == (0,) and not self.preperiod

    def __str__(self):
        head = format_digits(self.preperiod, self.M) if self.preperiod else ""
        return f"{head}({format_digits(self.period, self.M)})"


def ep_sequence(text, m) -> EpSequence:
    """Parse a sequence literal "pre(period)", e.g. "11(01)"."""
    text = text.strip()
    if not text.endswith(")") or "(" not in text:
        raise ValueError(f"expected 'pre(period)' literal, got {text!r}")
    cut = text.rindex("(")
    head, per = text[:cut], text[cut + 1 : -1]
    pre = parse_digit_block(head, m) if head else ()
    return EpSequence(pre, parse_digit_block(per, m), m)


def periodic(w: Word) -> EpSequence:
    """The purely periodic sequence w^inf."""
    return EpSequence((), w.digits, w.M)


def _stream(x):
    """(digit-at, preperiod-length, period-length) view of a Word or EpSequence."""
    if isinstance(x, Word):
        digits, n = x.digits, len(x)
        return (lambda i: digits[i] if i < n else 0), n, 1
    return x.at, x.p, x.m


def _stream_cmp(at1, p1, m1, at2, p2, m2) -> int:
    # Two eventually periodic streams agree everywhere iff they agree up to
    # the longer preperiod plus the lcm of the periods.
    bound = max(p1, p2) + (m1 * m2) // gcd(m1, m2)
    for i in range(bound):
        a, b = at1(i), at2(i)
        if a != b:
            return LT if a < b else GT
    return EQ


def lex_compare(x, y) -> int:
    """Lexicographic comparison of words/sequences; returns LT, EQ or GT.

    Finite words are padded with 0^inf, so e.g. "10" < "110" but "10" > "1".
    """
    if x.M != y.M:
        raise ValueError("cannot compare over different alphabets")
    return _stream_cmp(*_stream(x), *_stream(y))


def is_admissible_v(s: EpSequence) -> bool:
    """True iff every shift of s lies weakly between reflect(s) and s.

    Decidable because s has only p + m distinct shifts; the reflection is
    compared through a digit view so that sequences whose reflection would
    end in 0^inf (i.e. s ends in M^inf) are still handled.
    """
    at, p, m = _stream(s)
    refl = lambda i: s.M - at(i)
    for n in range(p + m):
        sh = lambda i, n=n: at(n + i)
        ps = max(p - n, 0)
        if _stream_cmp(sh, ps, m, at, p, m) == GT:
            return False
        if _stream_cmp(sh, ps, m, refl, p, m) == LT:
            return False
    return True


def is_quasi_greedy_admissible(s: EpSequence) -> bool:
    """True iff s is the quasi-greedy expansion of 1 for some base.

    Such sequences are exactly those not ending in 0^inf whose every shift is
    weakly below the sequence itself; bases and sequences correspond
    bijectively and monotonically.
    """
    if s.is_zero():
        return False
    at, p, m = _stream(s)
    for n in range(1, p + m + 1):
        sh = lambda i, n=n: at(n + i)
        if _stream_cmp(sh, max(p - n, 0), m, at, p, m) == GT:
            return False
    return True


def is_fundamental(w: Word) -> bool:
    """Two-sided suffix test: reflect(prefix) <= suffix < prefix for every cut.

    Length-1 words qualify only for M >= 2, where the condition degenerates
    to M - a <= a < M.  A fundamental word never ends in the digit M.
    """
    d, m, M = w.digits, len(w), w.M
    if m == 1:
        return M >= 2 and M - d[0] <= d[0] < M
    for i in range(1, m):
        suffix = d[i:]
        prefix = d[: m - i]
        if not suffix < prefix:
            return False
        if not tuple(M - x for x in prefix) <= suffix:
            return False
    return True


@dataclass(frozen=True)
class FundamentalWord:
    """A validated fundamental word; constructing one re-checks the inequalities."""

    word: Word

    def __post_init__(self):
        if not is_fundamental(self.word):
            raise NotFundamental(f"{self.word} is not fundamental over M={self.word.M}")

    @property
    def digits(self):
        return self.word.digits

    @property
    def M(self):
        return self.word.M

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return str(self.word)

    def left_alpha(self) -> EpSequence:
        """The purely periodic sequence word^inf (expansion at the left endpoint)."""
        return periodic(self.word)

    def right_alpha(self) -> EpSequence:
        """word+ followed by (reflection)^inf (expansion at the right endpoint)."""
        return EpSequence(
            self.word.incremented().digits, self.word.reflected().digits, self.M
        )


def fundamental(text_or_word, m=None) -> FundamentalWord:
    if isinstance(text_or_word, Word):
        return FundamentalWord(text_or_word)
    return FundamentalWord(word(text_or_word, m))
