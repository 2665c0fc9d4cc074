"""Enumeration of fundamental intervals, plateau records, and staircase tables.

A fundamental word generates an interval of bases; the irreducible and
n-irreducible ones are exactly the entropy plateaus above the Komornik-Loreti
base, with two kinds of boundary cases that are flagged rather than silently
classified:

* the unit-lift interval [q_G, q_T] is listed as ``distinguished`` -- the
  entropy there is not constant and the plateau theorem does not cover it;
* the n-irreducible interval whose right endpoint is the ladder base
  q_(n+1)' spans infinitely many ladder levels and is flagged ``boundary``.

All placement claims (interval inside a ladder level) are certified twice:
symbolically, by comparing expansions lexicographically, and numerically, by
disjointness of the rational enclosures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .composition import classify, map_base, unit_lift
from .errors import PrecisionExhausted
from .expansions import (
    TOL,
    BaseEnclosure,
    base_from_expansion,
    fundamental_interval,
    komornik_loreti_digits,
    ladder_base,
    point_base,
)
from .intervals import decimal_str, frac_str
from .subshift import (
    ENTROPY_TOL,
    EntropyEnclosure,
    build_automaton,
    entropy,
    entropy_bounds,
    hausdorff_dimension,
)
from .words import (
    EpSequence,
    FundamentalWord,
    Word,
    is_fundamental,
    lex_compare,
    periodic,
)


def enumerate_fundamental(m: int, max_len: int) -> list:
    """All fundamental words of length <= max_len, ordered by left endpoint.

    Backtracking with two-sided prefix pruning; a candidate prefix dies as
    soon as some suffix window is strictly outside the allowed band.
    """
    if max_len < 1:
        raise ValueError("need max_len >= 1")
    found = []

    def extend(prefix):
        l = len(prefix)
        if l > 0:
            for i in range(1, l):
                window = prefix[i:]
                upper = prefix[: l - i]
                if window > upper:
                    return
                if window < tuple(m - x for x in upper):
                    return
            w = Word(prefix, m)
            if is_fundamental(w):
                found.append(FundamentalWord(w))
        if l < max_len:
            for d in range(m + 1):
                extend(prefix + (d,))

    extend(())
    order = cmp_to_key(lambda a, b: lex_compare(periodic(a.word), periodic(b.word)))
    return sorted(found, key=order)


def ladder_alpha(m: int, n: int) -> EpSequence:
    """Expansion of 1 at the ladder base q_n', symbolically."""
    size = 2 ** (n - 1) if m % 2 == 0 else 2**n
    lam = komornik_loreti_digits(m, size)
    return EpSequence(lam.digits, lam.reflected().incremented().digits, m)


@dataclass(frozen=True)
class LadderIndex:
    """Level n of the base ladder: the half-open range (q_(n+1)', q_n']."""

    n: int
    lower: BaseEnclosure  # q_(n+1)'
    upper: BaseEnclosure  # q_n'   (the point M+1 for n = 0)

    def to_json(self, digits: int = 12) -> dict:
        return {
            "n": self.n,
            "lower": self.lower.to_json(digits),
            "upper": self.upper.to_json(digits),
        }


def ladder(m: int, n_max: int, tol: Fraction = TOL) -> list:
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    bases = {0: point_base(m + 1, m)}
    for n in range(1, n_max + 2):
        bases[n] = ladder_base(m, n, tol)
    return [LadderIndex(n, bases[n + 1], bases[n]) for n in range(n_max + 1)]


@dataclass(frozen=True)
class PlateauRecord:
    """One enumerated plateau (or flagged boundary interval) of the entropy map."""

    word: FundamentalWord
    q_left: BaseEnclosure
    q_right: BaseEnclosure
    entropy: EntropyEnclosure
    kind: str  # "irreducible" | "n_irreducible"
    n: int | None
    ladder_index: int | None
    distinguished: bool = False  # the unit-lift interval [q_G, q_T]
    boundary: bool = False  # right endpoint is a ladder base

    def to_json(self, digits: int = 12) -> dict:
        return {
            "word": str(self.word),
            "q_left": self.q_left.to_json(digits),
            "q_right": self.q_right.to_json(digits),
            "entropy": self.entropy.to_json(digits),
            "class": self.kind if self.n is None else f"{self.n}-irreducible",
            "ladder_index": self.ladder_index,
            "distinguished": self.distinguished,
            "boundary": self.boundary,
        }


def _certify_inside(
    left: BaseEnclosure, right: BaseEnclosure, level: LadderIndex
) -> None:
    """Numeric cross-check of a symbolically certified placement; refines the
    enclosures when they are too coarse to separate (always possible here,
    because all four carry defining expansions and the orderings are strict)."""
    lower, upper = level.lower, level.upper
    for _ in range(8):
        if left.lo > lower.hi and right.hi <= upper.lo:
            return
        left = left.refined(left.width / 2**16) if left.width else left
        right = right.refined(right.width / 2**16) if right.width else right
        lower = lower.refined(lower.width / 2**16) if lower.width else lower
        upper = upper.refined(upper.width / 2**16) if upper.width else upper
    raise RuntimeError(
        f"interval [{left.lo}, {right.hi}] not certified inside ladder level {level.n}"
    )


def enumerate_plateaus(
    m: int,
    max_len: int,
    region=None,
    tol: Fraction = TOL,
    entropy_tol: Fraction = ENTROPY_TOL,
) -> list:
    """All irreducible and n-irreducible words of length <= max_len with their
    intervals, entropies and certified ladder placement, in base order.

    Completeness is by word length only: plateaus are dense, so no claim is
    made of covering any base range exhaustively.
    """
    if max_len < 1:
        raise ValueError("need max_len >= 1")
    u = unit_lift(m)
    alphas = {}

    def lad_alpha(n):
        if n not in alphas:
            alphas[n] = ladder_alpha(m, n)
        return alphas[n]

    lad_encs = {}

    def lad_enc(n):
        if n not in lad_encs:
            lad_encs[n] = (
                point_base(m + 1, m) if n == 0 else ladder_base(m, n, tol)
            )
        return lad_encs[n]

    records = []
    for a in enumerate_fundamental(m, max_len):
        cls = classify(a)
        if cls.kind == "reducible":
            continue
        left, right = fundamental_interval(a, tol)
        h_left = entropy(build_automaton(a.left_alpha()), entropy_tol)
        h_right = entropy(build_automaton(a.right_alpha()), entropy_tol)
        hull = h_left.hull(h_right)
        distinguished = a.digits == u.digits
        boundary = False
        index = None
        if cls.kind == "irreducible" and not distinguished:
            if lex_compare(a.left_alpha(), lad_alpha(1)) <= 0:
                raise RuntimeError(f"irreducible {a} not above the transitive base")
            index = 0
            _certify_inside(left, right, LadderIndex(0, lad_enc(1), lad_enc(0)))
        elif cls.kind == "n_irreducible":
            nn = cls.n
            if lex_compare(a.right_alpha(), lad_alpha(nn + 1)) == 0:
                boundary = True
            else:
                if not (
                    lex_compare(a.left_alpha(), lad_alpha(nn + 1)) > 0
                    and lex_compare(a.right_alpha(), lad_alpha(nn)) <= 0
                ):
                    raise RuntimeError(f"{nn}-irreducible {a} not inside its level")
                index = nn
                _certify_inside(
                    left, right, LadderIndex(nn, lad_enc(nn + 1), lad_enc(nn))
                )
        records.append(
            PlateauRecord(
                a, left, right, hull, cls.kind, cls.n, index, distinguished, boundary
            )
        )
    if region is not None:
        r_lo, r_hi = Fraction(region[0]), Fraction(region[1])
        records = [
            r for r in records if not (r.q_right.hi < r_lo or r.q_left.lo > r_hi)
        ]
    return records


# ---------------------------------------------------------------------------
# the entropy bridge


@dataclass(frozen=True)
class BridgeReport:
    """Two routes to the same entropy: direct, and scaled through the image base."""

    q: BaseEnclosure
    q_image: BaseEnclosure
    direct: EntropyEnclosure
    mapped: EntropyEnclosure  # c_M * entropy at the image base
    scale: Fraction
    tol: Fraction
    ok: bool

    def to_json(self, digits: int = 12) -> dict:
        return {
            "q": self.q.to_json(digits),
            "q_image": self.q_image.to_json(digits),
            "direct": self.direct.to_json(digits),
            "mapped": self.mapped.to_json(digits),
            "scale": frac_str(self.scale),
            "tol": frac_str(self.tol),
            "ok": self.ok,
        }


def verify_entropy_bridge(
    through: FundamentalWord | None,
    q: BaseEnclosure,
    tol: Fraction = Fraction(1, 10**6),
    entropy_tol: Fraction = ENTROPY_TOL,
) -> BridgeReport:
    """Compare H(q) against c_M * H*(image of q), reporting both enclosures.

    ``through`` defaults to the unit lift; c_M is 1 for even M and 1/2 for
    odd M (the block length of the unit lift divides the entropy).
    """
    if q.alpha is None:
        raise ValueError("bridge check needs a base with a defining expansion")
    word = unit_lift(q.M) if through is None else through
    scale = Fraction(1) if q.M % 2 == 0 else Fraction(1, 2)
    direct = entropy(build_automaton(q.alpha), entropy_tol)
    image = map_base(word, q, TOL)
    h_image = entropy(build_automaton(image.alpha), entropy_tol)
    mapped = EntropyEnclosure(scale * h_image.lo, scale * h_image.hi)
    ok = direct.overlaps(mapped, tol)
    return BridgeReport(q, image, direct, mapped, scale, tol, ok)


# ---------------------------------------------------------------------------
# staircase tables


@dataclass(frozen=True)
class StaircaseRow:
    q: BaseEnclosure
    h: EntropyEnclosure | None
    dim: tuple | None
    status: str

    def to_csv(self, digits: int = 12) -> str:
        if self.h is None:
            return ",".join(
                [
                    decimal_str(self.q.lo, digits, "down"),
                    decimal_str(self.q.hi, digits, "up"),
                    "",
                    "",
                    "",
                    "",
                    self.status,
                ]
            )
        return ",".join(
            [
                decimal_str(self.q.lo, digits, "down"),
                decimal_str(self.q.hi, digits, "up"),
                decimal_str(self.h.lo, digits, "down"),
                decimal_str(self.h.hi, digits, "up"),
                decimal_str(self.dim[0], digits, "down"),
                decimal_str(self.dim[1], digits, "up"),
                self.status,
            ]
        )

    def to_json(self, digits: int = 12) -> dict:
        return {
            "q": self.q.to_json(digits),
            "h": self.h.to_json(digits) if self.h else None,
            "dim_lo": decimal_str(self.dim[0], digits, "down") if self.dim else None,
            "dim_hi": decimal_str(self.dim[1], digits, "up") if self.dim else None,
            "status": self.status,
        }


STAIRCASE_HEADER = "q_lo,q_hi,h_lo,h_hi,dim_lo,dim_hi,status"


def entropy_pool(m: int, max_len: int, entropy_tol: Fraction = ENTROPY_TOL) -> list:
    """(left endpoint, entropy) pairs for all fundamental words up to max_len,
    used as certified lower bounds for H at arbitrary bases."""
    pool = []
    for a in enumerate_fundamental(m, max_len):
        enc = base_from_expansion(a.left_alpha(), TOL)
        pool.append((enc, entropy(build_automaton(a.left_alpha()), entropy_tol)))
    return pool


def staircase(
    m: int,
    grid,
    depth: int = 30,
    max_word_len: int | None = None,
    entropy_tol: Fraction = ENTROPY_TOL,
) -> list:
    """Entropy and dimension bounds along a grid of bases, in base order.

    Lower bounds are carried forward along the grid (H is nondecreasing), so
    both bound columns come out monotone; a violation would mean a bug and
    raises.  Rows that cannot be certified at this precision are marked
    "precision" and carry no numbers.
    """
    if max_word_len is None:
        max_word_len = 8 if m == 1 else 4
    pool = entropy_pool(m, max_word_len, entropy_tol)
    rows = []
    carried = Fraction(0)
    prev_upper = None
    for q in sorted(grid, key=lambda e: (e.lo, e.hi)):
        try:
            h = entropy_bounds(q, depth, pool=pool, tol=entropy_tol)
        except PrecisionExhausted:
            rows.append(StaircaseRow(q, None, None, "precision"))
            continue
        lo = max(h.lo, carried)
        if lo > h.hi:
            lo = h.hi
        carried = lo
        h = EntropyEnclosure(lo, h.hi, h.lam_lo, h.lam_hi)
        if prev_upper is not None and h.hi < prev_upper:
            raise RuntimeError("upper entropy bounds came out non-monotone")
        prev_upper = h.hi
        rows.append(StaircaseRow(q, h, hausdorff_dimension(q, h), "ok"))
    return rows
