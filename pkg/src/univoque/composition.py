"""Block substitution along the two-labeled graph, and the word semigroup.

The directed graph has three vertices (Start, A, B) and five edges, each
carrying two labels: a block over {a+, reflect(a+), a, reflect(a)} for a
fundamental word a, and a bit.  Reading a word as a chain of blocks yields
its bit image; walking bits and emitting blocks inverts the map.  The
composition a o b of a fundamental word a with a binary fundamental word b
is the block image of b, and multiplies lengths.

Vertices are 0 = Start, 1 = A, 2 = B.  Edge table (id: src -> dst, block, bit):

    0: Start -> A   a+          1
    1: A     -> B   reflect(a+) 0
    2: B     -> B   a           0
    3: B     -> A   a+          1
    4: A     -> A   reflect(a)  1

Both labelings are right-resolving: out-edges of a vertex always carry
distinct bits, and distinct blocks too except that when a = reflect(a)
(even M, a = M/2) the blocks on edges 2 and 4 coincide -- parses that would
have to start on one of those edges are rejected as ambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    AmbiguousStart,
    BadStart,
    BlockParseError,
    NotQuasiGreedy,
    PrecisionExhausted,
)
from .expansions import (
    TOL,
    BaseEnclosure,
    base_from_expansion,
    thue_morse_bit,
)
from .words import (
    EpSequence,
    FundamentalWord,
    Word,
    is_fundamental,
    is_quasi_greedy_admissible,
)

START, A, B = 0, 1, 2

EDGE_SRC = (START, A, B, B, A)
EDGE_DST = (A, B, B, A, A)
EDGE_BIT = (1, 0, 0, 1, 1)


def edge_blocks(a: FundamentalWord) -> tuple:
    """Block labels of edges 0..4 for the word a."""
    w = a.word
    a_plus = w.incremented()
    return (a_plus, a_plus.reflected(), w, a_plus, w.reflected())


@dataclass(frozen=True)
class BlockParse:
    """An edge path together with the blocks it spells."""

    path: tuple
    blocks: tuple


def _chunks(a: FundamentalWord, w: Word):
    size = len(a)
    if w.M != a.M:
        raise ValueError("word and block word use different alphabets")
    if len(w) % size != 0 or len(w) == 0:
        raise BlockParseError(
            f"length {len(w)} is not a positive multiple of the block length {size}"
        )
    return [w.digits[i : i + size] for i in range(0, len(w), size)]


def parse_blocks(a: FundamentalWord, w: Word) -> BlockParse:
    """The unique edge path whose block labels spell w.

    w must open with a+ or reflect(a+); openings with a or reflect(a) are
    accepted only when a differs from its reflection (otherwise the first
    edge cannot be identified and the parse is refused).
    """
    labels = edge_blocks(a)
    blocks = [lab.digits for lab in labels]
    chunks = _chunks(a, w)
    first = chunks[0]
    self_reflected = blocks[2] == blocks[4]
    if first == blocks[0]:
        path = [0]
    elif first == blocks[1]:
        path = [1]
    elif self_reflected and first == blocks[2]:
        raise AmbiguousStart(
            f"{a} equals its reflection; a parse starting with block {a} is ambiguous"
        )
    elif first == blocks[2]:
        path = [2]
    elif first == blocks[4]:
        path = [4]
    else:
        raise BlockParseError(f"block 1 of {w} is not a label of the graph of {a}")
    vertex = EDGE_DST[path[0]]
    for pos, chunk in enumerate(chunks[1:], start=2):
        out = (1, 4) if vertex == A else (2, 3)
        for e in out:
            if chunk == blocks[e]:
                path.append(e)
                vertex = EDGE_DST[e]
                break
        else:
            raise BlockParseError(
                f"block {pos} of {w} does not continue the parse over {a}"
            )
    return BlockParse(tuple(path), tuple(labels[e] for e in path))


def to_bits(a: FundamentalWord, w: Word) -> Word:
    """Bit image of a block word: the second labels along its parse path."""
    parse = parse_blocks(a, w)
    return Word(tuple(EDGE_BIT[e] for e in parse.path), 1)


def from_bits(a: FundamentalWord, bits: Word) -> Word:
    """Block preimage of a bit word starting with 1; |result| = |a| * |bits|."""
    if bits.M != 1:
        raise ValueError("bit words live over the alphabet {0, 1}")
    if bits.digits[0] != 1:
        raise BadStart("a bit word must begin with 1 to leave the start vertex")
    labels = edge_blocks(a)
    vertex = START
    out = []
    for bit in bits.digits:
        if vertex == START:
            e = 0  # only edge, bit 1
        elif vertex == A:
            e = 4 if bit else 1
        else:
            e = 3 if bit else 2
        out.extend(labels[e].digits)
        vertex = EDGE_DST[e]
    return Word(tuple(out), a.M)


def compose(a: FundamentalWord, b: FundamentalWord) -> FundamentalWord:
    """The composition a o b: block preimage of b through the graph of a.

    Defined for binary b only; the result is again fundamental (that is a
    theorem, and a failed revalidation here would disprove it).
    """
    if b.M != 1:
        raise ValueError("the second factor of a composition must be binary")
    image = from_bits(a, b.word)
    try:
        return FundamentalWord(image)
    except Exception as exc:  # pragma: no cover - would falsify closure
        raise RuntimeError(f"composition {a} o {b} produced non-fundamental {image}") from exc


def unit_lift(m: int) -> FundamentalWord:
    """Shortest fundamental word over {0..M}: k for M = 2k, (k+1)k for M = 2k+1."""
    k = m // 2
    digits = (k,) if m % 2 == 0 else (k + 1, k)
    return FundamentalWord(Word(digits, m))


@dataclass(frozen=True)
class Decomposition:
    """Irreducible factorization head o tail[0] o tail[1] o ..."""

    head: FundamentalWord
    tail: tuple

    @property
    def factors(self):
        return (self.head,) + self.tail

    def __len__(self):
        return 1 + len(self.tail)

    def recompose(self) -> FundamentalWord:
        out = self.head
        for f in self.tail:
            out = compose(out, f)
        return out

    def to_json(self):
        return [str(f) for f in self.factors]


def _split_head(c: FundamentalWord):
    """Smallest proper factorization c = head o rest, or None if c is irreducible.

    Candidate head lengths run over the proper divisors of |c| in increasing
    order; a head of length d must be (prefix of length d) with its last digit
    lowered, must itself be fundamental, and must parse all of c with a
    fundamental bit image.  The smallest workable head is irreducible, since
    any factorization of the head would have produced a shorter one first.
    """
    n = len(c)
    min_d = 2 if c.M == 1 else 1
    for d in range(min_d, n):
        if n % d != 0:
            continue
        prefix = c.digits[:d]
        if prefix[-1] == 0:
            continue
        head_word = Word(prefix, c.M).decremented()
        if not is_fundamental(head_word):
            continue
        head = FundamentalWord(head_word)
        try:
            bits = to_bits(head, c.word)
        except BlockParseError:
            continue
        if not is_fundamental(bits):
            continue
        return head, FundamentalWord(bits)
    return None


def decompose(c: FundamentalWord) -> Decomposition:
    """The unique factorization of c into irreducible words (head first)."""
    factors = []
    cur = c
    while True:
        split = _split_head(cur)
        if split is None:
            factors.append(cur)
            break
        head, rest = split
        factors.append(head)
        cur = rest
    return Decomposition(factors[0], tuple(factors[1:]))


@dataclass(frozen=True)
class Classification:
    kind: str  # "irreducible" | "n_irreducible" | "reducible"
    n: int | None = None

    def __str__(self):
        if self.kind == "n_irreducible":
            return f"{self.n}-irreducible"
        return self.kind


def classify(c: FundamentalWord) -> Classification:
    """Irreducible, n-irreducible (unit lift o (10)^(n-1) o irreducible), or reducible."""
    decomp = decompose(c)
    factors = decomp.factors
    if len(factors) == 1:
        return Classification("irreducible")
    u = unit_lift(c.M)
    ten = (1, 0)
    if factors[0].digits == u.digits and all(
        f.digits == ten for f in factors[1:-1]
    ):
        return Classification("n_irreducible", len(factors) - 1)
    return Classification("reducible")


# ---------------------------------------------------------------------------
# the induced action on bases


def map_base(a: FundamentalWord, q: BaseEnclosure, tol: Fraction = TOL) -> BaseEnclosure:
    """Push a base through the block map of a: the binary base whose expansion
    of 1 is the bit image of alpha(q).

    Needs an eventually periodic defining expansion on q; the image expansion
    inherits eventual periodicity block by block (the walk visits finitely
    many (phase, vertex) pairs), so the result is again exactly representable.
    """
    if q.alpha is None:
        raise ValueError("map_base needs a base with an eventually periodic expansion")
    if q.M != a.M:
        raise ValueError("base and word use different alphabets")
    s = q.alpha
    size = len(a)
    labels = edge_blocks(a)
    blocks = [lab.digits for lab in labels]
    pre_blocks = -(-s.p // size)
    per_blocks = s.m // gcd(s.m, size)

    bits = []
    vertex = START
    seen = {}
    j = 0
    while True:
        if j >= pre_blocks:
            key = ((j - pre_blocks) % per_blocks, vertex)
            if key in seen:
                cut = seen[key]
                pre_bits, per_bits = bits[:cut], bits[cut:]
                break
            seen[key] = j
        chunk = tuple(s.at(j * size + t) for t in range(size))
        if vertex == START:
            candidates = (0,)
        elif vertex == A:
            candidates = (1, 4)
        else:
            candidates = (2, 3)
        for e in candidates:
            if chunk == blocks[e]:
                bits.append(EDGE_BIT[e])
                vertex = EDGE_DST[e]
                break
        else:
            raise BlockParseError(
                f"alpha(q) = {s} does not parse into blocks of {a} at block {j + 1}"
            )
        j += 1

    try:
        image = EpSequence(tuple(pre_bits), tuple(per_bits), 1)
    except ValueError as exc:
        raise NotQuasiGreedy(f"bit image of {s} over {a} ends in 0^inf") from exc
    if not is_quasi_greedy_admissible(image):
        raise NotQuasiGreedy(f"bit image {image} is not a quasi-greedy expansion")
    return base_from_expansion(image, tol)


def de_vries_komornik_base(a: FundamentalWord, tol: Fraction = TOL) -> BaseEnclosure:
    """The base inside the interval of a whose expansion of 1 is the block
    preimage of the Thue-Morse bit stream.

    The target expansion is aperiodic, so the enclosure is found by bisection
    on exact digit comparison against a lazily extended target prefix, exactly
    as for the Komornik-Loreti base (which is the special case a = unit lift).
    """
    labels = edge_blocks(a)
    size = len(a)
    m = a.M
    cache = []
    state = [START]

    def target(i: int) -> int:
        while len(cache) < i:
            bit = thue_morse_bit(len(cache) // size + 1)
            vertex = state[0]
            if vertex == START:
                e = 0
            elif vertex == A:
                e = 4 if bit else 1
            else:
                e = 3 if bit else 2
            cache.extend(labels[e].digits)
            state[0] = EDGE_DST[e]
        return cache[i - 1]

    def side(r: Fraction) -> int:
        rem = Fraction(1)
        for i in range(1, 4096):
            x = r * rem
            d = min(m, -((-x.numerator) // x.denominator) - 1)
            c = target(i)
            if d != c:
                return -1 if d < c else 1
            rem = x - d
        raise PrecisionExhausted("digit comparison undecided to depth 4096")

    lo = Fraction(5, 4)
    while side(lo) >= 0:
        lo = 1 + (lo - 1) / 2
    hi = Fraction(m + 1)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if side(mid) < 0:
            lo = mid
        else:
            hi = mid
    return BaseEnclosure(lo, hi, m, None)
