"""Block substitution, composition semigroup, irreducible decomposition."""

import random
from fractions import Fraction
from itertools import product

import pytest

from univoque.composition import (
    AmbiguousStart,
    BadStart,
    BlockParseError,
    Classification,
    classify,
    compose,
    de_vries_komornik_base,
    decompose,
    from_bits,
    map_base,
    parse_blocks,
    to_bits,
    unit_lift,
)
from univoque.expansions import (
    base_from_expansion,
    fundamental_interval,
    komornik_loreti_base,
    komornik_loreti_digits,
    ladder_base,
    thue_morse,
    transitive_base,
)
from univoque.words import (
    FundamentalWord,
    Word,
    ep_sequence,
    fundamental,
    is_fundamental,
    lex_compare,
    word,
)

F = Fraction


def all_fundamental(m, max_len):
    out = []
    for length in range(1, max_len + 1):
        for digits in product(range(m + 1), repeat=length):
            w = Word(digits, m)
            if is_fundamental(w):
                out.append(FundamentalWord(w))
    return out


# ---------------------------------------------------------------------------
# parsing and the two labelings


def test_parse_blocks_example():
    a = fundamental("10", 1)
    parse = parse_blocks(a, word("110100", 1))
    assert [str(b) for b in parse.blocks] == ["11", "01", "00"]
    assert parse.path == (0, 4, 1)


def test_parse_blocks_m2():
    a = fundamental("1", 2)
    parse = parse_blocks(a, word("2110", 2))
    assert [str(b) for b in parse.blocks] == ["2", "1", "1", "0"]


def test_parse_blocks_rejects():
    a = fundamental("10", 1)
    with pytest.raises(BlockParseError):
        parse_blocks(a, word("1111", 1))
    with pytest.raises(BlockParseError):
        parse_blocks(a, word("110", 1))  # not a multiple of the block length


def test_parse_ambiguous_start_when_self_reflected():
    a = fundamental("1", 2)  # reflect(1) = 1 over {0,1,2}
    with pytest.raises(AmbiguousStart):
        parse_blocks(a, word("12", 2))
    # but starts with a+ or reflect(a+) stay fine
    assert parse_blocks(a, word("21", 2)).path == (0, 4)
    b = fundamental("21", 2)  # not self-reflected: interior starts allowed
    assert parse_blocks(b, word("2121", 2)).path[0] == 2


def test_to_bits_examples():
    assert str(to_bits(fundamental("10", 1), word("110100", 1))) == "110"
    assert str(to_bits(fundamental("110", 1), word("111000", 1))) == "10"
    assert str(to_bits(fundamental("1", 2), word("2110", 2))) == "1110"


def test_from_bits_examples():
    assert str(from_bits(fundamental("10", 1), word("110", 1))) == "110100"
    assert str(from_bits(fundamental("110", 1), word("10", 1))) == "111000"
    assert str(from_bits(fundamental("10", 1), word("1", 1))) == "11"
    with pytest.raises(BadStart):
        from_bits(fundamental("10", 1), word("01", 1))


def test_round_trip_bits():
    rng = random.Random(7)
    for a in (fundamental("10", 1), fundamental("110", 1), fundamental("21", 2)):
        for _ in range(50):
            bits = Word((1,) + tuple(rng.randrange(2) for _ in range(rng.randrange(7))), 1)
            w = from_bits(a, bits)
            assert to_bits(a, w) == bits


# ---------------------------------------------------------------------------
# composition


def test_compose_paper_examples():
    assert str(compose(fundamental("10", 1), fundamental("110", 1))) == "110100"
    assert str(compose(fundamental("110", 1), fundamental("10", 1))) == "111000"
    assert str(compose(fundamental("1", 2), fundamental("1110", 1))) == "2110"


def test_compose_needs_binary_second_factor():
    with pytest.raises(ValueError):
        compose(fundamental("1", 2), fundamental("21", 2))


def test_compose_length_multiplies():
    a, b = fundamental("110", 1), fundamental("1100", 1)
    assert len(compose(a, b)) == len(a) * len(b)


def test_semigroup_closure_and_associativity():
    words5 = all_fundamental(1, 5)
    assert [str(w) for w in words5[:2]] == ["10", "110"]
    for a in words5:
        for b in words5:
            compose(a, b)  # revalidates fundamentality internally
    rng = random.Random(20240917)
    for _ in range(300):
        a, b, c = (rng.choice(words5) for _ in range(3))
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_non_abelian():
    a, b = fundamental("10", 1), fundamental("110", 1)
    assert compose(a, b) != compose(b, a)


def test_functoriality():
    rng = random.Random(99)
    pool = all_fundamental(1, 4)
    for a in (fundamental("10", 1), fundamental("110", 1), fundamental("1", 2)):
        for b in pool:
            ab = compose(a, b)
            for _ in range(10):
                bits = Word(
                    (1,) + tuple(rng.randrange(2) for _ in range(rng.randrange(6))), 1
                )
                w = from_bits(ab, bits)
                assert to_bits(ab, w) == to_bits(b, to_bits(a, w))


def test_monotonicity_of_block_maps():
    rng = random.Random(5)
    for a in (fundamental("10", 1), fundamental("110", 1), fundamental("21", 2)):
        for _ in range(200):
            n = rng.randrange(1, 7)
            x = Word((1,) + tuple(rng.randrange(2) for _ in range(n)), 1)
            y = Word((1,) + tuple(rng.randrange(2) for _ in range(n)), 1)
            if x == y:
                continue
            wx, wy = from_bits(a, x), from_bits(a, y)
            assert (lex_compare(x, y) < 0) == (lex_compare(wx, wy) < 0)


def test_image_of_nested_fundamental_block_words_is_fundamental():
    # Image fundamentality holds for fundamental block words whose interval
    # nests inside the interval of a (the case the factorization machinery
    # uses).  Without nesting there are genuine exceptions, e.g. the image of
    # 21 over the word 1 (M = 2) is 11.
    for a in (fundamental("10", 1), fundamental("1", 2), fundamental("21", 2)):
        found = 0
        for k in (2, 3, 4):
            for c in all_fundamental(a.M, len(a) * k):
                if len(c) != len(a) * k:
                    continue
                if not (
                    lex_compare(a.left_alpha(), c.left_alpha()) < 0
                    and lex_compare(c.right_alpha(), a.right_alpha()) <= 0
                ):
                    continue
                try:
                    bits = to_bits(a, c.word)
                except BlockParseError:
                    continue
                found += 1
                assert is_fundamental(bits), (a, c)
        assert found > 0


def test_image_fundamentality_needs_nesting():
    assert str(to_bits(fundamental("1", 2), word("21", 2))) == "11"
    assert not is_fundamental(word("11", 1))


def test_unit_lift():
    assert str(unit_lift(1)) == "10"
    assert str(unit_lift(2)) == "1"
    assert str(unit_lift(3)) == "21"
    assert str(unit_lift(4)) == "2"


# ---------------------------------------------------------------------------
# decomposition and classification


def test_decompose_examples():
    d = decompose(fundamental("110100", 1))
    assert d.to_json() == ["10", "110"]
    assert decompose(fundamental("110", 1)).to_json() == ["110"]
    assert decompose(fundamental("2110", 2)).to_json() == ["1", "1110"]


def test_decompose_recompose_roundtrip():
    for m in (1, 2):
        for c in all_fundamental(m, 8):
            d = decompose(c)
            assert d.recompose() == c
            for f in d.factors:
                assert classify(f).kind == "irreducible"


def test_classify_examples():
    assert classify(fundamental("110", 1)) == Classification("irreducible")
    u, ten, b = fundamental("10", 1), fundamental("10", 1), fundamental("110", 1)
    assert classify(compose(u, b)) == Classification("n_irreducible", 1)
    assert classify(compose(compose(u, ten), b)) == Classification("n_irreducible", 2)
    assert classify(compose(b, ten)) == Classification("reducible")
    assert classify(compose(fundamental("1", 2), b)) == Classification("n_irreducible", 1)
    assert str(Classification("n_irreducible", 2)) == "2-irreducible"


def test_interval_nesting():
    # the interval of a o b sits inside the interval of a (symbolically)
    for a, b in [
        (fundamental("10", 1), fundamental("110", 1)),
        (fundamental("110", 1), fundamental("10", 1)),
        (fundamental("1", 2), fundamental("1110", 1)),
    ]:
        ab = compose(a, b)
        assert lex_compare(a.left_alpha(), ab.left_alpha()) < 0
        assert lex_compare(ab.right_alpha(), a.right_alpha()) <= 0


def test_distinct_irreducible_intervals_disjoint():
    words6 = [c for c in all_fundamental(1, 6) if classify(c).kind == "irreducible"]
    for x in words6:
        for y in words6:
            if x == y:
                continue
            # disjoint iff one right endpoint precedes the other left endpoint
            left = lex_compare(x.right_alpha(), y.left_alpha()) <= 0
            right = lex_compare(y.right_alpha(), x.left_alpha()) <= 0
            assert left or right, (x, y)


# ---------------------------------------------------------------------------
# Thue-Morse functoriality of the unit lift


def test_unit_lift_sends_kl_prefixes_to_thue_morse():
    for m in (2, 4):  # even: 1-to-1 on prefixes of length 2^k
        u = unit_lift(m)
        for k in range(1, 9):
            lam = komornik_loreti_digits(m, 2**k)
            assert to_bits(u, lam) == thue_morse(2**k)
    for m in (1, 3):  # odd: block length 2, halves the prefix
        u = unit_lift(m)
        for k in range(1, 9):
            lam = komornik_loreti_digits(m, 2**k)
            assert to_bits(u, lam) == thue_morse(2 ** (k - 1))


# ---------------------------------------------------------------------------
# the induced map on bases


def test_map_base_transitive_to_two():
    qt = transitive_base(1)
    image = map_base(unit_lift(1), qt)
    assert image.lo == image.hi == 2
    assert image.alpha == ep_sequence("(1)", 1)


def test_map_base_ladder_shift():
    for m in (1, 2, 3):
        u = unit_lift(m)
        for n in (1, 2, 3):
            q = ladder_base(m, n + 1)
            image = map_base(u, q)
            assert image.alpha == ladder_base(1, n).alpha, (m, n)


def test_map_base_left_endpoints():
    u = unit_lift(1)
    b = fundamental("110", 1)
    c = compose(u, b)
    q = base_from_expansion(c.left_alpha())
    image = map_base(u, q)
    assert image.alpha == b.left_alpha()
    q_r = base_from_expansion(c.right_alpha())
    image_r = map_base(u, q_r)
    assert image_r.alpha == b.right_alpha()


def test_map_base_requires_expansion():
    with pytest.raises(ValueError):
        map_base(unit_lift(1), komornik_loreti_base(1))


def test_map_base_rejects_unparseable():
    # alpha(2) = 1^inf does not parse over 110 (11 must be followed by 01 or 00)
    q = base_from_expansion(ep_sequence("(1)", 1))
    with pytest.raises(BlockParseError):
        map_base(fundamental("110", 1), q)


# ---------------------------------------------------------------------------
# de Vries-Komornik numbers


def test_dvk_of_unit_lift_is_komornik_loreti():
    for m in (1, 2):
        qc = de_vries_komornik_base(unit_lift(m), F(1, 2**48))
        kl = komornik_loreti_base(m, F(1, 2**48))
        assert max(qc.lo, kl.lo) <= min(qc.hi, kl.hi)


def test_dvk_inside_interval():
    for a in (fundamental("110", 1), fundamental("1", 2)):
        left, right = fundamental_interval(a)
        qc = de_vries_komornik_base(a, F(1, 2**48))
        assert left.hi < qc.lo
        assert qc.hi < right.lo
