"""Word and sequence layer: exact combinatorics, checked against brute force."""

from itertools import product

import pytest

from univoque.errors import DigitOverflow, DigitUnderflow, NotFundamental
from univoque.words import (
    EQ,
    GT,
    LT,
    EpSequence,
    FundamentalWord,
    Word,
    ep_sequence,
    is_admissible_v,
    is_fundamental,
    is_quasi_greedy_admissible,
    lex_compare,
    periodic,
    word,
)


def all_words(m, length):
    for digits in product(range(m + 1), repeat=length):
        yield Word(digits, m)


# ---------------------------------------------------------------------------
# basic word operations


def test_reflect_examples():
    assert str(word("110", 1).reflected()) == "001"
    assert str(word("2110", 2).reflected()) == "0112"
    w = word("10", 1)
    assert w.reflected().reflected() == w


def test_reflect_is_involution_exhaustive():
    for m, max_len in ((1, 8), (2, 5), (3, 4)):
        for length in range(1, max_len + 1):
            for w in all_words(m, length):
                assert w.reflected().reflected() == w


def test_increment_decrement():
    assert str(word("10", 1).incremented()) == "11"
    assert str(word("21", 2).decremented()) == "20"
    with pytest.raises(DigitOverflow):
        word("11", 1).incremented()
    with pytest.raises(DigitUnderflow):
        word("10", 1).decremented()


def test_word_validation():
    with pytest.raises(ValueError):
        Word((), 1)
    with pytest.raises(ValueError):
        Word((2,), 1)
    with pytest.raises(ValueError):
        Word((0,), 0)


def test_word_parsing_large_alphabet():
    w = word("[10,3,0]", 10)
    assert w.digits == (10, 3, 0)
    assert str(w) == "[10,3,0]"


# ---------------------------------------------------------------------------
# lexicographic order


def test_lex_compare_examples():
    assert lex_compare(word("10", 1), word("110", 1)) == LT
    assert lex_compare(ep_sequence("(10)", 1), ep_sequence("11(01)", 1)) == LT
    s = ep_sequence("(110)", 1)
    assert lex_compare(s, s) == EQ
    # padding convention: word vs word of different lengths
    assert lex_compare(word("1", 1), word("10", 1)) == EQ  # 10^inf both
    assert lex_compare(word("1", 1), word("11", 1)) == LT


def test_lex_compare_word_vs_sequence():
    assert lex_compare(word("10", 1), ep_sequence("(10)", 1)) == LT
    assert lex_compare(word("11", 1), ep_sequence("(10)", 1)) == GT
    with pytest.raises(ValueError):
        lex_compare(word("1", 1), word("1", 2))


def test_lex_compare_total_order_on_samples():
    seqs = [
        ep_sequence(t, 1)
        for t in ["(0)", "(01)", "(10)", "1(10)", "(110)", "11(01)", "(1)"]
    ]
    for a in seqs:
        for b in seqs:
            c = lex_compare(a, b)
            assert c == -lex_compare(b, a)
            for d in seqs:
                if c == LT and lex_compare(b, d) == LT:
                    assert lex_compare(a, d) == LT


# ---------------------------------------------------------------------------
# canonical form of eventually periodic sequences


def test_canonical_form():
    assert EpSequence((1, 1), (0, 1), 1) == EpSequence((1,), (1, 0), 1)
    assert str(EpSequence((1, 1), (0, 1), 1)) == "1(10)"
    assert EpSequence((), (1, 0, 1, 0), 1) == EpSequence((), (1, 0), 1)
    assert EpSequence((1, 1, 0), (1, 1, 0), 1) == EpSequence((), (1, 1, 0), 1)
    assert EpSequence((0, 0), (0,), 1).is_zero()


def test_zero_tail_rejected():
    with pytest.raises(ValueError):
        EpSequence((1,), (0,), 1)
    with pytest.raises(ValueError):
        EpSequence((1, 0), (0, 0), 1)
    # the zero sequence itself is fine
    assert EpSequence((), (0,), 1).is_zero()


def test_sequence_parse_roundtrip():
    for text in ["(10)", "11(01)", "(2)", "1(10)", "210(12)"]:
        m = 2 if any(ch == "2" for ch in text) else 1
        s = ep_sequence(text, m)
        assert ep_sequence(str(s), m) == s


def test_shifted():
    s = ep_sequence("11(01)", 1)
    assert s.shifted(1) == ep_sequence("1(01)", 1)
    assert s.shifted(2) == ep_sequence("(01)", 1)
    assert s.shifted(3) == ep_sequence("(10)", 1)
    assert s.shifted(4) == ep_sequence("(01)", 1)
    for n in range(8):
        t = s.shifted(n)
        assert all(t.at(i) == s.at(n + i) for i in range(12))


# ---------------------------------------------------------------------------
# admissibility, against an independent brute-force oracle


def brute_digits(pre, per, depth):
    out = []
    i = 0
    while len(out) < depth:
        out.append(pre[i] if i < len(pre) else per[(i - len(pre)) % len(per)])
        i += 1
    return out


def brute_admissible_v(pre, per, m):
    depth = 4 * (len(pre) + len(per)) + 8
    digs = brute_digits(pre, per, 2 * depth)
    refl = [m - d for d in digs]
    for n in range(len(pre) + len(per) + 1):
        shift = digs[n : n + depth]
        if shift > digs[:depth] or shift < refl[:depth]:
            return False
    return True


def brute_quasi_greedy(pre, per, m):
    if all(d == 0 for d in per):
        return False
    depth = 4 * (len(pre) + len(per)) + 8
    digs = brute_digits(pre, per, 2 * depth)
    return all(digs[n : n + depth] <= digs[:depth] for n in range(1, len(pre) + len(per) + 1))


def test_admissibility_matches_brute_force():
    for m in (1, 2):
        for total in range(1, 9):
            for plen in range(total):
                mlen = total - plen
                for pre in product(range(m + 1), repeat=plen):
                    for per in product(range(m + 1), repeat=mlen):
                        tail_zero = all(d == 0 for d in per)
                        if tail_zero and any(pre):
                            with pytest.raises(ValueError):
                                EpSequence(pre, per, m)
                            continue
                        s = EpSequence(pre, per, m)
                        assert is_admissible_v(s) == brute_admissible_v(pre, per, m), s
                        assert is_quasi_greedy_admissible(s) == brute_quasi_greedy(
                            pre, per, m
                        ), s


def test_admissibility_examples():
    assert is_admissible_v(ep_sequence("(10)", 1))
    assert is_admissible_v(ep_sequence("(110)", 1))
    assert not is_admissible_v(ep_sequence("(100)", 1))
    assert is_quasi_greedy_admissible(ep_sequence("(1)", 1))
    assert is_quasi_greedy_admissible(ep_sequence("11(01)", 1))
    assert not is_quasi_greedy_admissible(ep_sequence("(01)", 1))


# ---------------------------------------------------------------------------
# fundamental words


def test_is_fundamental_examples():
    assert is_fundamental(word("10", 1))
    assert not is_fundamental(word("1", 1))
    assert is_fundamental(word("1", 2))
    assert not is_fundamental(word("2", 2))
    assert is_fundamental(word("110", 1))
    assert not is_fundamental(word("11", 1))


def test_fundamental_word_validation():
    FundamentalWord(word("10", 1))
    with pytest.raises(NotFundamental):
        FundamentalWord(word("11", 1))


def test_fundamental_never_ends_in_top_digit_and_periodization_admissible():
    for m in (1, 2):
        for length in range(1, 8 if m == 1 else 6):
            for w in all_words(m, length):
                if is_fundamental(w):
                    assert w.digits[-1] < m
                    assert is_admissible_v(periodic(w))


def test_label_ordering_chain():
    # reflect(a+) < reflect(a) <= a < a+, middle equality iff M even, a = M/2
    for m in (1, 2, 3, 4):
        for length in range(1, 5):
            for w in all_words(m, length):
                if not is_fundamental(w):
                    continue
                a_plus = w.incremented()
                assert lex_compare(a_plus.reflected(), w.reflected()) == LT
                mid = lex_compare(w.reflected(), w)
                assert mid in (LT, EQ)
                expect_eq = m % 2 == 0 and length == 1 and w.digits[0] == m // 2
                assert (mid == EQ) == expect_eq
                assert lex_compare(w, a_plus) == LT


def test_endpoint_alphas():
    a = FundamentalWord(word("10", 1))
    assert a.left_alpha() == ep_sequence("(10)", 1)
    assert a.right_alpha() == ep_sequence("11(01)", 1)
    b = FundamentalWord(word("1", 2))
    assert b.left_alpha() == ep_sequence("(1)", 2)
    assert b.right_alpha() == ep_sequence("2(1)", 2)
