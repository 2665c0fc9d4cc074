"""Command-line front end.

Every command prints machine-readable output in the selected format and is
deterministic given its flags.  Numerals are never bare floats: bases and
entropies appear as certified lo/hi pairs, decimals are display renderings
tagged with their digit count.

Exit codes: 0 success, 2 domain error (bad words, inadmissible sequences,
unparsable input), 3 precision failure (a certified decision could not be
made; the message names the certified prefix length where applicable).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .composition import classify, compose, decompose
from .errors import PrecisionExhausted
from .expansions import (
    BaseEnclosure,
    base_from_expansion,
    golden_base,
    komornik_loreti_base,
    ladder_base,
    point_base,
    quasi_greedy_digits,
    transitive_base,
)
from .intervals import decimal_str, parse_fraction
from .plateaus import STAIRCASE_HEADER, enumerate_plateaus, staircase
from .subshift import build_automaton, entropy, entropy_bounds, is_transitive
from .words import ep_sequence, fundamental, word

DIGITS = 12


def _base_spec(text: str, m: int, tol: Fraction) -> BaseEnclosure:
    """Exact rationals ("2", "9/5") become point enclosures; decimal notation
    ("1.8", "1.8e0") is parsed exactly, then widened by one tolerance ulp on
    each side (a printed decimal rarely means an exact rational)."""
    q = parse_fraction(text)
    if not (1 < q <= m + 1):
        raise ValueError(f"base {text} outside (1, {m + 1}]")
    if "." in text or "e" in text or "E" in text:
        lo = max(q - tol, 1 + (q - 1) / 2)
        hi = min(q + tol, Fraction(m + 1))
        return BaseEnclosure(lo, hi, m)
    return point_base(q, m)


def _enc_plain(name: str, enc: BaseEnclosure) -> str:
    lo = decimal_str(enc.lo, DIGITS, "down")
    hi = decimal_str(enc.hi, DIGITS, "up")
    return f"{name} in [{lo}, {hi}] ({DIGITS} digits shown)"


def _emit(args, lines, json_obj, csv_lines=None, out=None):
    if args.format == "json":
        print(json.dumps(json_obj, sort_keys=True), file=out)
    elif args.format == "csv" and csv_lines is not None:
        for line in csv_lines:
            print(line, file=out)
    else:
        for line in lines:
            print(line, file=out)


def cmd_alpha(args, out):
    n = args.n if args.n is not None else args.depth
    if args.seq:
        enc = base_from_expansion(ep_sequence(args.seq, args.M), args.precision)
        digits = quasi_greedy_digits(enc, n)
        _emit(
            args,
            [str(digits), _enc_plain("q", enc)],
            {"digits": str(digits), "base": enc.to_json(DIGITS)},
            [str(digits)],
            out,
        )
    else:
        enc = _base_spec(args.q, args.M, args.precision)
        digits = quasi_greedy_digits(enc, n)
        _emit(args, [str(digits)], {"digits": str(digits)}, [str(digits)], out)


def cmd_compose(args, out):
    a = fundamental(word(args.a, args.M))
    b = fundamental(word(args.b, 1))
    result = compose(a, b)
    _emit(args, [str(result)], {"result": str(result)}, [str(result)], out)


def cmd_decompose(args, out):
    factors = decompose(fundamental(word(args.word, args.M))).to_json()
    line = json.dumps(factors)
    _emit(args, [line], factors, [",".join(factors)], out)


def cmd_classify(args, out):
    tag = str(classify(fundamental(word(args.word, args.M))))
    _emit(args, [tag], {"class": tag}, [tag], out)


def cmd_entropy(args, out):
    if args.seq:
        aut = build_automaton(ep_sequence(args.seq, args.M))
        # --precision governs base enclosures; entropy certificates bottom
        # out around 1e-12, so floor the tolerance there
        enc = entropy(aut, max(args.precision, Fraction(1, 10**10)))
        payload = enc.to_json(DIGITS)
        lam = None if enc.lam_lo is None else f"growth rate in [{enc.lam_lo}, {enc.lam_hi}]"
        lines = [f"h in [{decimal_str(enc.lo, DIGITS, 'down')}, {decimal_str(enc.hi, DIGITS, 'up')}]"]
        if lam:
            lines.append(lam)
        _emit(args, lines, payload, None, out)
    else:
        q = _base_spec(args.q, args.M, args.precision)
        enc = entropy_bounds(q, args.depth)
        _emit(
            args,
            [f"h in [{decimal_str(enc.lo, DIGITS, 'down')}, {decimal_str(enc.hi, DIGITS, 'up')}] (depth {args.depth})"],
            enc.to_json(DIGITS),
            None,
            out,
        )


def cmd_transitive(args, out):
    aut = build_automaton(ep_sequence(args.seq, args.M))
    flag = is_transitive(aut)
    _emit(args, [f"transitive: {str(flag).lower()}"], {"transitive": flag}, None, out)


def cmd_bases(args, out):
    tol = args.precision
    named = [
        ("q_G", golden_base(args.M, tol)),
        ("q_KL", komornik_loreti_base(args.M, tol)),
        ("q_T", transitive_base(args.M, tol)),
    ]
    for k in range(2, args.n + 1):
        named.append((f"q_{k}'", ladder_base(args.M, k, tol)))
    _emit(
        args,
        [_enc_plain(name, enc) for name, enc in named],
        {name: enc.to_json(DIGITS) for name, enc in named},
        None,
        out,
    )


def cmd_plateaus(args, out):
    region = None
    if args.region:
        lo, hi = args.region.split(":")
        region = (parse_fraction(lo), parse_fraction(hi))
    records = enumerate_plateaus(args.M, args.max_len, region=region, tol=args.precision)
    if args.format == "json":
        for r in records:
            print(json.dumps(r.to_json(DIGITS), sort_keys=True), file=out)
        return
    if args.format == "csv":
        print("word,class,ladder_index,q_lo,q_hi,h_lo,h_hi,flags", file=out)
        for r in records:
            j = r.to_json(DIGITS)
            flags = "+".join(
                f for f, on in (("distinguished", r.distinguished), ("boundary", r.boundary)) if on
            )
            print(
                ",".join(
                    [
                        j["word"],
                        j["class"],
                        "" if r.ladder_index is None else str(r.ladder_index),
                        j["q_left"]["dec_lo"],
                        j["q_right"]["dec_hi"],
                        j["entropy"]["dec_lo"],
                        j["entropy"]["dec_hi"],
                        flags,
                    ]
                ),
                file=out,
            )
        return
    for r in records:
        j = r.to_json(DIGITS)
        extra = " [unit-lift interval]" if r.distinguished else (" [ladder boundary]" if r.boundary else "")
        print(
            f"{j['word']}: {j['class']}, q in [{j['q_left']['dec_lo']}, {j['q_right']['dec_hi']}], "
            f"h in [{j['entropy']['dec_lo']}, {j['entropy']['dec_hi']}]{extra}",
            file=out,
        )


def cmd_staircase(args, out):
    lo, hi, count = args.grid.split(":")
    lo, hi, count = parse_fraction(lo), parse_fraction(hi), int(count)
    if count < 1:
        raise ValueError("grid needs at least one point")
    if count == 1:
        points = [lo]
    else:
        step = (hi - lo) / (count - 1)
        points = [lo + k * step for k in range(count)]
    grid = [point_base(p, args.M) for p in points]
    rows = staircase(args.M, grid, depth=args.depth, max_word_len=args.max_len)
    if args.format == "json":
        print(json.dumps([r.to_json(DIGITS) for r in rows], sort_keys=True), file=out)
        return
    print(STAIRCASE_HEADER, file=out)
    for r in rows:
        print(r.to_csv(DIGITS), file=out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="univoque",
        description="Unique q-expansions: words, certified bases, subshift entropy, plateaus.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--M", type=int, required=True, help="largest digit (M >= 1)")
    common.add_argument(
        "--precision",
        type=parse_fraction,
        default=Fraction(1, 2**64),
        help="tolerance for base enclosures, e.g. 2^-64 or 1e-12",
    )
    common.add_argument("--depth", type=int, default=30, help="digit/window depth")
    common.add_argument("--max-len", type=int, default=8, dest="max_len")
    common.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    common.add_argument("--out", default=None, help="write output to a file")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alpha", parents=[common], help="quasi-greedy expansion of 1")
    p.add_argument("--q", help="base: exact (2, 9/5) or decimal (widened)")
    p.add_argument("--seq", help='expansion literal "pre(period)"; prints its base too')
    p.add_argument("--n", type=int, default=None, help="number of digits (default: depth)")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("compose", parents=[common], help="composition of fundamental words")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("decompose", parents=[common], help="irreducible factorization")
    p.add_argument("word")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("classify", parents=[common], help="irreducible / n-irreducible / reducible")
    p.add_argument("word")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("entropy", parents=[common], help="subshift entropy")
    p.add_argument("--seq", help='expansion literal "pre(period)"')
    p.add_argument("--q", help="base spec; certified bounds at the given depth")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("transitive", parents=[common], help="transitivity of the subshift")
    p.add_argument("--seq", required=True)
    p.set_defaults(func=cmd_transitive)

    p = sub.add_parser("bases", parents=[common], help="special bases q_G, q_KL, q_T, ladder")
    p.add_argument("--n", type=int, default=3, help="print ladder bases up to q_n'")
    p.set_defaults(func=cmd_bases)

    p = sub.add_parser("plateaus", parents=[common], help="enumerate plateau records")
    p.add_argument("--region", help='restrict to bases in "lo:hi"')
    p.set_defaults(func=cmd_plateaus)

    p = sub.add_parser("staircase", parents=[common], help="entropy/dimension table on a grid")
    p.add_argument("--grid", required=True, help='"lo:hi:count"')
    p.set_defaults(func=cmd_staircase)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("alpha", "entropy") and not (getattr(args, "q", None) or getattr(args, "seq", None)):
        parser.error(f"{args.command} needs --q or --seq")
    if args.M < 1:
        parser.error("--M must be >= 1")
    sink = open(args.out, "w") if args.out else sys.stdout
    try:
        args.func(args, sink)
    except PrecisionExhausted as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if args.out:
            sink.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
