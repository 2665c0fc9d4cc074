"""Unique q-expansions: words, certified bases, composition, subshifts, plateaus.

The layers, bottom up:

* :mod:`univoque.words` -- exact combinatorics of digits, finite words and
  eventually periodic sequences (reflection, lexicographic order,
  admissibility, fundamental words).
* :mod:`univoque.expansions` -- certified numerics between sequences and
  bases: series evaluation, base recovery, quasi-greedy digits, Thue-Morse
  machinery and the special bases.
* :mod:`univoque.composition` -- the two-labeled block graph, the block
  substitution maps, the composition semigroup and irreducible
  decomposition.
* :mod:`univoque.subshift` -- finite presentations of the two-sided
  lexicographic subshift, exact counting, certified entropy, transitivity.
* :mod:`univoque.plateaus` -- enumeration of fundamental intervals, plateau
  records, the base ladder, the entropy bridge and staircase tables.
* :mod:`univoque.cli` -- the ``univoque`` command-line front end.
"""

from .composition import (
    BlockParse,
    Classification,
    Decomposition,
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
from .errors import (
    AmbiguousStart,
    BadStart,
    BlockParseError,
    DigitOverflow,
    DigitUnderflow,
    NoConnection,
    NotAdmissible,
    NotFundamental,
    NotInLanguage,
    NotQuasiGreedy,
    PrecisionExhausted,
)
from .expansions import (
    TOL,
    BaseEnclosure,
    base_from_expansion,
    certify_less,
    detect_periodic_expansion,
    fundamental_interval,
    golden_base,
    is_univoque_sequence,
    komornik_loreti_base,
    komornik_loreti_digits,
    ladder_base,
    point_base,
    quasi_greedy_digits,
    quasi_greedy_digits_at,
    series_value,
    series_value_at,
    special_base,
    thue_morse,
    transitive_base,
)
from .plateaus import (
    BridgeReport,
    LadderIndex,
    PlateauRecord,
    StaircaseRow,
    enumerate_fundamental,
    enumerate_plateaus,
    ladder,
    ladder_alpha,
    staircase,
    verify_entropy_bridge,
)
from .subshift import (
    EntropyEnclosure,
    SubshiftAutomaton,
    build_automaton,
    connect_words,
    count_words,
    entropy,
    entropy_bounds,
    hausdorff_dimension,
    is_transitive,
)
from .words import (
    EQ,
    GT,
    LT,
    EpSequence,
    FundamentalWord,
    Word,
    decrement_last,
    ep_sequence,
    fundamental,
    increment_last,
    is_admissible_v,
    is_fundamental,
    is_quasi_greedy_admissible,
    lex_compare,
    periodic,
    reflect,
    word,
)

__version__ = "0.1.0"
