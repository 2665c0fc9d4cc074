"""Exception types shared across the library.

Domain errors (bad words, inadmissible sequences, unparsable block strings)
all derive from ValueError so callers can catch them uniformly; certification
failures are a separate category because they signal "not enough precision",
not "bad input".
"""


class DigitOverflow(ValueError):
    """Incrementing a word whose last digit is already the largest digit."""


class DigitUnderflow(ValueError):
    """Decrementing a word whose last digit is already 0."""


class NotFundamental(ValueError):
    """A word failed the two-sided suffix inequalities required of it."""


class NotQuasiGreedy(ValueError):
    """A sequence is not the quasi-greedy expansion of 1 in any base."""


class NotAdmissible(ValueError):
    """A sequence has a shift escaping the two-sided lexicographic band."""


class BlockParseError(ValueError):
    """A word is not a concatenation of block labels along the label graph."""


class AmbiguousStart(BlockParseError):
    """Self-reflected block word: parses from the interior are ambiguous."""


class BadStart(ValueError):
    """A bit word fed to the block decoder must begin with 1."""


class NotInLanguage(ValueError):
    """A word is not a factor of the subshift at hand."""


class NoConnection(ValueError):
    """No connecting word exists between the two given factors."""


class PrecisionExhausted(ArithmeticError):
    """A certified decision could not be made at the available precision.

    ``certified`` is the number of leading digits that *were* certified
    before the failure (0 when nothing was).
    """

    def __init__(self, message: str, certified: int = 0):
        super().__init__(message)
        self.certified = certified
