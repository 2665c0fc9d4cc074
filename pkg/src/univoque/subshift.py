"""Finite presentations of the two-sided lexicographic subshift of a base.

For an eventually periodic expansion alpha = alpha(q), the subshift

    V_q = { x : reflect(alpha) <= sigma^n x <= alpha  for all n >= 0 }

is presented by a deterministic automaton whose states are pairs (i, j):
i is the longest suffix of the read word equal to a prefix of alpha, j the
same for the reflection, both reduced modulo the period once they pass the
preperiod (from there on the shifted tail of alpha is periodic, so the
constraint's future is too).

Two structural facts keep the automaton small and the counting exact:

* The longest active match is binding.  Because alpha dominates every one of
  its own shifts, a longer suffix match has the lexicographically smaller
  shifted tail, hence the smaller next-digit threshold.  A digit strictly
  below the binding threshold therefore settles *all* active comparisons at
  once, and the next upper state is simply 1 (if the digit equals alpha_1)
  or 0.  No failure-function fallback is needed, which is also what makes
  the modular reduction sound.

* Requiring alpha itself to satisfy the two-sided condition rules out dead
  states: if the read word ends with both alpha_1..alpha_i and the first j
  reflected digits, the overlap of those two suffixes forces the upper
  threshold at i to be at least the lower threshold at j.  Every reachable
  state then has an outgoing digit, so every legal word extends to an
  infinite legal sequence, and path counts from the start state equal factor
  counts of V_q on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NoConnection, NotAdmissible, NotInLanguage, PrecisionExhausted
from .expansions import (
    BaseEnclosure,
    detect_periodic_expansion,
    quasi_greedy_digits,
)
from .intervals import frac_str, decimal_str, log_bounds
from .words import EpSequence, Word, is_admissible_v, is_quasi_greedy_admissible

ENTROPY_TOL = Fraction(1, 10**10)


@dataclass(frozen=True)
class EntropyEnclosure:
    """Certified bounds on a topological entropy, in nats per symbol.

    When the entropy came from a spectral radius, ``lam_lo``/``lam_hi``
    carry rational bounds on the growth rate itself (handy for recognizing
    exact values like full shifts).
    """

    lo: Fraction
    hi: Fraction
    lam_lo: Fraction | None = None
    lam_hi: Fraction | None = None

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty entropy enclosure")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def hull(self, other: "EntropyEnclosure") -> "EntropyEnclosure":
        lam_lo = lam_hi = None
        if self.lam_lo is not None and other.lam_lo is not None:
            lam_lo, lam_hi = min(self.lam_lo, other.lam_lo), max(self.lam_hi, other.lam_hi)
        return EntropyEnclosure(min(self.lo, other.lo), max(self.hi, other.hi), lam_lo, lam_hi)

    def overlaps(self, other: "EntropyEnclosure", slack: Fraction = Fraction(0)) -> bool:
        return max(self.lo, other.lo) <= min(self.hi, other.hi) + slack

    def to_json(self, digits: int = 12) -> dict:
        return {
            "lo": frac_str(self.lo),
            "hi": frac_str(self.hi),
            "dec_lo": decimal_str(self.lo, digits, "down"),
            "dec_hi": decimal_str(self.hi, digits, "up"),
            "dec_digits": digits,
        }

    def __str__(self):
        return f"[{decimal_str(self.lo, 12, 'down')}, {decimal_str(self.hi, 12, 'up')}]"


class SubshiftAutomaton:
    """Deterministic presentation of V_q for eventually periodic alpha(q)."""

    def __init__(self, alpha: EpSequence):
        if not is_quasi_greedy_admissible(alpha):
            raise NotAdmissible(f"{alpha} is not a quasi-greedy expansion of 1")
        if not is_admissible_v(alpha):
            raise NotAdmissible(f"{alpha} escapes its own two-sided band")
        self.alpha = alpha
        self.M = alpha.M
        p, m = alpha.p, alpha.m
        top = p + m
        upper = [alpha.at(i) for i in range(top)]
        lower = [self.M - d for d in upper]

        def wrap(i):
            return i if i < top else p + (i - p) % m

        def up_next(i, d):
            t = upper[i]
            if d > t:
                return None
            if d == t:
                return wrap(i + 1)
            return wrap(1) if d == upper[0] else 0

        def low_next(j, d):
            t = lower[j]
            if d < t:
                return None
            if d == t:
                return wrap(j + 1)
            return wrap(1) if d == lower[0] else 0

        index = {(0, 0): 0}
        states = [(0, 0)]
        transitions = []
        queue = [(0, 0)]
        while queue:
            i, j = queue.pop(0)
            row = []
            for d in range(self.M + 1):
                ni = up_next(i, d)
                if ni is None:
                    continue
                nj = low_next(j, d)
                if nj is None:
                    continue
                key = (ni, nj)
                if key not in index:
                    index[key] = len(states)
                    states.append(key)
                    queue.append(key)
                row.append((d, index[key]))
            transitions.append(row)
        # FIFO processing keeps transition rows aligned with discovery order
        self.states = states
        self.transitions = transitions
        self.start = 0
        for row in transitions:
            assert row, "a V-admissible expansion cannot produce a dead state"

    @property
    def size(self) -> int:
        return len(self.states)

    def step(self, state: int, digit: int):
        for d, t in self.transitions[state]:
            if d == digit:
                return t
        return None

    def run(self, w: Word, state: int | None = None):
        """End state of reading w from ``state`` (default start), or None."""
        s = self.start if state is None else state
        for d in w.digits:
            s = self.step(s, d)
            if s is None:
                return None
        return s

    def accepts(self, w: Word) -> bool:
        return self.run(w) is not None

    def to_json(self) -> dict:
        return {
            "alphabet_top": self.M,
            "alpha": str(self.alpha),
            "start": self.start,
            "states": [list(s) for s in self.states],
            "transitions": [
                [s, d, t]
                for s, row in enumerate(self.transitions)
                for d, t in row
            ],
        }


def build_automaton(alpha: EpSequence) -> SubshiftAutomaton:
    return SubshiftAutomaton(alpha)


def count_words(aut: SubshiftAutomaton, n: int) -> int:
    """Exact number of length-n factors of V_q (integer vector iteration)."""
    if n < 0:
        raise ValueError("need n >= 0")
    v = [0] * aut.size
    v[aut.start] = 1
    for _ in range(n):
        nv = [0] * aut.size
        for s, c in enumerate(v):
            if c:
                for _, t in aut.transitions[s]:
                    nv[t] += c
        v = nv
    return sum(v)


# ---------------------------------------------------------------------------
# graph structure


def strongly_connected_components(succ):
    """Tarjan, iterative; returns components as lists of vertex ids."""
    n = len(succ)
    index = [None] * n
    low = [0] * n
    onstack = [False] * n
    stack = []
    out = []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                onstack[v] = True
            advanced = False
            for i in range(pi, len(succ[v])):
                w = succ[v][i]
                if index[w] is None:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if onstack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    return out


def essential_states(aut: SubshiftAutomaton) -> set:
    """States surviving iterated deletion of zero-in- or zero-out-degree states."""
    alive = set(range(aut.size))
    while True:
        preds = {s: 0 for s in alive}
        outs = {s: 0 for s in alive}
        for s in alive:
            for _, t in aut.transitions[s]:
                if t in alive:
                    outs[s] += 1
                    preds[t] += 1
        dead = {s for s in alive if preds[s] == 0 or outs[s] == 0}
        if not dead:
            return alive
        alive -= dead


def is_transitive(aut: SubshiftAutomaton) -> bool:
    """True iff the essential part is one strongly connected component."""
    alive = essential_states(aut)
    if not alive:
        return False
    order = sorted(alive)
    local = {s: i for i, s in enumerate(order)}
    succ = [
        sorted({local[t] for _, t in aut.transitions[s] if t in alive})
        for s in order
    ]
    comps = strongly_connected_components(succ)
    return len(comps) == 1


def connect_words(aut: SubshiftAutomaton, u: Word, v: Word) -> tuple:
    """Shortest digits w (ties broken lexicographically) with u w v a factor.

    Returns a tuple of digits, possibly empty.  Raises NotInLanguage if u or
    v is not itself a factor, NoConnection when nothing joins them.
    """
    su = aut.run(u)
    if su is None:
        raise NotInLanguage(f"{u} is not a factor of the subshift")
    if aut.run(v) is None:
        raise NotInLanguage(f"{v} is not a factor of the subshift")
    readable = {}

    def v_runs_from(state):
        if state not in readable:
            readable[state] = aut.run(v, state) is not None
        return readable[state]

    if v_runs_from(su):
        return ()
    parent = {su: None}
    queue = [su]
    while queue:
        s = queue.pop(0)
        for d, t in aut.transitions[s]:
            if t in parent:
                continue
            parent[t] = (s, d)
            if v_runs_from(t):
                digits = []
                cur = t
                while parent[cur] is not None:
                    cur, dd = parent[cur]
                    digits.append(dd)
                return tuple(reversed(digits))
            queue.append(t)
    raise NoConnection(f"no word connects {u} to {v}")


# ---------------------------------------------------------------------------
# certified entropy


def _perron_bounds(rows, rel_tol: Fraction):
    """Certified [lo, hi] for the spectral radius of an irreducible
    nonnegative integer matrix given as out-edge lists [(target, mult), ...].

    A floating-point power iteration on A + I supplies a near-Perron vector;
    the bounds themselves come from one exact integer matrix-vector product
    (min/max of (Ax)_i / x_i over a positive vector is always a rigorous
    bracket, and is tight when x is close to the Perron vector).
    """
    n = len(rows)
    src = np.array([s for s in range(n) for _ in rows[s]], dtype=np.int64)
    dst = np.array([t for s in range(n) for t, _ in rows[s]], dtype=np.int64)
    cnt = np.array([c for s in range(n) for _, c in rows[s]], dtype=np.float64)

    def float_vector(iters):
        x = np.ones(n, dtype=np.float64)
        for _ in range(iters):
            y = np.zeros(n, dtype=np.float64)
            np.add.at(y, src, cnt * x[dst])
            y += x
            x = y / y.max()
        return x

    def bounds_from(xs):
        lo = hi = None
        for s in range(n):
            acc = 0
            for t, c in rows[s]:
                acc += c * xs[t]
            r = Fraction(acc, xs[s])
            lo = r if lo is None or r < lo else lo
            hi = r if hi is None or r > hi else hi
        return lo, hi

    best_lo, best_hi = Fraction(1), None
    xs = None
    iters, bits = 256, 64
    for _ in range(4):
        x = float_vector(iters)
        scale = (1 << bits) / x.max()
        xs = [max(1, int(v * scale)) for v in x]
        lo, hi = bounds_from(xs)
        # every (lo, hi) from a positive vector is valid, so intersect
        best_lo = max(best_lo, lo)
        best_hi = hi if best_hi is None else min(best_hi, hi)
        if best_hi - best_lo <= rel_tol * best_lo:
            return best_lo, best_hi
        iters, bits = min(iters * 4, 8192), min(bits + 16, 96)
    # exact power iteration from the best float vector, renormalized to
    # keep entries near 96 bits; converges because A + I is primitive
    for round_ in range(512):
        ys = [0] * n
        for s in range(n):
            acc = xs[s]
            for t, c in rows[s]:
                acc += c * xs[t]
            ys[s] = acc
        top = max(ys).bit_length()
        if top > 96:
            shift = top - 96
            ys = [max(1, y >> shift) for y in ys]
        xs = ys
        if round_ % 8 == 7:
            lo, hi = bounds_from(xs)
            best_lo = max(best_lo, lo)
            best_hi = min(best_hi, hi)
            if best_hi - best_lo <= rel_tol * best_lo:
                return best_lo, best_hi
    raise PrecisionExhausted(
        f"spectral radius bounds stalled at [{best_lo}, {best_hi}] (rel_tol {rel_tol})"
    )


def _scc_rows(aut: SubshiftAutomaton, comp):
    local = {s: i for i, s in enumerate(comp)}
    rows = []
    for s in comp:
        counts = {}
        for _, t in aut.transitions[s]:
            if t in local:
                counts[local[t]] = counts.get(local[t], 0) + 1
        rows.append(sorted(counts.items()))
    return rows


def entropy(aut: SubshiftAutomaton, tol: Fraction = ENTROPY_TOL) -> EntropyEnclosure:
    """Certified enclosure of h(V_q) = log(spectral radius), width <= tol.

    The growth rate is the maximum over strongly connected components; plain
    cycles contribute exactly 1, and when nothing beats them the entropy is
    exactly zero.
    """
    succ = [sorted({t for _, t in row}) for row in aut.transitions]
    comps = strongly_connected_components(succ)
    lam_lo = lam_hi = None
    rel = tol / 4
    for comp in comps:
        rows = _scc_rows(aut, comp)
        if len(comp) == 1 and not rows[0]:
            continue  # transient singleton
        if all(sum(c for _, c in r) == 1 for r in rows):
            lo = hi = Fraction(1)  # a bare cycle
        else:
            lo, hi = _perron_bounds(rows, rel)
        if lam_lo is None or lo > lam_lo:
            lam_lo = lo
        if lam_hi is None or hi > lam_hi:
            lam_hi = hi
    if lam_lo is None:
        raise RuntimeError("subshift automaton with no cycle; alpha was not admissible")
    if lam_lo == lam_hi == 1:
        return EntropyEnclosure(Fraction(0), Fraction(0), Fraction(1), Fraction(1))
    err = tol / 4
    lo_log = log_bounds(lam_lo, err)[0]
    hi_log = log_bounds(lam_hi, err)[1]
    if lo_log < 0:
        lo_log = Fraction(0)
    return EntropyEnclosure(lo_log, hi_log, lam_lo, lam_hi)


# ---------------------------------------------------------------------------
# bounds at arbitrary bases, and the dimension formula


def prefix_factor_count(prefix, m: int, n: int) -> int:
    """Number of length-n words whose every window stays weakly inside the
    two-sided band cut to the first n digits of alpha.  An upper bound for
    the factor count of V_q, computed from the prefix alone."""
    digits = list(prefix)
    assert len(digits) >= n

    def up_next(i, d):
        t = digits[i]
        if d > t:
            return None
        if d == t:
            return i + 1
        return 1 if d == digits[0] else 0

    def low_next(j, d):
        t = m - digits[j]
        if d < t:
            return None
        if d == t:
            return j + 1
        return 1 if d == m - digits[0] else 0

    counts = {(0, 0): 1}
    for _ in range(n):
        nxt = {}
        for (i, j), c in counts.items():
            for d in range(m + 1):
                ni = up_next(i, d)
                if ni is None:
                    continue
                nj = low_next(j, d)
                if nj is None:
                    continue
                key = (ni, nj)
                nxt[key] = nxt.get(key, 0) + c
        counts = nxt
    return sum(counts.values())


def entropy_bounds(
    q: BaseEnclosure,
    n: int,
    pool=None,
    tol: Fraction = ENTROPY_TOL,
) -> EntropyEnclosure:
    """Bounds on H(q) = h(V_q) usable at bases without a known expansion.

    Upper bound: log of the depth-n window count over n (submultiplicativity
    makes every such quotient an upper bound for the limit).  Lower bound:
    the entropy of V at the best enumerated base provably <= q -- entries of
    ``pool`` are (BaseEnclosure, EntropyEnclosure) pairs -- or of V_q itself
    when the expansion of q is available or detectable.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    prefix = quasi_greedy_digits(q, n).digits
    count = prefix_factor_count(prefix, q.M, n)
    # count can reach 0 below the golden base, where the band is empty
    upper = log_bounds(count, tol / 4)[1] / n if count > 1 else Fraction(0)

    lower = Fraction(0)
    lam_lo = lam_hi = None
    alpha = q.alpha
    if alpha is None and q.is_point():
        alpha = detect_periodic_expansion(q.lo, q.M)
    if alpha is not None and is_admissible_v(alpha):
        direct = entropy(build_automaton(alpha), tol)
        lower = direct.lo
        upper = min(upper, direct.hi)
        lam_lo, lam_hi = direct.lam_lo, direct.lam_hi
    if pool:
        for enc, ent in pool:
            if enc.hi <= q.lo and ent.lo > lower:
                lower = ent.lo
    if lower > upper:
        lower = upper  # both are certified, so they can only cross by rounding
    return EntropyEnclosure(lower, upper, lam_lo, lam_hi)


def hausdorff_dimension(q: BaseEnclosure, h: EntropyEnclosure):
    """Interval enclosure of h / log q with outward rounding.

    Recognizes the exact case growth rate == base (point enclosures on both
    sides), where the dimension is exactly 1.
    """
    if (
        h.lam_lo is not None
        and h.lam_lo == h.lam_hi
        and q.is_point()
        and h.lam_lo == q.lo
    ):
        return Fraction(1), Fraction(1)
    err = max(Fraction(1, 2**96), h.width / 8)
    while True:
        lq_lo, lq_hi = log_bounds(q.lo, err)[0], log_bounds(q.hi, err)[1]
        if lq_lo > 0:
            break
        err /= 16
    lo = max(Fraction(0), h.lo) / lq_hi
    hi = h.hi / lq_lo
    return lo, hi
