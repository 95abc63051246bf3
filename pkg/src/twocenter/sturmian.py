"""Sturmian and cutting-sequence combinatorics.

A line y = m x + b (slope m > 0) cut against marked vertical/horizontal
circles on the unit torus produces a symbol sequence.  For the grid of
integer lattice lines the run lengths of the horizontal symbol form the
Sturmian exponent sequence of (m, b); for rational m the cyclic word is
independent of the intercept, which is what makes a single canonical word
per slope meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .errors import LatticeHit, PhaseHit

HIT_TOL = 1e-12


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

class SymbolWord:
    """A finite or cyclic word over {1,2,3} or {V,H}.

    Equality and hashing are canonical: cyclic words compare equal to any
    rotation of themselves.  The optional 1<->2 relabelling is exposed as a
    separate comparison mode, not folded into ``==``.
    """

    __slots__ = ("symbols", "cyclic")

    def __init__(self, symbols: str, cyclic: bool = False):
        self.symbols = str(symbols)
        self.cyclic = bool(cyclic)

    def canonical(self) -> str:
        """Lexicographically least rotation (identity for finite words)."""
        s = self.symbols
        if not self.cyclic or not s:
            return s
        return min(s[i:] + s[:i] for i in range(len(s)))

    def swapped(self) -> "SymbolWord":
        """The word with symbols 1 and 2 exchanged."""
        return SymbolWord(self.symbols.translate(str.maketrans("12", "21")), self.cyclic)

    def cyclically_equal(self, other: "SymbolWord", relabel: bool = False) -> bool:
        a = SymbolWord(self.symbols, True).canonical()
        b = SymbolWord(other.symbols, True).canonical()
        if a == b:
            return True
        if relabel:
            return a == SymbolWord(other.symbols, True).swapped().canonical()
        return False

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolWord):
            return NotImplemented
        return self.cyclic == other.cyclic and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.cyclic, self.canonical()))

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return self.symbols

    def __repr__(self):
        return f"SymbolWord({self.symbols!r}, cyclic={self.cyclic})"


@dataclass(frozen=True)
class SlopeIntercept:
    """A torus line y = m x + b; the slope may carry an exact rational form."""

    m: float
    b: float
    rational_form: Optional[Tuple[int, int]] = None
    b_exact: Optional[Fraction] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("slope must be positive")
        if self.rational_form is not None:
            p, q = self.rational_form
            if p < 1 or q < 1 or math.gcd(p, q) != 1:
                raise ValueError("rational form must be a coprime positive pair")
            if abs(self.m - p / q) > 1e-15 * abs(self.m):
                raise ValueError("rational form inconsistent with slope")

    @classmethod
    def from_fraction(cls, p: int, q: int, b: Union[float, Fraction]) -> "SlopeIntercept":
        g = math.gcd(p, q)
        p, q = p // g, q // g
        b_exact = b if isinstance(b, Fraction) else None
        return cls(p / q, float(b), (p, q), b_exact)


@dataclass(frozen=True)
class ExponentSequence:
    """Run lengths n_k of the horizontal symbol between vertical crossings."""

    values: Tuple[int, ...]
    slope: float
    periodic: bool = False

    def __str__(self):
        return ",".join(str(v) for v in self.values)


@dataclass(frozen=True)
class WindowPhases:
    """Marked circles on the flattened torus: (phase in [0,1), symbol) pairs.

    ``vertical`` entries are crossed as the horizontal angle advances,
    ``horizontal`` entries as the vertical angle advances.
    """

    vertical: Tuple[Tuple[float, str], ...] = ()
    horizontal: Tuple[Tuple[float, str], ...] = ()

    def __post_init__(self):
        for group in (self.vertical, self.horizontal):
            if len(group) > 2:
                raise ValueError("at most two windows per direction")
            phases = [ph for ph, _ in group]
            if any(not (0.0 <= ph < 1.0) for ph in phases):
                raise ValueError("phases must lie in [0, 1)")
            if len(phases) == 2 and abs(phases[0] - phases[1]) < HIT_TOL:
                raise ValueError("window phases must be distinct")


@dataclass(frozen=True)
class BalanceReport:
    balanced: bool
    run_lengths: Tuple[int, ...]
    has_12_adjacency: bool
    run_symbol: str


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def sturmian_exponents(si: SlopeIntercept, count: int) -> ExponentSequence:
    """Exponents n_k = floor(m + frac(y_{k-1})), y_k = b + k m, k = 1..count.

    Rational slopes with an exact intercept are evaluated in exact rational
    arithmetic; otherwise floats with a lattice-proximity guard are used.
    Raises LatticeHit if the line passes within tolerance of a lattice point
    among the first ``count`` crossings.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if si.rational_form is not None and si.b_exact is not None:
        p, q = si.rational_form
        m = Fraction(p, q)
        b = si.b_exact
        values = []
        prev_frac = b - math.floor(b)
        if prev_frac == 0 or min(prev_frac, 1 - prev_frac) < HIT_TOL:
            raise LatticeHit("intercept sits on a lattice point")
        for k in range(1, count + 1):
            y = b + k * m
            frac = y - math.floor(y)
            if frac == 0 or min(frac, 1 - frac) < HIT_TOL:
                raise LatticeHit(f"lattice point at crossing k={k}")
            values.append(math.floor(m + prev_frac))
            prev_frac = frac
    else:
        m, b = si.m, si.b
        values = []
        prev_frac = b % 1.0
        if min(prev_frac, 1.0 - prev_frac) < HIT_TOL:
            raise LatticeHit("intercept sits on a lattice point")
        for k in range(1, count + 1):
            frac = (b + k * m) % 1.0
            if min(frac, 1.0 - frac) < HIT_TOL:
                raise LatticeHit(f"lattice point within tolerance at crossing k={k}")
            values.append(math.floor(m + prev_frac))
            prev_frac = frac
    periodic = si.rational_form is not None and count % si.rational_form[1] == 0
    return ExponentSequence(tuple(values), float(si.m), periodic)


def word_from_exponents(
    e: ExponentSequence,
    v_labels: Sequence[str],
    h_label: str = "3",
) -> SymbolWord:
    """Interleave vertical labels with runs of the horizontal label.

    Emits v_labels[i] followed by e.values[i] copies of h_label.  Periodic
    sequences give a cyclic word; finite ones additionally close with the
    next vertical label, matching the crossing count of a finite segment.
    """
    if not v_labels:
        raise ValueError("v_labels must be nonempty")
    parts = []
    for i, n in enumerate(e.values):
        parts.append(str(v_labels[i % len(v_labels)]))
        parts.append(str(h_label) * n)
    if not e.periodic:
        parts.append(str(v_labels[len(e.values) % len(v_labels)]))
    return SymbolWord("".join(parts), cyclic=e.periodic)


def canonical_rational_word(p: int, q: int, grid: str = "unit") -> SymbolWord:
    """The unique cyclic V/H word of a slope-p/q line on the chosen grid.

    Computed with the safe intercept 1/(2q) (scaled to the grid), which
    lies strictly inside one of the q intervals that partition the
    admissible intercepts.  ``unit`` gives q V's and p H's per period,
    ``half`` doubles both counts.
    """
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise ValueError("p, q must be coprime positive integers")
    if grid not in ("unit", "half"):
        raise ValueError("grid must be 'unit' or 'half'")
    count = q if grid == "unit" else 2 * q
    si = SlopeIntercept.from_fraction(p, q, Fraction(1, 2 * q))
    e = sturmian_exponents(si, count)
    return word_from_exponents(e, ("V",), "H")


def cutting_sequence(w: WindowPhases, m: float, b: float, count: int) -> SymbolWord:
    """Symbols of the first ``count`` window crossings of y = m x + b, x >= 0.

    Vertical windows are crossed at x = phase (mod 1); horizontal ones where
    y passes phase (mod 1).  A crossing exactly at x = 0 counts.  Raises
    PhaseHit when two crossings coincide within tolerance (the line passes
    through a window intersection), which would make the order ambiguous.
    """
    if m <= 0:
        raise ValueError("slope must be positive")
    if count < 1:
        raise ValueError("count must be positive")
    density = len(w.vertical) + len(w.horizontal) * m
    if density <= 0:
        return SymbolWord("", cyclic=False)
    span = (count + 4) / density + 2.0
    while True:
        events = []
        for phase, sym in w.vertical:
            x = phase
            while x <= span:
                events.append((x, str(sym)))
                x += 1.0
        for phase, sym in w.horizontal:
            n = math.ceil(b - phase - HIT_TOL)
            if (phase + n - b) / m < -HIT_TOL:
                n += 1
            x = (phase + n - b) / m
            while x <= span:
                if x >= -HIT_TOL:
                    events.append((max(x, 0.0), str(sym)))
                n += 1
                x = (phase + n - b) / m
        events.sort(key=lambda ev: ev[0])
        if len(events) >= count:
            break
        span *= 2.0
    for (x0, _), (x1, _) in zip(events[: count], events[1 : count + 1]):
        if x1 - x0 < HIT_TOL:
            raise PhaseHit(f"ambiguous crossing order near x={x0!r}")
    return SymbolWord("".join(sym for _, sym in events[:count]), cyclic=False)


def enumerate_syzygy_words(max_len: int) -> list:
    """All distinct cyclic syzygy words of length <= max_len.

    Alternating-label words and the two single-label families for every
    coprime p/q with 2(p+q) <= max_len, plus the planetary words (12)^q
    with 2q <= max_len.  The count is asserted against the quadratic
    bound max_len^2 / 4 + 1.
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    words = set()
    for q in range(1, max_len // 2 + 1):
        words.add(SymbolWord("12" * q, cyclic=True))
    for s in range(2, max_len // 2 + 1):
        for p in range(1, s):
            q = s - p
            if math.gcd(p, q) != 1:
                continue
            si = SlopeIntercept.from_fraction(p, q, Fraction(1, 2 * q))
            e = sturmian_exponents(si, 2 * q)
            # one torus realizes both 1<->2 relabellings of the alternating
            # word (at different phases, when q is even); fold to one entry
            alt = word_from_exponents(e, ("1", "2"), "3")
            rep = min(alt.canonical(), alt.swapped().canonical())
            words.add(SymbolWord(rep, cyclic=True))
            if p >= q:
                # single-label words with W < 1 would stutter (some run of
                # the axis symbol empty), which no satellite orbit does
                words.add(word_from_exponents(e, ("1",), "3"))
                words.add(word_from_exponents(e, ("2",), "3"))
    bound = max_len * max_len / 4 + 1
    if len(words) > bound:
        raise AssertionError(f"word count {len(words)} exceeds bound {bound}")
    return sorted(words, key=lambda v: (len(v), v.canonical()))


def is_balanced(word: SymbolWord, run_symbol: Optional[str] = None) -> BalanceReport:
    """Run-length statistics of the designated run symbol plus 1/2 adjacency.

    ``balanced`` means all maximal runs have lengths n or n+1 for some n
    (vacuously true with no runs).  Adjacency of symbols 1 and 2 is checked
    cyclically for cyclic words.
    """
    s = word.symbols
    if run_symbol is None:
        run_symbol = "H" if ("H" in s or "V" in s) else "3"
    runs = []
    if s:
        if set(s) == {run_symbol}:
            runs = [len(s)]
        else:
            if word.cyclic:
                # rotate so the word does not start mid-run
                start = next(i for i, ch in enumerate(s) if ch != run_symbol)
                s_scan = s[start:] + s[:start]
            else:
                s_scan = s
            n = 0
            for ch in s_scan:
                if ch == run_symbol:
                    n += 1
                elif n:
                    runs.append(n)
                    n = 0
            if n:
                runs.append(n)
    balanced = len(runs) == 0 or max(runs) - min(runs) <= 1
    adj = False
    pairs = zip(s, s[1:] + (s[0] if word.cyclic and len(s) > 1 else ""))
    for a, c in pairs:
        if {a, c} == {"1", "2"}:
            adj = True
            break
    return BalanceReport(balanced, tuple(runs), adj, run_symbol)
