"""Growth probes: how fast do avoider counts grow in the length n*m?

Avoiding an ordinary pattern keeps the count exponential in the length;
avoiding a pattern with repeated letters can leave super-exponential
families (the 212-avoiders are the standard example).  The probes report
exact counts together with the display-only ratio count**(1/(n*m)).

Words (letter counts unconstrained) appear only here, as a thin variant of
the enumeration search with the per-letter capacity raised to the word
length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Pattern, PatternSet
from .enumeration import (
    COUNT_LENGTH_BUDGET,
    _Engine,
    _advance,
    _check_budget,
    _initial_state,
    count_avoiders,
)
from .errors import OutOfDomain, Unsupported
from .formulas import closed_count, stirling_count

_PATTERN_212 = Pattern((2, 1, 2))
_PATTERN_12 = Pattern((1, 2))


@dataclass(frozen=True)
class GrowthRow:
    n: int
    m: int
    count: int
    ratio: float  # count**(1/(n*m)); display only, never used in a count

    def formatted_ratio(self) -> str:
        return f"{self.ratio:.6f}"


def _growth_ratio(count: int, length: int) -> float:
    if count <= 0 or length <= 0:
        return 0.0
    return math.exp(math.log(count) / length)


def _best_count(patterns: PatternSet, n: int, m: int, override_budget: bool) -> int:
    if len(patterns) == 1 and patterns.patterns[0] == _PATTERN_212:
        return stirling_count(n, m)
    if len(patterns) == 2:
        try:
            return closed_count(tuple(patterns), n, m)
        except (Unsupported, OutOfDomain):
            pass
    return count_avoiders(n, m, patterns, override_budget=override_budget)


def growth_table(patterns: PatternSet | Sequence, grid: Iterable[tuple[int, int]],
                 *, override_budget: bool = False) -> list[GrowthRow]:
    """Exact counts and growth ratios over a grid of (n, m) cells.

    Counts come from a catalogued formula when one applies, otherwise from
    the enumeration oracle (subject to its length budget).
    """
    if not isinstance(patterns, PatternSet):
        patterns = PatternSet.of(*patterns)
    rows = []
    for n, m in grid:
        count = _best_count(patterns, n, m, override_budget)
        rows.append(GrowthRow(n, m, count, _growth_ratio(count, n * m)))
    return rows


def growth_csv(rows: Iterable[GrowthRow]) -> str:
    lines = ["n,m,count,ratio"]
    for row in rows:
        lines.append(f"{row.n},{row.m},{row.count},{row.formatted_ratio()}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class StirlingVerdict:
    n: int
    m: int
    enumerated: int
    formula: int

    @property
    def equal(self) -> bool:
        return self.enumerated == self.formula


def check_stirling_identity(n: int, m: int, *, override_budget: bool = False
                            ) -> StirlingVerdict:
    """Compare the enumerated 212-avoider count with the closed product form."""
    enumerated = count_avoiders(n, m, PatternSet.of(_PATTERN_212),
                                override_budget=override_budget)
    return StirlingVerdict(n, m, enumerated, stirling_count(n, m))


# -- words ------------------------------------------------------------------------

def count_words_avoiding(n: int, length: int, patterns: PatternSet | Sequence,
                         *, override_budget: bool = False) -> int:
    """Words of the given length over [n] avoiding every pattern, counted by
    the same pruned search as the permutation oracle but with no multiplicity
    constraint."""
    counts = word_counts_by_length(n, length, patterns,
                                   override_budget=override_budget)
    return counts[length]


def word_counts_by_length(n: int, max_length: int, patterns: PatternSet | Sequence,
                          *, override_budget: bool = False) -> list[int]:
    """Avoider counts for every word length 0..max_length in one search.

    Every visited prefix is itself an avoiding word, so one depth-first walk
    of the pruned prefix tree counts all lengths at once.
    """
    if not isinstance(patterns, PatternSet):
        patterns = PatternSet.of(*patterns)
    if n < 0 or max_length < 0:
        raise ValueError("need n >= 0 and length >= 0")
    _check_budget(max_length, COUNT_LENGTH_BUDGET, override_budget)
    counts = [0] * (max_length + 1)
    counts[0] = 1
    if n == 0 or max_length == 0:
        return counts
    engine = _Engine(patterns)
    prefix: list[int] = []
    seen = [0] * (n + 1)

    def rec(state, depth: int) -> None:
        for c in range(1, n + 1):
            if engine.danger(state, c, prefix):
                continue
            counts[depth + 1] += 1
            if depth + 1 < max_length:
                prefix.append(c)
                seen[c] += 1
                rec(_advance(state, c, seen[c]), depth + 1)
                seen[c] -= 1
                prefix.pop()

    rec(_initial_state(n), 0)
    return counts


def word_counterexample_probe(length: int, n: int) -> int:
    """Number of ascent-free (12-avoiding) words of the given length over [n].

    Counted by direct enumeration; equals C(n + length - 1, length), which
    beats any bound of the form constant**length once the alphabet outgrows
    the word length.
    """
    if length < 1 or n < 1:
        raise ValueError("need length >= 1 and n >= 1")
    return count_words_avoiding(n, length, PatternSet.of(_PATTERN_12))
