"""Domain types and pattern containment for permutations of multisets.

A permutation of the multiset {1^mu(1), ..., n^mu(n)} is a sequence in which
the letter i appears exactly mu(i) times.  A pattern is a word in canonical
reduced form (value set {1..k}); containment means an order-isomorphic
subsequence where equal pattern letters must map to equal letters of the
host permutation.

Positions are 1-based throughout, matching the usual combinatorial
conventions for positional statistics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    InvalidPattern,
    InvalidPermutation,
    UnsupportedStatistic,
    UnsupportedSymmetry,
)

Letters = tuple[int, ...]


def _parse_letters(text: str) -> Letters:
    """Parse a one-line encoding: digits for alphabets up to 9, otherwise
    space- or comma-separated integers."""
    text = text.strip()
    if not text:
        return ()
    if any(sep in text for sep in (" ", ",")):
        parts = text.replace(",", " ").split()
        letters = tuple(int(p) for p in parts)
    else:
        if not text.isdigit():
            raise InvalidPermutation(f"cannot parse letters from {text!r}")
        letters = tuple(int(ch) for ch in text)
    if any(v <= 0 for v in letters):
        raise InvalidPermutation("letters must be positive integers")
    return letters


def format_letters(letters: Sequence[int]) -> str:
    """Inverse of the one-line encoding: compact digits when possible."""
    if not letters:
        return "()"
    if max(letters) <= 9:
        return "".join(str(v) for v in letters)
    return " ".join(str(v) for v in letters)


@dataclass(frozen=True)
class MultisetPermutation:
    """A permutation of {1^mu(1), ..., n^mu(n)}, stored as its letter sequence."""

    letters: Letters
    alphabet_size: int
    multiplicity: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.alphabet_size
        if n < 0 or len(self.multiplicity) != n:
            raise InvalidPermutation("multiplicity vector must have length n")
        if any(m < 1 for m in self.multiplicity):
            raise InvalidPermutation("every multiplicity must be at least 1")
        if len(self.letters) != sum(self.multiplicity):
            raise InvalidPermutation("length must equal the sum of multiplicities")
        counts = [0] * (n + 1)
        for v in self.letters:
            if not 1 <= v <= n:
                raise InvalidPermutation(f"letter {v} outside alphabet [1..{n}]")
            counts[v] += 1
        for i in range(1, n + 1):
            if counts[i] != self.multiplicity[i - 1]:
                raise InvalidPermutation(
                    f"letter {i} occurs {counts[i]} times, expected {self.multiplicity[i - 1]}"
                )

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "MultisetPermutation":
        """Infer alphabet size and multiplicities from the letters themselves.

        Every value 1..max(letters) must actually occur.
        """
        seq = tuple(letters)
        if not seq:
            return cls((), 0, ())
        n = max(seq)
        counts = [0] * (n + 1)
        for v in seq:
            if v < 1:
                raise InvalidPermutation("letters must be positive integers")
            counts[v] += 1
        if any(counts[i] == 0 for i in range(1, n + 1)):
            missing = [i for i in range(1, n + 1) if counts[i] == 0]
            raise InvalidPermutation(f"letters {missing} missing from alphabet [1..{n}]")
        return cls(seq, n, tuple(counts[1:]))

    @classmethod
    def regular(cls, letters: Iterable[int], n: int, m: int) -> "MultisetPermutation":
        return cls(tuple(letters), n, (m,) * n)

    @classmethod
    def parse(cls, text: str) -> "MultisetPermutation":
        return cls.from_letters(_parse_letters(text))

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def regular_m(self) -> int | None:
        """The common multiplicity m when the multiset is regular, else None.

        The empty permutation counts as regular (m defaults to 1).
        """
        if self.alphabet_size == 0:
            return 1
        first = self.multiplicity[0]
        return first if all(m == first for m in self.multiplicity) else None

    def restrict(self, k: int) -> "MultisetPermutation":
        """Subsequence of letters <= k, in order, as a permutation on [k]."""
        if k < 0 or k > self.alphabet_size:
            raise InvalidPermutation(f"restriction bound {k} outside [0..{self.alphabet_size}]")
        return MultisetPermutation(
            tuple(v for v in self.letters if v <= k), k, self.multiplicity[:k]
        )

    def __str__(self) -> str:
        return format_letters(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)


@dataclass(frozen=True)
class Pattern:
    """A forbidden pattern in canonical reduced form (value set {1..k})."""

    letters: Letters

    def __post_init__(self) -> None:
        if not self.letters:
            raise InvalidPattern("patterns must be nonempty")
        values = set(self.letters)
        k = max(values)
        if values != set(range(1, k + 1)):
            raise InvalidPattern(
                f"{format_letters(self.letters)} is not reduced; use normalize_pattern"
            )

    @property
    def is_ordinary(self) -> bool:
        """True when all letters are distinct (no forced repetitions)."""
        return len(set(self.letters)) == len(self.letters)

    def reverse(self) -> "Pattern":
        return Pattern(self.letters[::-1])

    def complement(self) -> "Pattern":
        k = max(self.letters)
        return Pattern(tuple(k - v + 1 for v in self.letters))

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        return normalize_pattern(_parse_letters(text))

    def __str__(self) -> str:
        return format_letters(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __lt__(self, other: "Pattern") -> bool:
        return self.letters < other.letters


def normalize_pattern(raw: Sequence[int]) -> Pattern:
    """Reduce a word to its canonical order-isomorphic form.

    Values are replaced by their ranks, preserving both order and equalities:
    275 -> 132, 4664 -> 1221.  Idempotent on canonical input.
    """
    if not raw:
        raise InvalidPattern("patterns must be nonempty")
    if any(v <= 0 for v in raw):
        raise InvalidPattern("pattern letters must be positive integers")
    rank = {v: i + 1 for i, v in enumerate(sorted(set(raw)))}
    return Pattern(tuple(rank[v] for v in raw))


@dataclass(frozen=True)
class PatternSet:
    """A deduplicated set of patterns in canonical sort order."""

    patterns: tuple[Pattern, ...]

    def __post_init__(self) -> None:
        seen = sorted({p.letters for p in self.patterns})
        object.__setattr__(self, "patterns", tuple(Pattern(ls) for ls in seen))

    @classmethod
    def of(cls, *specs: Pattern | str | Sequence[int]) -> "PatternSet":
        pats = []
        for s in specs:
            if isinstance(s, Pattern):
                pats.append(s)
            elif isinstance(s, str):
                pats.append(Pattern.parse(s))
            else:
                pats.append(normalize_pattern(tuple(s)))
        return cls(tuple(pats))

    def reverse(self) -> "PatternSet":
        return PatternSet(tuple(p.reverse() for p in self.patterns))

    def complement(self) -> "PatternSet":
        return PatternSet(tuple(p.complement() for p in self.patterns))

    def __iter__(self) -> Iterator[Pattern]:
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __contains__(self, p: Pattern) -> bool:
        return p in self.patterns

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.patterns) + "}"


def _matches(sub: Sequence[int], pat: Sequence[int]) -> bool:
    """Order-isomorphism test including equalities."""
    k = len(pat)
    for a in range(k):
        for b in range(a + 1, k):
            if (sub[a] < sub[b]) != (pat[a] < pat[b]):
                return False
            if (sub[a] > sub[b]) != (pat[a] > pat[b]):
                return False
    return True


def _occurrence_len3(letters: Letters, pat: Letters) -> tuple[int, int, int] | None:
    # Direct triple scan; all catalogued patterns have length 3 and host
    # lengths stay at desk scale.
    l = len(letters)
    p0, p1, p2 = pat
    for i in range(l - 2):
        a = letters[i]
        for j in range(i + 1, l - 1):
            b = letters[j]
            if (a < b) != (p0 < p1) or (a > b) != (p0 > p1):
                continue
            for k in range(j + 1, l):
                c = letters[k]
                if (a < c) == (p0 < p2) and (a > c) == (p0 > p2) \
                        and (b < c) == (p1 < p2) and (b > c) == (p1 > p2):
                    return (i, j, k)
    return None


def _occurrence_general(letters: Letters, pat: Letters) -> tuple[int, ...] | None:
    # Backtracking over positions; depth d tries to place pattern letter d.
    l, k = len(letters), len(pat)

    def extend(chosen: list[int], start: int) -> tuple[int, ...] | None:
        d = len(chosen)
        if d == k:
            return tuple(chosen)
        for i in range(start, l - (k - d) + 1):
            v = letters[i]
            ok = True
            for a, pos in enumerate(chosen):
                w = letters[pos]
                if (w < v) != (pat[a] < pat[d]) or (w > v) != (pat[a] > pat[d]):
                    ok = False
                    break
            if ok:
                chosen.append(i)
                hit = extend(chosen, i + 1)
                if hit is not None:
                    return hit
                chosen.pop()
        return None

    return extend([], 0)


def find_occurrence(sigma: MultisetPermutation | Sequence[int], pi: Pattern
                    ) -> tuple[int, ...] | None:
    """1-based positions of some occurrence of pi in sigma, or None."""
    letters = sigma.letters if isinstance(sigma, MultisetPermutation) else tuple(sigma)
    if len(pi.letters) > len(letters):
        return None
    if len(pi.letters) == 3:
        hit = _occurrence_len3(letters, pi.letters)
    else:
        hit = _occurrence_general(letters, pi.letters)
    return None if hit is None else tuple(i + 1 for i in hit)


def contains(sigma: MultisetPermutation | Sequence[int], pi: Pattern) -> bool:
    """True iff sigma has a subsequence order-isomorphic to pi (equalities
    in the pattern must be realized by equal letters)."""
    return find_occurrence(sigma, pi) is not None


def avoids_all(sigma: MultisetPermutation | Sequence[int], pi_set: PatternSet) -> bool:
    return all(not contains(sigma, p) for p in pi_set)


def symmetry(sigma: MultisetPermutation, which: str) -> MultisetPermutation:
    """Apply reverse, complement, or reverse_complement.

    The complement i -> n-i+1 keeps the multiset fixed only when it is
    regular, so it is refused otherwise.
    """
    if which == "reverse":
        return MultisetPermutation(sigma.letters[::-1], sigma.alphabet_size, sigma.multiplicity)
    if which in ("complement", "reverse_complement"):
        if sigma.regular_m is None:
            raise UnsupportedSymmetry("complement needs a regular multiset")
        n = sigma.alphabet_size
        letters = tuple(n - v + 1 for v in sigma.letters)
        if which == "reverse_complement":
            letters = letters[::-1]
        return MultisetPermutation(letters, n, sigma.multiplicity)
    raise ValueError(f"unknown symmetry {which!r}")


# -- positional statistics ---------------------------------------------------

@dataclass(frozen=True)
class Statistics:
    """The four positions driving the generating trees.

    r: first repetition, a: first ascent, d: first descent, o: (m-1)-th
    occurrence of the largest letter.  A missing ascent/descent/repetition is
    encoded by the sentinel length+1; the empty permutation has r=a=d=1, o=0.
    """

    r: int
    a: int
    d: int
    o: int


def first_repetition(letters: Sequence[int]) -> int:
    """Least position whose letter already occurred, else length+1 (1 if empty)."""
    if not letters:
        return 1
    seen: set[int] = set()
    for i, v in enumerate(letters, start=1):
        if v in seen:
            return i
        seen.add(v)
    return len(letters) + 1


def first_ascent(letters: Sequence[int]) -> int:
    """Least i with letters[i-1] < letters[i] (strict), else length+1 (1 if empty)."""
    if not letters:
        return 1
    for i in range(1, len(letters)):
        if letters[i - 1] < letters[i]:
            return i + 1
    return len(letters) + 1


def first_descent(letters: Sequence[int]) -> int:
    """Least i with letters[i-1] > letters[i] (strict), else length+1 (1 if empty)."""
    if not letters:
        return 1
    for i in range(1, len(letters)):
        if letters[i - 1] > letters[i]:
            return i + 1
    return len(letters) + 1


def largest_occurrence_position(sigma: MultisetPermutation) -> int:
    """Position of the (m-1)-th occurrence of the largest letter; 0 if empty
    or m = 1 (zero occurrences are reached before reading any letter)."""
    m = sigma.regular_m
    if m is None:
        raise UnsupportedStatistic("occurrence statistic needs a regular multiset")
    if sigma.alphabet_size == 0 or m == 1:
        return 0
    n = sigma.alphabet_size
    hits = 0
    for i, v in enumerate(sigma.letters, start=1):
        if v == n:
            hits += 1
            if hits == m - 1:
                return i
    raise AssertionError("regular permutation must contain m copies of n")


def statistics(sigma: MultisetPermutation) -> Statistics:
    """All four statistics of a permutation on a regular multiset."""
    if sigma.regular_m is None:
        raise UnsupportedStatistic("statistics are defined on regular multisets")
    return Statistics(
        r=first_repetition(sigma.letters),
        a=first_ascent(sigma.letters),
        d=first_descent(sigma.letters),
        o=largest_occurrence_position(sigma),
    )


def left_to_right_minima(sigma: MultisetPermutation | Sequence[int]) -> tuple[int, ...]:
    """Ascending positions i with sigma_i <= sigma_j for every j < i.

    Ties count, so a repeat of the current minimum is again a minimum.
    """
    letters = sigma.letters if isinstance(sigma, MultisetPermutation) else tuple(sigma)
    out = []
    best: int | None = None
    for i, v in enumerate(letters, start=1):
        if best is None or v <= best:
            out.append(i)
            best = v
    return tuple(out)


# -- canonical length-3 universe ---------------------------------------------

ORDINARY_LENGTH3 = tuple(
    normalize_pattern(p) for p in itertools.permutations((1, 2, 3))
)

MULTISET_LENGTH3 = tuple(
    Pattern(p) for p in ((1, 1, 2), (1, 2, 1), (1, 2, 2), (2, 1, 1), (2, 1, 2), (2, 2, 1))
)

TRIPLE_REPEAT = Pattern((1, 1, 1))

#: The twelve canonical length-3 patterns over at least two values.
LENGTH3_PATTERNS = tuple(sorted(ORDINARY_LENGTH3 + MULTISET_LENGTH3))
