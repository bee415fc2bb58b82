"""The three constructive correspondences behind the counting results.

* balanced X/Y words of length 2n  <->  (112,122)-avoiders on [n]_2
* label sequences and lattice paths  <->  (122,123)-avoiders on [n]_m
* the minima-fixing map between (122,132)- and (122,123)-avoiders

Each direction checks its domain by default (an occurrence of a forbidden
pattern raises NotInDomain naming the positions); the checks can be turned
off for bulk round-trip testing.
"""

from __future__ import annotations

from bisect import bisect_right, insort
from dataclasses import dataclass
from typing import Iterator

from .core import (
    MultisetPermutation,
    PatternSet,
    first_ascent,
    find_occurrence,
    left_to_right_minima,
)
from .errors import (
    InvalidDyck,
    InvalidLabelSequence,
    InvalidPath,
    NotInDomain,
)

PAIR_112_122 = PatternSet.of("112", "122")
PAIR_122_123 = PatternSet.of("122", "123")
PAIR_122_132 = PatternSet.of("122", "132")


def _require_avoids(sigma: MultisetPermutation, patterns: PatternSet,
                    check: bool) -> None:
    if not check:
        return
    for p in patterns:
        occ = find_occurrence(sigma, p)
        if occ is not None:
            raise NotInDomain(
                f"{sigma} contains {p} at positions {','.join(map(str, occ))}")


# -- Dyck words ----------------------------------------------------------------

@dataclass(frozen=True)
class DyckWord:
    """A balanced word over {X, Y}: #X = #Y and no prefix has more Y than X."""

    letters: str

    def __post_init__(self) -> None:
        depth = 0
        for ch in self.letters:
            if ch == "X":
                depth += 1
            elif ch == "Y":
                depth -= 1
            else:
                raise InvalidDyck(f"letter {ch!r} is neither X nor Y")
            if depth < 0:
                raise InvalidDyck(f"prefix of {self.letters} has more Y than X")
        if depth != 0:
            raise InvalidDyck(f"{self.letters} has unequal numbers of X and Y")

    @property
    def half_length(self) -> int:
        return len(self.letters) // 2

    def __str__(self) -> str:
        return self.letters


def enumerate_dyck_words(n: int) -> Iterator[DyckWord]:
    """All Dyck words of length 2n, lexicographically with X < Y."""
    word: list[str] = []

    def rec(xs: int, ys: int) -> Iterator[DyckWord]:
        if xs == n and ys == n:
            yield DyckWord("".join(word))
            return
        if xs < n:
            word.append("X")
            yield from rec(xs + 1, ys)
            word.pop()
        if ys < xs:
            word.append("Y")
            yield from rec(xs, ys + 1)
            word.pop()

    yield from rec(0, 0)


def dyck_to_perm(word: DyckWord, *, check: bool = True) -> MultisetPermutation:
    """Replace the X's by n, n-1, ..., 1 and the Y's likewise.

    The result is a permutation on [n]_2 avoiding 112 and 122.
    """
    n = word.half_length
    out = [0] * len(word.letters)
    next_x, next_y = n, n
    for i, ch in enumerate(word.letters):
        if ch == "X":
            out[i] = next_x
            next_x -= 1
        else:
            out[i] = next_y
            next_y -= 1
    sigma = MultisetPermutation.regular(out, n, 2) if n else MultisetPermutation((), 0, ())
    _require_avoids(sigma, PAIR_112_122, check)
    return sigma


def perm_to_dyck(sigma: MultisetPermutation, *, check: bool = True) -> DyckWord:
    """First occurrences become X, second occurrences become Y."""
    if sigma.alphabet_size > 0 and sigma.regular_m != 2:
        raise NotInDomain("the word correspondence needs a regular multiset with m = 2")
    _require_avoids(sigma, PAIR_112_122, check)
    seen: set[int] = set()
    chars = []
    for v in sigma.letters:
        chars.append("Y" if v in seen else "X")
        seen.add(v)
    # DyckWord.__post_init__ re-checks prefix balance, which is guaranteed
    # here: a Y before its X would mean a second occurrence preceding a first.
    return DyckWord("".join(chars))


# -- label sequences and lattice paths ------------------------------------------

@dataclass(frozen=True)
class LabelSequence:
    """A branch of the first-ascent generating tree: (a_1, ..., a_{n+1}) with
    a_1 = 1, a_2 = m+1, and m+1 <= a_{i} <= a_{i-1} + m afterwards."""

    values: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        vals = self.values
        if self.m < 1:
            raise InvalidLabelSequence("need m >= 1")
        if not vals or vals[0] != 1:
            raise InvalidLabelSequence("label sequences start with 1")
        for i in range(1, len(vals)):
            lo, hi = self.m + 1, vals[i - 1] + self.m
            if not lo <= vals[i] <= hi:
                raise InvalidLabelSequence(
                    f"label {vals[i]} at index {i + 1} outside [{lo}, {hi}]")

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.values)

    @classmethod
    def parse(cls, text: str, m: int) -> "LabelSequence":
        return cls(tuple(int(t) for t in text.replace(",", " ").split()), m)


def perm_to_labels(sigma: MultisetPermutation, *, check: bool = True) -> LabelSequence:
    """First-ascent positions of the restrictions to letters <= k, k = 0..n.

    This reads the tree branch of sigma without building the tree: the
    restriction to [k] is exactly the ancestor of sigma at height k.
    """
    m = sigma.regular_m
    if m is None:
        raise NotInDomain("label sequences are defined on regular multisets")
    _require_avoids(sigma, PAIR_122_123, check)
    labels = [first_ascent(sigma.restrict(k).letters)
              for k in range(sigma.alphabet_size + 1)]
    return LabelSequence(tuple(labels), m)


def labels_to_perm(seq: LabelSequence, *, check: bool = True) -> MultisetPermutation:
    """Replay the insertion history encoded by a label sequence.

    Step i inserts the new largest letter i: the child label c of a parent
    labelled a fixes the insertion slot j (j = 1 when c = a + m, else
    j = c - m + 1), one copy goes before position j, and the remaining m - 1
    copies go to the front.
    """
    m = seq.m
    letters: list[int] = []
    for i in range(1, seq.n + 1):
        a, c = seq.values[i - 1], seq.values[i]
        j = 1 if c == a + m else c - m + 1
        if not 1 <= j <= max(a, 1):
            raise InvalidLabelSequence(f"label {c} after {a} has no insertion slot")
        letters.insert(j - 1, i)
        letters[:0] = [i] * (m - 1)
    n = seq.n
    sigma = MultisetPermutation.regular(letters, n, m) if n else MultisetPermutation((), 0, ())
    _require_avoids(sigma, PAIR_122_123, check)
    return sigma


@dataclass(frozen=True)
class LatticePath:
    """Up/right path from (0,0) to (1 + m*n, n) staying off the line
    x = m*y + 1 everywhere except the final point."""

    steps: str
    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InvalidPath("need m >= 1")
        ups = self.steps.count("U")
        rights = self.steps.count("R")
        if ups + rights != len(self.steps):
            raise InvalidPath("steps must be a word over {U, R}")
        n = ups
        if rights != 1 + self.m * n:
            raise InvalidPath(
                f"{ups} up-steps need exactly {1 + self.m * n} right-steps")
        x = y = 0
        for k, ch in enumerate(self.steps):
            if ch == "U":
                y += 1
            else:
                x += 1
            final = k == len(self.steps) - 1
            if x == self.m * y + 1 and not final:
                raise InvalidPath(
                    f"path touches the boundary line at ({x},{y}) before the end")

    @property
    def n(self) -> int:
        return self.steps.count("U")

    def __str__(self) -> str:
        return self.steps


def path_to_labels(path: LatticePath) -> LabelSequence:
    """Record m*y - x + 1 at the origin and after every up-step."""
    m = path.m
    labels = [1]
    x = y = 0
    for ch in path.steps:
        if ch == "U":
            y += 1
            labels.append(m * y - x + 1)
        else:
            x += 1
    return LabelSequence(tuple(labels), m)


def labels_to_path(seq: LabelSequence) -> LatticePath:
    """Inverse of path_to_labels: the i-th up-step happens at
    x = m*i + 1 - a_{i+1}."""
    m = seq.m
    n = seq.n
    steps = []
    x = 0
    for i in range(1, n + 1):
        target = m * i + 1 - seq.values[i]
        if target < x:
            raise InvalidLabelSequence(
                f"label {seq.values[i]} would require stepping left")
        steps.append("R" * (target - x))
        steps.append("U")
        x = target
    steps.append("R" * (1 + m * n - x))
    return LatticePath("".join(steps), m)


def enumerate_paths(n: int, m: int) -> Iterator[LatticePath]:
    """All paths from (0,0) to (1 + m*n, n) off the boundary line until the
    end, by direct search."""
    width = 1 + m * n
    steps: list[str] = []

    def ok(x: int, y: int) -> bool:
        final = (x == width and y == n)
        return final or x != m * y + 1

    def rec(x: int, y: int) -> Iterator[LatticePath]:
        if x == width and y == n:
            yield LatticePath("".join(steps), m)
            return
        if y < n and ok(x, y + 1):
            steps.append("U")
            yield from rec(x, y + 1)
            steps.pop()
        if x < width and ok(x + 1, y):
            steps.append("R")
            yield from rec(x + 1, y)
            steps.pop()

    yield from rec(0, 0)


# -- the minima-fixing map -------------------------------------------------------

def _minima_split(sigma: MultisetPermutation):
    minima = set(left_to_right_minima(sigma))
    free = [i for i in range(1, sigma.length + 1) if i not in minima]
    return minima, free


def simion_schmidt_f(sigma: MultisetPermutation, *, check: bool = True
                     ) -> MultisetPermutation:
    """Keep the left-to-right minima; refill the other slots left to right
    with the removed letters in decreasing order.

    Maps (122,132)-avoiders to (122,123)-avoiders with the same minima.
    """
    _require_avoids(sigma, PAIR_122_132, check)
    _, free = _minima_split(sigma)
    letters = list(sigma.letters)
    removed = sorted((letters[i - 1] for i in free), reverse=True)
    for slot, value in zip(free, removed):
        letters[slot - 1] = value
    out = MultisetPermutation(tuple(letters), sigma.alphabet_size, sigma.multiplicity)
    _require_avoids(out, PAIR_122_123, check)
    return out


def simion_schmidt_g(tau: MultisetPermutation, *, check: bool = True
                     ) -> MultisetPermutation:
    """Inverse of simion_schmidt_f: refill each free slot with the smallest
    unused letter exceeding the closest minimum to its left."""
    _require_avoids(tau, PAIR_122_123, check)
    minima, free = _minima_split(tau)
    letters = list(tau.letters)
    pool: list[int] = []
    for i in free:
        insort(pool, letters[i - 1])
    floor = 0
    out = list(letters)
    free_set = set(free)
    for i in range(1, len(letters) + 1):
        if i in free_set:
            k = bisect_right(pool, floor)
            if k == len(pool):
                raise AssertionError("no letter above the current minimum left")
            out[i - 1] = pool.pop(k)
        else:
            floor = letters[i - 1]
    res = MultisetPermutation(tuple(out), tau.alphabet_size, tau.multiplicity)
    _require_avoids(res, PAIR_122_132, check)
    return res
