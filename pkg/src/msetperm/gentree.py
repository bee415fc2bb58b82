"""Generating-tree engine: succession rules counted level by level.

A succession rule is a label-rewriting system: a root label plus a map from
a parent label to the ordered multiset of its children's labels.  Nodes at
height h correspond to the counted objects of size h, so counting a family
means iterating a label -> multiplicity profile one level at a time.

Two of the built-in rules produce children on a contiguous label interval
whose width grows with the parent label; for those the level step is done
with suffix-sum accumulation so the work per level is linear in the largest
label rather than quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

from .errors import ExplosionGuard, UnknownRule

#: Dead label: such nodes are counted but never extended.
DEAD = "N"

Label = int | str
Profile = dict[Label, int]


@dataclass(frozen=True)
class SuccessionRule:
    """A named label-rewriting system with an optional fast level step."""

    name: str
    m: int
    root: Label
    children_of: Callable[[Label], tuple[Label, ...]]
    fast_step: Callable[[Profile], Profile] | None
    grammar: str

    def children(self, label: Label) -> tuple[Label, ...]:
        """Ordered child labels of a node, exactly as the rule writes them."""
        return self.children_of(label)

    def step(self, profile: Profile) -> Profile:
        if self.fast_step is not None:
            return self.fast_step(profile)
        out: Profile = {}
        for label, count in profile.items():
            for child in self.children_of(label):
                out[child] = out.get(child, 0) + count
        return out

    def describe(self) -> str:
        """Plain-text grammar: root line plus one production per label class."""
        return self.grammar


@dataclass(frozen=True)
class LevelProfile:
    """Label -> node-count map at one height of the tree."""

    height: int
    counts: Mapping[Label, int]

    def total(self) -> int:
        return sum(self.counts.values())


def _suffix_sum_step(lo: int, shift: int) -> Callable[[Profile], Profile]:
    """Level step for interval rules: parent label a yields one child for
    every label c in [lo, a + shift], so the child profile is a suffix sum
    new[c] = sum of old[a] over a >= c - shift."""
    def step(profile: Profile) -> Profile:
        if not profile:
            return {}
        hi = max(profile) + shift
        acc = 0
        out: Profile = {}
        for c in range(hi, lo - 1, -1):
            acc += profile.get(c - shift, 0)
            if acc:
                out[c] = acc
        return out
    return step


def _rule_repetition(m: int) -> SuccessionRule:
    # children(r) = (2)(3)...(r)(r+1)
    def children(label: Label) -> tuple[Label, ...]:
        r = _expect_int(label, minimum=1)
        return tuple(range(2, r + 2))

    grammar = "root 1\n(r) -> (2) (3) ... (r) (r+1)"
    return SuccessionRule("112-122@m2", m, 1, children,
                          _suffix_sum_step(lo=2, shift=1), grammar)


def _rule_first_ascent(m: int) -> SuccessionRule:
    # children(a) = (m+a)(m+1)(m+2)...(m+a-1): the interval [m+1, m+a] with
    # the top label written first.
    def children(label: Label) -> tuple[Label, ...]:
        a = _expect_int(label, minimum=1)
        return (m + a,) + tuple(range(m + 1, m + a))

    grammar = f"root 1\n(a) -> (a+{m}) ({m + 1}) ({m + 2}) ... (a+{m - 1})"
    return SuccessionRule("122-123", m, 1, children,
                          _suffix_sum_step(lo=m + 1, shift=m), grammar)


def _rule_descent_offset(m: int) -> SuccessionRule:
    # root 1; 1 -> 2; 2 -> 2 1 N^(m-2) 2; N -> nothing
    def children(label: Label) -> tuple[Label, ...]:
        if label == DEAD:
            return ()
        v = _expect_int(label, minimum=1, maximum=2)
        if v == 1:
            return (2,)
        return (2, 1) + (DEAD,) * (m - 2) + (2,)

    two_rhs = " ".join(["2", "1"] + ["N"] * (m - 2) + ["2"])
    grammar = f"root 1\n1 -> 2\n2 -> {two_rhs}\nN ->"
    return SuccessionRule("211-213", m, 1, children, None, grammar)


def _rule_first_descent(m: int) -> SuccessionRule:
    # root 1; 1 -> m+1; m+1 -> (m+1) m^m; m -> (m+1) m^(m-1)
    def children(label: Label) -> tuple[Label, ...]:
        v = _expect_int(label, minimum=1)
        if v == 1:
            return (m + 1,)
        if v == m + 1:
            return (m + 1,) + (m,) * m
        if v == m:
            return (m + 1,) + (m,) * (m - 1)
        raise AssertionError(f"label {v} is unreachable in rule 122-213")

    top = " ".join([str(m + 1)] + [str(m)] * m)
    mid = " ".join([str(m + 1)] + [str(m)] * (m - 1))
    grammar = f"root 1\n1 -> {m + 1}\n{m + 1} -> {top}\n{m} -> {mid}"
    return SuccessionRule("122-213", m, 1, children, None, grammar)


def _expect_int(label: Label, minimum: int, maximum: int | None = None) -> int:
    # Label 0 (and anything below the minimum) is unreachable by
    # construction in every built-in rule; hitting one means the engine is
    # broken, so fail loudly instead of inventing children.
    if not isinstance(label, int) or label < minimum or \
            (maximum is not None and label > maximum):
        raise AssertionError(f"unreachable label {label!r}")
    return label


_BUILTIN = {
    "112-122@m2": _rule_repetition,
    "122-123": _rule_first_ascent,
    "211-213": _rule_descent_offset,
    "122-213": _rule_first_descent,
}

#: Rule name -> the pattern pair whose avoiders the tree counts.
RULE_PATTERN_PAIRS = {
    "112-122@m2": ("112", "122"),
    "122-123": ("122", "123"),
    "211-213": ("211", "213"),
    "122-213": ("122", "213"),
}


def builtin_rule(name: str, m: int = 2) -> SuccessionRule:
    """One of the four built-in succession rules.

    "112-122@m2" is only valid at m = 2; the other three take any m >= 2.
    """
    if name not in _BUILTIN:
        raise UnknownRule(f"unknown rule {name!r}; choose from {sorted(_BUILTIN)}")
    if m < 2:
        raise UnknownRule(f"rule {name!r} needs m >= 2")
    if name == "112-122@m2" and m != 2:
        raise UnknownRule("rule '112-122@m2' fixes m = 2")
    return _BUILTIN[name](m)


def level_profile(rule: SuccessionRule, height: int) -> LevelProfile:
    """Label multiplicities at the given height (root sits at height 0)."""
    if height < 0:
        raise ValueError("height must be nonnegative")
    profile: Profile = {rule.root: 1}
    for _ in range(height):
        profile = rule.step(profile)
    return LevelProfile(height, profile)


def count_at_height(rule: SuccessionRule, height: int) -> int:
    """Number of tree nodes at the given height."""
    return level_profile(rule, height).total()


def iter_branches(rule: SuccessionRule, height: int) -> Iterator[tuple[Label, ...]]:
    """Stream all root-to-height label sequences in rule order."""
    if height < 0:
        raise ValueError("height must be nonnegative")
    path: list[Label] = [rule.root]

    def rec(depth: int) -> Iterator[tuple[Label, ...]]:
        if depth == height:
            yield tuple(path)
            return
        for child in rule.children(path[-1]):
            path.append(child)
            yield from rec(depth + 1)
            path.pop()

    yield from rec(0)


def expand_branches(rule: SuccessionRule, height: int,
                    limit: int | None = 100_000) -> list[tuple[Label, ...]]:
    """Materialize the branches of iter_branches, guarding against blowup."""
    out = []
    for branch in iter_branches(rule, height):
        if limit is not None and len(out) >= limit:
            raise ExplosionGuard(
                f"more than {limit} branches at height {height}; "
                f"use iter_branches to stream them")
        out.append(branch)
    return out
