"""Symmetry classes of pattern pairs and empirical Wilf grouping.

Reverse and complement preserve avoidance counts on regular multisets, so
unordered pattern pairs fall into orbits under {id, r, c, rc} applied to
both patterns at once.  Counting problems only need to be solved once per
orbit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import LENGTH3_PATTERNS, Pattern, PatternSet
from .enumeration import COUNT_LENGTH_BUDGET, count_avoiders
from .errors import BudgetExceeded

Pair = tuple[Pattern, Pattern]


def _as_pair(pair) -> Pair:
    if isinstance(pair, PatternSet):
        pats = tuple(pair)
    else:
        pats = []
        for p in pair:
            if isinstance(p, Pattern):
                pats.append(p)
            elif isinstance(p, str):
                pats.append(Pattern.parse(p))
            else:
                pats.append(Pattern(tuple(p)))
    if len(pats) != 2:
        raise ValueError("expected exactly two distinct patterns")
    a, b = sorted(pats)
    return (a, b)


@dataclass(frozen=True)
class PatternPairClass:
    """One orbit of an unordered pattern pair under reverse/complement."""

    representative: Pair
    members: tuple[Pair, ...]

    def __post_init__(self) -> None:
        assert self.representative == min(self.members)
        assert 4 % len(self.members) == 0

    def __contains__(self, pair) -> bool:
        return _as_pair(pair) in self.members

    def __str__(self) -> str:
        a, b = self.representative
        return f"({a},{b})[x{len(self.members)}]"


_SYMMETRIES = (
    lambda p: p,
    lambda p: p.reverse(),
    lambda p: p.complement(),
    lambda p: p.reverse().complement(),
)


def symmetry_closure(pair) -> PatternPairClass:
    """Orbit of an unordered pair under simultaneous reverse/complement."""
    a, b = _as_pair(pair)
    members = set()
    for f in _SYMMETRIES:
        fa, fb = f(a), f(b)
        members.add((fa, fb) if fa < fb else (fb, fa))
    ordered = tuple(sorted(members))
    return PatternPairClass(ordered[0], ordered)


def canonical_pair(pair) -> Pair:
    """Deterministic representative: the lexicographically least orbit member."""
    return symmetry_closure(pair).representative


def classify_all_length3() -> tuple[PatternPairClass, ...]:
    """Classify all unordered pairs of distinct canonical length-3 patterns
    over at least two values (the twelve patterns; 111 is excluded and
    handled separately by the formula catalog).

    Returns the classes sorted by representative.  Exhaustive orbit counting
    gives 21 classes over the 66 pairs; a Burnside count
    (66 + 6 + 6 + 6) / 4 confirms it.
    """
    seen: dict[Pair, PatternPairClass] = {}
    for a, b in itertools.combinations(LENGTH3_PATTERNS, 2):
        cls = symmetry_closure((a, b))
        seen.setdefault(cls.representative, cls)
    return tuple(sorted(seen.values(), key=lambda c: c.representative))


def count_vector(pair, n_max: int, m_max: int, *, m_min: int = 2,
                 override_budget: bool = False) -> tuple[int, ...]:
    """Avoider counts over the (n, m) grid, row-major in n then m."""
    a, b = _as_pair(pair)
    patterns = PatternSet((a, b))
    out = []
    for n in range(1, n_max + 1):
        for m in range(m_min, m_max + 1):
            out.append(count_avoiders(n, m, patterns, override_budget=override_budget))
    return tuple(out)


def empirical_wilf_classes(n_max: int, m_max: int, *, m_min: int = 2,
                           override_budget: bool = False
                           ) -> tuple[tuple[PatternPairClass, ...], ...]:
    """Group the symmetry classes by their counting vectors on a finite grid.

    Equality on the grid is evidence of Wilf equivalence, not a proof; the
    grouping refines as the grid grows (and may split again, as the two
    Fibonacci-like classes do once m = 3 is included).
    """
    if n_max * m_max > COUNT_LENGTH_BUDGET and not override_budget:
        raise BudgetExceeded(
            f"grid corner n={n_max}, m={m_max} exceeds the counting budget"
        )
    groups: dict[tuple[int, ...], list[PatternPairClass]] = {}
    for cls in classify_all_length3():
        vec = count_vector(cls.representative, n_max, m_max, m_min=m_min,
                           override_budget=override_budget)
        groups.setdefault(vec, []).append(cls)
    return tuple(tuple(g) for g in sorted(groups.values(),
                                          key=lambda g: g[0].representative))


def class_table() -> list[dict]:
    """Machine-readable classification table with a pointer into the
    formula catalog for classes that have one."""
    from .formulas import REGISTRY  # local import: formulas builds on classify

    rows = []
    for cls in classify_all_length3():
        a, b = cls.representative
        entry = REGISTRY.get(cls.representative)
        rows.append({
            "representative": [str(a), str(b)],
            "members": [[str(x), str(y)] for x, y in cls.members],
            "orbit_size": len(cls.members),
            "formula": None if entry is None else {
                "table_pair": list(entry.table_pair),
                "trust": entry.trust,
                "servable": entry.is_servable(),
            },
        })
    return rows
