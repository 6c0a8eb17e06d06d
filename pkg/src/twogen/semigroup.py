"""Numerical-semigroup ground truth.

A numerical semigroup is a subset of the non-negative integers containing
0, closed under addition, with finite complement (the gap set; its size is
the genus).  This module provides the two-generator basics -- genus via
Sylvester's formula, explicit gap sets -- and an exhaustive census of all
numerical semigroups up to a genus bound, built level by level on the
standard tree whose children remove one minimal generator beyond the
Frobenius number.  The census is the independent oracle the rest of the
package is validated against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_GENUS_CAP = 25


class NotCoprime(ValueError):
    """The two generators share a factor, so they generate no numerical semigroup."""


class BudgetExceeded(RuntimeError):
    """The requested genus is beyond the configured enumeration cap."""


@dataclass(frozen=True)
class TwoGeneratorSemigroup:
    """The semigroup of all non-negative combinations x*a + y*b, gcd(a,b)=1."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 2 or self.b < 2:
            raise ValueError(f"generators must be >= 2, got ({self.a}, {self.b})")
        if self.a >= self.b:
            raise ValueError(f"generators must satisfy a < b, got ({self.a}, {self.b})")
        if math.gcd(self.a, self.b) != 1:
            raise NotCoprime(f"gcd({self.a}, {self.b}) != 1")


@dataclass(frozen=True)
class SemigroupNode:
    """One census entry: minimal generators, gap set, genus."""

    generators: tuple[int, ...]
    gaps: tuple[int, ...]
    genus: int


def sylvester_genus(s: TwoGeneratorSemigroup) -> int:
    """Genus of <a,b>: (a-1)(b-1)/2."""
    return (s.a - 1) * (s.b - 1) // 2


def gap_set(s: TwoGeneratorSemigroup) -> tuple[int, ...]:
    """The positive integers not representable as x*a + y*b with x, y >= 0."""
    frobenius = s.a * s.b - s.a - s.b
    member = 1  # bit n set iff n is representable
    for n in range(1, frobenius + 1):
        if (n >= s.a and member >> (n - s.a) & 1) or (n >= s.b and member >> (n - s.b) & 1):
            member |= 1 << n
    return tuple(n for n in range(1, frobenius + 1) if not member >> n & 1)


def _minimal_generators(mask: int, width: int) -> tuple[int, ...]:
    """Minimal generators of the semigroup with membership bitmap `mask`.

    All minimal generators of a genus-g semigroup are <= 2g+1, so a window
    of width 2g+2 sees every one of them together with all sum witnesses.
    """
    elements = [i for i in range(1, width) if mask >> i & 1]
    gens = []
    for m in elements:
        for x in elements:
            if 2 * x > m:
                gens.append(m)
                break
            if mask >> (m - x) & 1:
                break
    return tuple(gens)


def enumerate_by_genus(
    max_genus: int, genus_cap: int = DEFAULT_GENUS_CAP
) -> list[list[SemigroupNode]]:
    """All numerical semigroups of genus 0..max_genus, one list per genus.

    Children of a semigroup S are S minus one minimal generator above the
    Frobenius number, which reaches every semigroup exactly once.  Levels
    are sorted by gap set, so output order is deterministic.
    """
    if max_genus < 0:
        raise ValueError(f"max_genus must be >= 0, got {max_genus}")
    if max_genus > genus_cap:
        raise BudgetExceeded(
            f"genus {max_genus} exceeds the enumeration cap {genus_cap}"
        )
    width = 2 * max_genus + 2
    levels: list[list[SemigroupNode]] = []
    current: list[tuple[int, int]] = [((1 << width) - 1, -1)]  # (mask, frobenius)
    for g in range(max_genus + 1):
        nodes = []
        next_level: list[tuple[int, int]] = []
        for mask, frobenius in current:
            gens = _minimal_generators(mask, width)
            gaps = tuple(i for i in range(1, width) if not mask >> i & 1)
            nodes.append(SemigroupNode(gens, gaps, g))
            if g < max_genus:
                for m in gens:
                    if m > frobenius:
                        next_level.append((mask & ~(1 << m), m))
        nodes.sort(key=lambda node: node.gaps)
        levels.append(nodes)
        current = next_level
    return levels


def count_two_generator(nodes: list[SemigroupNode]) -> int:
    """How many census entries have a minimal generating set of size exactly 2."""
    return sum(1 for node in nodes if len(node.generators) == 2)
