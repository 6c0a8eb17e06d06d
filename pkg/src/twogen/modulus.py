"""The governing modulus M(k) and its per-exponent ingredients.

Row i of the prime-power count (1 <= i <= k) is decided by the class of p
modulo m_k(i) = 2^(i/gcd(i,k)) - (-1)^(k/gcd(i,k)).  The radical of the
product of all m_k(i) is the modulus M(k): n(p^k,2) depends only on the
class of p mod M(k).  The radical is assembled from the per-row
factorizations (never by factoring the astronomically large product), and
rows whose m_k(i) resists the factoring budget degrade the report to an
explicit "incomplete" status rather than failing the whole computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import FactorizationTimeout, Factorization, factorize, odd_primes_up_to
from .counting import count_prime_power


@dataclass(frozen=True)
class ModulusReport:
    """M(k) with its factorization and the per-row moduli m_k(i)."""

    k: int
    per_i: tuple[tuple[int, int], ...]  # (i, m_k(i))
    modulus: int  # radical of the product of all factorable m_k(i)
    factors: Factorization
    unfactored: tuple[int, ...]  # m_k(i) values whose factorization timed out

    @property
    def complete(self) -> bool:
        return not self.unfactored


@dataclass(frozen=True)
class DependenceReport:
    """Empirical check that n(p^k,2) is constant on residue classes mod M(k)."""

    k: int
    modulus: int
    primes_checked: int
    classes: tuple[tuple[int, int], ...]  # (residue mod M, count value)
    violations: tuple[tuple[int, int, int, int], ...]  # (p, residue, got, expected)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def values(self) -> set[int]:
        return {value for _, value in self.classes}


def row_modulus(k: int, i: int) -> int:
    """m_k(i) = 2^(i/d) - (-1)^(k/d) with d = gcd(i, k)."""
    d = math.gcd(i, k)
    return 2 ** (i // d) - (-1 if (k // d) % 2 else 1)


def modulus_of(k: int, cache=None, max_iterations=None) -> ModulusReport:
    """Compute M(k) as the union of the prime supports of the m_k(i)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    per_i = tuple((i, row_modulus(k, i)) for i in range(1, k + 1))
    primes: set[int] = set()
    unfactored = []
    kwargs = {} if max_iterations is None else {"max_iterations": max_iterations}
    for _, m in per_i:
        if m == 1:
            continue
        try:
            fact = factorize(m, cache, **kwargs)
        except FactorizationTimeout:
            unfactored.append(m)
            continue
        primes.update(p for p, _ in fact.factors)
    modulus = 1
    for p in sorted(primes):
        modulus *= p
    factors = Factorization(modulus, tuple((p, 1) for p in sorted(primes)))
    return ModulusReport(k, per_i, modulus, factors, tuple(sorted(set(unfactored))))


def dependence_check(k: int, prime_bound: int, cache=None) -> DependenceReport:
    """Group odd primes p <= bound (p not dividing M(k)) by p mod M(k) and
    confirm the direct count n(p^k,2) is constant within each group."""
    report = modulus_of(k, cache)
    if not report.complete:
        raise FactorizationTimeout(report.unfactored[0], report.unfactored[0])
    m = report.modulus
    classes: dict[int, int] = {}
    violations = []
    checked = 0
    for p in odd_primes_up_to(prime_bound):
        if m % p == 0:
            continue
        checked += 1
        residue = p % m
        value = count_prime_power(p, k)
        expected = classes.setdefault(residue, value)
        if value != expected:
            violations.append((p, residue, value, expected))
    return DependenceReport(
        k, m, checked, tuple(sorted(classes.items())), tuple(violations)
    )
