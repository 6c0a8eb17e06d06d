"""Residue-class indicator algebra.

An Indicator with residue a and prime modulus q is the 0/1 function that
is 0 exactly on the class a mod q; equivalently it is 1 iff
gcd(n - a, q) = 1, which is how it captures "this gcd equals 1" conditions.
For composite moduli the indicator splits into one factor per distinct
prime, so it only ever depends on the radical of the modulus.

The two exponent-stripping tools rewrite an indicator evaluated at a power
n^s as a product of indicators evaluated at n itself: first the invertible
part of the exponent is absorbed into the residue (the RSA trick: raising
to an exponent coprime to q-1 permutes residues), then the remaining
exponent t | q-1 either kills the condition entirely (the residue has no
t-th root) or splits it over the t roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import factorize, is_prime, mod_inverse, primitive_root


@dataclass(frozen=True)
class Indicator:
    """1 if n is outside the class a mod q (q prime), else 0."""

    a: int
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"modulus must be prime, got {self.q}")
        object.__setattr__(self, "a", self.a % self.q)

    def __call__(self, n: int) -> int:
        return 0 if (n - self.a) % self.q == 0 else 1

    def __str__(self) -> str:
        return f"X({self.a},{self.q})"


def _sort_key(x: Indicator) -> tuple[int, int]:
    return (x.q, x.a)


@dataclass(frozen=True)
class CompositeIndicator:
    """Indicator mod arbitrary q >= 2, expanded over q's distinct primes."""

    a: int
    q: int
    factors: tuple[Indicator, ...]

    def __call__(self, n: int) -> int:
        result = 1
        for x in self.factors:
            result *= x(n)
        return result


def decompose(a: int, q: int, cache=None) -> CompositeIndicator:
    """Split the indicator mod q into one prime-modulus factor per prime of q."""
    if q < 2:
        raise ValueError(f"modulus must be >= 2, got {q}")
    primes = [p for p, _ in factorize(q, cache).factors]
    factors = tuple(Indicator(a % p, p) for p in sorted(primes))
    return CompositeIndicator(a, q, factors)


def strip_exponent(x: Indicator, s: int) -> tuple[Indicator, int]:
    """Rewrite x evaluated at n^s as an indicator at n^t with t | q-1.

    Splits the exponent (reduced mod q-1, since n^s and n^s' agree on all
    residues whenever s = s' (mod q-1) and both are >= 1) as t*e with
    t = gcd of the reduced exponent and q-1, and e invertible mod q-1.
    Raising to e permutes residues mod q, with inverse d = e^-1 mod q-1,
    so the condition n^s = a becomes n^t = a^d.
    """
    if s < 1:
        raise ValueError(f"exponent must be >= 1, got {s}")
    q = x.q
    group_order = q - 1
    if group_order == 1:
        return x, 1
    reduced = (s - 1) % group_order + 1
    t = math.gcd(reduced, group_order)
    step = group_order // t
    e = reduced // t
    while math.gcd(e, group_order) != 1:
        e += step
    d = mod_inverse(e, group_order)
    return Indicator(pow(x.a, d, q), q), t


def expand_power(x: Indicator, s: int) -> tuple[Indicator, ...]:
    """Rewrite x at n^s (s dividing q-1) as a product of indicators at n.

    Returns the empty tuple -- the constant-1 product -- when the residue
    has no s-th root mod q.  Otherwise the condition n^s = a splits over
    the s roots g^(i + j*(q-1)/s) of a, g the smallest primitive root.
    """
    q = x.q
    if s < 1 or (q - 1) % s != 0:
        raise ValueError(f"exponent {s} must divide q - 1 = {q - 1}")
    if s == 1:
        return (x,)
    if x.a == 0:
        # n^s is divisible by q exactly when n is.
        return (x,)
    g = primitive_root(q)
    cosets = (q - 1) // s
    base = None
    power = 1  # g^(s*i) as i advances
    multiplier = pow(g, s, q)
    for i in range(cosets):
        if power == x.a:
            base = i
            break
        power = power * multiplier % q
    if base is None:
        return ()
    roots = [pow(g, base + j * cosets, q) for j in range(s)]
    return tuple(sorted((Indicator(r, q) for r in roots), key=_sort_key))


def reduce_power(a: int, q: int, s: int, cache=None) -> tuple[Indicator, ...]:
    """Fully reduce the indicator of a mod q at argument n^s to first-power,
    prime-modulus factors.  The empty tuple is the constant 1."""
    if q < 2:
        raise ValueError(f"modulus must be >= 2, got {q}")
    if s < 1:
        raise ValueError(f"exponent must be >= 1, got {s}")
    collected: set[Indicator] = set()
    for x in decompose(a, q, cache).factors:
        if s > 1:
            x, t = strip_exponent(x, s)
            collected.update(expand_power(x, t))
        else:
            collected.add(x)
    return tuple(sorted(collected, key=_sort_key))
