"""Mechanical derivation of closed-form counts n(p^k,2).

For each exponent i in 0..k the gcd condition gcd(p^i+1, 2p^(k-i)+1) = 1
is rewritten as a residue-class indicator: the boundary rows are immediate
(i = 0 always holds; i = k is an indicator mod 3 at argument p^k), the
rest reduce through the Euclidean trace to gcd(p^delta - a, c) and then to
indicators at argument p^delta.  Power arguments are stripped down to
first-power, prime-modulus factors, and the k+1 row contributions are
collected into a canonical formula: an integer constant plus a multiset of
indicator products.  The formula is then verifiable against the direct
count, reducible to its minimal governing modulus, and renderable in flat,
factored, or case-table form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .arith import FactorizationTimeout, odd_primes_up_to
from .counting import count_prime_power
from .indicators import Indicator, _sort_key, reduce_power
from .reduction import normalize_target, reduce


class SynthesisBlocked(RuntimeError):
    """A modulus needed by the derivation could not be factored in budget."""

    def __init__(self, k: int, modulus: int):
        super().__init__(f"derivation for k={k} blocked on unfactored modulus {modulus}")
        self.k = k
        self.modulus = modulus


@dataclass(frozen=True)
class ProductTerm:
    """A product of distinct prime-modulus indicators, kept sorted by (q, a).

    Indicators take values in {0,1}, so repeated factors collapse.
    """

    factors: tuple[Indicator, ...]

    def __post_init__(self):
        normalized = tuple(sorted(set(self.factors), key=_sort_key))
        if not normalized:
            raise ValueError("a product term needs at least one factor")
        object.__setattr__(self, "factors", normalized)

    def __call__(self, n: int) -> int:
        result = 1
        for x in self.factors:
            result *= x(n)
        return result

    def __str__(self) -> str:
        return "*".join(str(x) for x in self.factors)


def _term_key(term: ProductTerm) -> tuple:
    return (len(term.factors), tuple((x.q, x.a) for x in term.factors))


@dataclass(frozen=True)
class CountingFormula:
    """Canonical closed form for n(p^k,2): constant + multiset of products.

    Each of the k+1 exponent rows contributes exactly one summand, either 1
    (into the constant) or one product term, so
    constant + len(terms) == k + 1.
    """

    k: int
    constant: int
    terms: tuple[ProductTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(sorted(self.terms, key=_term_key)))

    def evaluate(self, p: int) -> int:
        return self.constant + sum(term(p) for term in self.terms)

    @property
    def natural_modulus(self) -> int:
        """Product of the distinct prime moduli appearing in the terms."""
        result = 1
        for q in sorted({x.q for term in self.terms for x in term.factors}):
            result *= q
        return result


@dataclass(frozen=True)
class SynthesisRow:
    """One derivation row: gcd(p^i+1, 2p^(k-i)+1) = gcd(p^exponent - residue,
    modulus), contributing `factors` (empty product = the row is always 1)."""

    i: int
    exponent: int
    residue: int
    modulus: int
    factors: tuple[Indicator, ...]


@dataclass(frozen=True)
class FormulaCheck:
    """Result of sweeping a formula against the direct gcd count."""

    k: int
    prime_bound: int
    primes_checked: int
    mismatches: tuple[tuple[int, int, int], ...]  # (p, formula value, direct count)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def synthesize_rows(k: int, cache=None) -> tuple[SynthesisRow, ...]:
    """The per-exponent reduction table behind the formula for n(p^k,2)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rows = [SynthesisRow(0, 0, 0, 1, ())]  # gcd(2, 2p^k + 1) = 1 for odd p
    for i in range(1, k):
        form = reduce(i, k - i)
        residue, c = normalize_target(form)
        if c == 1:
            rows.append(SynthesisRow(i, form.delta, 0, 1, ()))
            continue
        try:
            factors = reduce_power(residue, c, form.delta, cache)
        except FactorizationTimeout as exc:
            raise SynthesisBlocked(k, c) from exc
        rows.append(SynthesisRow(i, form.delta, residue, c, factors))
    # i = k: gcd(p^k + 1, 2p^0 + 1) = gcd(p^k + 1, 3), an indicator of -1 mod 3.
    rows.append(SynthesisRow(k, k, 2, 3, reduce_power(2, 3, k, cache)))
    return tuple(rows)


def synthesize(k: int, cache=None) -> CountingFormula:
    """Derive the canonical counting formula for n(p^k,2)."""
    rows = synthesize_rows(k, cache)
    constant = sum(1 for row in rows if not row.factors)
    terms = tuple(ProductTerm(row.factors) for row in rows if row.factors)
    return CountingFormula(k, constant, terms)


def verify_formula(formula: CountingFormula, prime_bound: int) -> FormulaCheck:
    """Compare the formula with the direct count at every odd prime <= bound."""
    mismatches = []
    checked = 0
    for p in odd_primes_up_to(prime_bound):
        checked += 1
        got = formula.evaluate(p)
        want = count_prime_power(p, formula.k)
        if got != want:
            mismatches.append((p, got, want))
    return FormulaCheck(formula.k, prime_bound, checked, tuple(mismatches))


def _patterns(formula: CountingFormula) -> tuple[list[int], dict[int, list[int | None]]]:
    """Per-prime evaluation patterns covering all residues coprime to the
    natural modulus: one pattern per listed (nonzero) residue, plus None for
    "avoids every listed residue" when such a coprime residue exists."""
    qs = sorted({x.q for term in formula.terms for x in term.factors})
    patterns: dict[int, list[int | None]] = {}
    for q in qs:
        listed = sorted({x.a for term in formula.terms for x in term.factors if x.q == q})
        opts: list[int | None] = [a for a in listed if a % q != 0]
        if q - 1 > len(opts):
            opts.append(None)
        patterns[q] = opts
    return qs, patterns


def _pattern_value(formula: CountingFormula, assign: dict[int, int | None]) -> int:
    total = formula.constant
    for term in formula.terms:
        product = 1
        for x in term.factors:
            if assign[x.q] == x.a:
                product = 0
                break
        total += product
    return total


def minimal_modulus(formula: CountingFormula) -> int:
    """Smallest divisor m of the natural modulus such that the formula is
    constant on every residue class mod m intersected with the residues
    coprime to the natural modulus.

    Residues coprime to the (square-free) natural modulus split into finitely
    many evaluation patterns per prime, so scanning pattern combinations is an
    exact, exhaustive version of scanning the coprime residues themselves: the
    answer is the product of the primes the value actually depends on.
    """
    qs, patterns = _patterns(formula)
    result = 1
    for q in qs:
        others = [p for p in qs if p != q]
        depends = False
        for combo in itertools.product(*(patterns[p] for p in others)):
            assign = dict(zip(others, combo))
            values = set()
            for pattern in patterns[q]:
                assign[q] = pattern
                values.add(_pattern_value(formula, assign))
            if len(values) > 1:
                depends = True
                break
        if depends:
            result *= q
    return result


# --- rendering ---------------------------------------------------------


def _collapsed(terms: tuple[ProductTerm, ...]) -> list[tuple[ProductTerm, int]]:
    """Multiset as (term, multiplicity) pairs, canonical order preserved."""
    return [(term, len(list(group))) for term, group in itertools.groupby(terms)]


def _fmt_summand(term: ProductTerm, count: int) -> str:
    return str(term) if count == 1 else f"{count}*{term}"


def _grouped(formula: CountingFormula):
    """Factor shared single indicators out of the term list.

    Returns (remaining [(term, count)], groups [(factor, inner_const,
    inner_terms [(cofactor, count)])]).  A factor is pulled when it appears
    in at least two summands, one of which has another factor to leave
    behind; this reproduces groupings like X*(3 + Y + Z).
    """
    remaining = _collapsed(formula.terms)
    groups = []
    all_factors = sorted(
        {x for term, _ in remaining for x in term.factors}, key=_sort_key
    )
    for x in all_factors:
        members = [(t, c) for t, c in remaining if x in t.factors]
        if sum(c for _, c in members) < 2:
            continue
        if not any(len(t.factors) > 1 for t, _ in members):
            continue
        inner_const = sum(c for t, c in members if len(t.factors) == 1)
        inner: dict[ProductTerm, int] = {}
        for t, c in members:
            if len(t.factors) > 1:
                cofactor = ProductTerm(tuple(f for f in t.factors if f != x))
                inner[cofactor] = inner.get(cofactor, 0) + c
        inner_terms = sorted(inner.items(), key=lambda item: _term_key(item[0]))
        groups.append((x, inner_const, inner_terms))
        remaining = [(t, c) for t, c in remaining if x not in t.factors]
    return remaining, groups


def _signature_table(constant: int, term_counts) -> tuple[list[int], list[tuple[tuple[str, ...], int]]]:
    """Value of constant + sum(term_counts) per residue-signature cell.

    Cells range over, for each involved prime, either one of its listed
    residues or the complement of all of them; '!' marks the complement.
    """
    primes = sorted({x.q for term, _ in term_counts for x in term.factors})
    listed = {
        q: sorted({x.a for term, _ in term_counts for x in term.factors if x.q == q})
        for q in primes
    }
    options: dict[int, list[tuple[str, int | None]]] = {}
    for q in primes:
        opts: list[tuple[str, int | None]] = [
            (str(a), a) for a in listed[q] if a % q != 0
        ]
        if q - 1 > len(opts):
            opts.append(("!" + "/".join(str(a) for a in listed[q]), None))
        options[q] = opts
    rows = []
    for combo in itertools.product(*(options[q] for q in primes)):
        assign = {q: value for q, (_, value) in zip(primes, combo)}
        total = constant
        for term, count in term_counts:
            product = 1
            for x in term.factors:
                if assign[x.q] == x.a:
                    product = 0
                    break
            total += count * product
        rows.append((tuple(label for label, _ in combo), total))
    return primes, rows


def render(formula: CountingFormula, style: str = "factored") -> str:
    """Render the formula as text: 'flat', 'factored', or 'case-table'."""
    k = formula.k
    lhs = f"n(p^{k},2)"
    if style == "flat":
        parts = [str(formula.constant)]
        parts += [_fmt_summand(t, c) for t, c in _collapsed(formula.terms)]
        return f"{lhs} = {' + '.join(parts)}"
    if style == "factored":
        remaining, groups = _grouped(formula)
        parts = [str(formula.constant)]
        parts += [_fmt_summand(t, c) for t, c in remaining]
        for x, inner_const, inner_terms in groups:
            inner = ([str(inner_const)] if inner_const else []) + [
                _fmt_summand(t, c) for t, c in inner_terms
            ]
            parts.append(f"{x}*({' + '.join(inner)})")
        return f"{lhs} = {' + '.join(parts)}"
    if style == "case-table":
        return _render_case_table(formula)
    raise ValueError(f"unknown style {style!r}")


def _render_case_table(formula: CountingFormula) -> str:
    remaining, groups = _grouped(formula)
    lhs = f"n(p^{formula.k},2)"
    if not formula.terms:
        return f"{lhs} = {formula.constant}"
    names = [f"adj{j}" for j in range(1, len(groups) + 1)]
    header = f"{lhs} = base(p)"
    if names:
        header += "".join(f" + {name}(p)" for name in names)
    lines = [header, ""]
    if remaining:
        primes, cells = _signature_table(formula.constant, remaining)
        mods = ", ".join(str(q) for q in primes)
        lines.append(f"base(p), by the class of p mod ({mods}):")
        for labels, value in cells:
            lines.append(f"  ({', '.join(labels)}) -> {value}")
    else:
        lines.append(f"base(p) = {formula.constant}")
    for name, (x, inner_const, inner_terms) in zip(names, groups):
        lines.append("")
        condition = f"p = {x.a} (mod {x.q})"
        if inner_terms:
            primes, cells = _signature_table(inner_const, inner_terms)
            mods = ", ".join(str(q) for q in primes)
            lines.append(
                f"{name}(p) = 0 when {condition}; otherwise, by the class of p mod ({mods}):"
            )
            for labels, value in cells:
                lines.append(f"  ({', '.join(labels)}) -> {value}")
        else:
            lines.append(f"{name}(p) = 0 when {condition}, else {inner_const}")
    return "\n".join(lines)
