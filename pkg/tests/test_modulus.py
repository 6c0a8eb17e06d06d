import math

import pytest

from twogen import modulus as modulus_mod
from twogen.arith import FactorizationTimeout, factorize
from twogen.modulus import dependence_check, modulus_of, row_modulus

TABLE_1_TO_10 = [3, 3, 15, 21, 255, 465, 36465, 82677, 30998055, 16548735]


def test_row_modulus_examples():
    assert row_modulus(9, 5) == 33
    assert row_modulus(9, 7) == 129
    assert row_modulus(2, 1) == 1
    assert row_modulus(10, 8) == 17


def test_row_modulus_odd_k_form():
    for k in (1, 3, 5, 7, 9, 11):
        for i in range(1, k + 1):
            d = math.gcd(i, k)
            assert row_modulus(k, i) == 2 ** (i // d) + 1


def test_first_ten_moduli():
    for k, expected in enumerate(TABLE_1_TO_10, start=1):
        assert modulus_of(k).modulus == expected


def test_modulus_9_prime_support():
    report = modulus_of(9)
    assert report.modulus == 30998055
    assert [p for p, _ in report.factors.factors] == [3, 5, 11, 17, 43, 257]


def test_modulus_3_per_row():
    report = modulus_of(3)
    assert report.per_i == ((1, 3), (2, 5), (3, 3))
    assert report.modulus == 15
    assert report.complete


def test_modulus_squarefree_and_odd():
    for k in range(1, 17):
        report = modulus_of(k)
        assert report.modulus % 2 == 1
        assert all(e == 1 for _, e in report.factors.factors)
        product = 1
        for p, _ in report.factors.factors:
            product *= p
        assert product == report.modulus


def test_modulus_rejects_bad_k():
    with pytest.raises(ValueError):
        modulus_of(0)


def test_incomplete_report(monkeypatch):
    real = factorize

    def flaky(n, cache=None, **kwargs):
        if n == 33:
            raise FactorizationTimeout(n, n)
        return real(n, cache, **kwargs)

    monkeypatch.setattr(modulus_mod, "factorize", flaky)
    report = modulus_of(9)
    assert not report.complete
    assert report.unfactored == (33,)
    # 33 = 3 * 11; 3 still enters through other rows, 11 is lost
    assert 11 not in [p for p, _ in report.factors.factors]
    assert report.modulus == 30998055 // 11


def test_dependence_small_k():
    report = dependence_check(2, 1000)
    assert report.ok
    assert report.values == {3}
    assert report.modulus == 3


def test_dependence_k4_values():
    report = dependence_check(4, 10_000)
    assert report.ok
    assert report.values == {4, 5}
    assert report.modulus == 21
    # primes dividing M(k) are excluded from the grouping
    assert all(residue % 3 != 0 and residue % 7 != 0 for residue, _ in report.classes)


def test_dependence_k9():
    report = dependence_check(9, 2000)
    assert report.ok
    assert report.modulus == 30998055
