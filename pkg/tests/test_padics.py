import random
from fractions import Fraction

import pytest

from lubintate2d.padics import (
    DEFAULT_PRECISION,
    Padic,
    PrecisionError,
    UnramifiedRing,
    int_valuation,
    is_irreducible_mod_p,
    is_prime,
    minimal_irreducible,
    teichmuller,
    valuation_of,
)


def test_int_valuation():
    assert int_valuation(12, 2) == 2
    assert int_valuation(12, 3) == 1
    assert int_valuation(-8, 2) == 3
    assert int_valuation(7, 5) == 0
    with pytest.raises(ValueError):
        int_valuation(0, 2)


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert not is_prime(0)


def test_construction_canonicalizes_unit():
    a = Padic(2, 0, 12, 8)  # 12 = 2^2 * 3
    assert a.val == 2
    assert a.unit == 3
    assert a.prec == 6  # absolute precision preserved


def test_exact_zero_sentinel():
    z = Padic.zero(3)
    assert z.is_zero
    assert z.valuation is None
    assert Padic.from_int(3, 0).is_zero
    # a unit all of whose known digits vanish collapses to zero
    assert Padic(2, 0, 8, 3).is_zero


def test_add_and_sub_basics():
    one = Padic.from_int(2, 1)
    two = Padic.from_int(2, 2)
    assert one + two == Padic.from_int(2, 3)
    assert (one - one).is_zero
    assert one * two == Padic(2, 1, 1)
    assert two.valuation == 1


def test_mul_valuations_add():
    a = Padic(5, 2, 3)
    b = Padic(5, -1, 7)
    assert (a * b).valuation == 1
    assert (a * b).unit_mod(2) == 21
    assert (a / b).valuation == 3


def test_cancellation_reduces_precision():
    a = Padic(2, 0, 1, 4)
    b = Padic(2, 0, 9, 4)  # agrees with a modulo 2^3
    d = a - b
    assert d.valuation == 3
    assert d.prec == 1
    assert d.unit == 1


def test_fraction_roundtrip():
    half = Padic.from_fraction(2, Fraction(1, 2))
    assert half.valuation == -1
    assert half.unit == 1
    assert half.to_fraction() == Fraction(1, 2)
    c = Padic.from_fraction(3, Fraction(-7, 9))
    assert c.valuation == -2
    assert c.to_fraction() == Fraction(-7, 9)


def test_pow():
    half = Padic.from_fraction(2, Fraction(1, 2))
    assert (half**2).valuation == -2
    assert (half**0) == Padic.one(2)
    assert (half**-1) == Padic.from_int(2, 2)
    assert (Padic.zero(2) ** 3).is_zero


def test_eq_uses_min_shared_precision():
    a = Padic(2, 0, 1, 60)
    b = Padic(2, 0, 1 + 2**50, 50)
    c = Padic(2, 0, 1 + 2**40, 50)
    assert a == b  # units agree modulo 2^50
    assert a != c
    assert a != Padic.zero(2)


def test_division_errors():
    with pytest.raises(ZeroDivisionError):
        Padic.one(2) / Padic.zero(2)
    with pytest.raises(ValueError):
        Padic.one(2) * Padic.one(3)


def test_mul_valuation_additivity_random():
    rng = random.Random(402)
    for p in (2, 3, 5):
        for _ in range(200):
            m = rng.randrange(-(10**6), 10**6)
            n = rng.randrange(-(10**6), 10**6)
            if m == 0 or n == 0:
                continue
            a = Padic.from_int(p, m)
            b = Padic.from_int(p, n)
            assert (a * b).valuation == a.valuation + b.valuation
            s = a + b
            if not s.is_zero:
                assert s.valuation >= min(a.valuation, b.valuation)
            assert (a * b).to_fraction() == m * n or abs(m * n) > p**40


def test_minimal_irreducible_frozen():
    # frozen first-in-lex-order moduli, verified reducible predecessors below
    assert minimal_irreducible(2, 1) == (0, 1)
    assert minimal_irreducible(3, 2) == (1, 0, 1)
    assert minimal_irreducible(2, 5) == (1, 0, 1, 0, 0, 1)


def brute_force_irreducible(poly, p):
    """Check irreducibility by trial division over F_p; degrees stay tiny."""

    def poly_eval_divide(f, g):
        # does g divide f over F_p? long division remainder test
        f = list(f)
        ginv = pow(g[-1], -1, p)
        while len(f) >= len(g) and any(f):
            while f and f[-1] == 0:
                f.pop()
            if len(f) < len(g):
                break
            c = f[-1] * ginv % p
            shift = len(f) - len(g)
            for j, gj in enumerate(g):
                f[shift + j] = (f[shift + j] - c * gj) % p
        return not any(f)

    h = len(poly) - 1
    for d in range(1, h // 2 + 1):
        for code in range(p**d):
            coeffs = []
            c = code
            for _ in range(d):
                coeffs.append(c % p)
                c //= p
            g = tuple(coeffs) + (1,)
            if poly_eval_divide(poly, g):
                return False
    return True


def test_is_irreducible_matches_brute_force():
    for p, h in ((2, 4), (2, 5), (3, 3), (5, 2)):
        for code in range(p**h):
            coeffs = []
            c = code
            for _ in range(h):
                coeffs.append(c % p)
                c //= p
            poly = tuple(coeffs) + (1,)
            assert is_irreducible_mod_p(poly, p) == brute_force_irreducible(poly, p), poly


def test_unramified_ring_modulus_is_satisfied():
    ring = UnramifiedRing(2, 5, prec=16)
    g = ring.generator()
    assert g**5 + g**2 + ring.one() == ring.zero()


def test_unramified_arithmetic():
    ring = UnramifiedRing(3, 2, prec=8)
    a = ring.element([1, 2])
    b = ring.element([2, 1])
    assert a + b == ring.element([3, 3])
    assert a - a == ring.zero()
    # (1 + 2x)(2 + x) = 2 + 5x + 2x^2, and x^2 = -1 for modulus x^2 + 1
    assert a * b == ring.element([0, 5])
    assert a * ring.one() == a
    assert valuation_of(ring.element([9, 6])) == 1
    assert valuation_of(ring.zero()) is None


def test_teichmuller_5adic_frozen():
    # oracle: iterate x -> x^5 mod 5^4 from 2 until fixed
    x = 2
    while pow(x, 5, 5**4) != x:
        x = pow(x, 5, 5**4)
    assert x == 182  # frozen
    ring = UnramifiedRing(5, 1, prec=4)
    w = teichmuller(ring, 2)
    assert w.coeffs == (182,)
    assert w**4 == ring.one()


def test_teichmuller_binary_degree_five():
    ring = UnramifiedRing(2, 5, prec=16)
    w = teichmuller(ring, ring.generator())
    assert w.reduce_mod_p() == (0, 1, 0, 0, 0)
    assert w**31 == ring.one()
    assert w != ring.one()
    # 31 is prime, so any nontrivial 31st root of unity generates
    assert (w**5) ** 31 == ring.one()


def test_teichmuller_of_one_is_one():
    ring = UnramifiedRing(7, 2, prec=6)
    assert teichmuller(ring, 1) == ring.one()
    with pytest.raises(ValueError):
        teichmuller(ring, 0)


def test_teichmuller_qth_power_stability():
    rng = random.Random(77)
    for p, h in ((3, 2), (2, 3)):
        ring = UnramifiedRing(p, h, prec=12)
        q = p**h
        for _ in range(10):
            coeffs = [rng.randrange(p) for _ in range(h)]
            if all(c == 0 for c in coeffs):
                continue
            w = teichmuller(ring, coeffs)
            assert w**q == w
            assert w.reduce_mod_p() == tuple(coeffs)


def test_valuation_of_type_error():
    with pytest.raises(TypeError):
        valuation_of("nope")


def test_precision_floor():
    with pytest.raises(PrecisionError):
        Padic(2, 0, 1, 0)
    assert Padic.one(2, 1).prec == 1
