"""Exact capped-precision p-adic scalars and unramified extension rings.

The scalar model is relative precision: a nonzero value is p**val * unit
with the unit stored modulo p**prec and coprime to p.  Valuations are exact
integers, negative allowed; exact zero is a separate sentinel.  Addition
recomputes the valuation by carrying, so cancellation surfaces as a loss of
recorded precision instead of a silently wrong digit.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

DEFAULT_PRECISION = 64


class PrecisionError(ArithmeticError):
    """A result has no trustworthy digit left at the working precision."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def int_valuation(n: int, p: int) -> int:
    """Largest k with p**k dividing the nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class Padic:
    """A p-adic number at capped relative precision.

    Nonzero values are canonical: ``unit`` is coprime to p and reduced to
    the range [1, p**prec).  The exact zero has ``unit == 0`` and no
    valuation.  Two values compare equal when their valuations match and
    their units agree modulo p to the smaller of the two precisions.
    """

    __slots__ = ("p", "val", "unit", "prec")

    def __init__(self, p: int, val: int, unit: int, prec: int = DEFAULT_PRECISION):
        if prec < 1:
            raise PrecisionError("relative precision must be at least 1")
        if unit == 0:
            val = 0
        else:
            shift = int_valuation(unit, p)
            if shift:
                if shift >= prec:
                    # every known digit of the unit is zero
                    unit = 0
                    val = 0
                else:
                    val += shift
                    unit //= p**shift
                    prec -= shift
            if unit:
                unit %= p**prec
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("Padic values are immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, p: int, prec: int = DEFAULT_PRECISION) -> "Padic":
        return cls(p, 0, 0, prec)

    @classmethod
    def one(cls, p: int, prec: int = DEFAULT_PRECISION) -> "Padic":
        return cls(p, 0, 1, prec)

    @classmethod
    def from_int(cls, p: int, n: int, prec: int = DEFAULT_PRECISION) -> "Padic":
        return cls(p, 0, n, prec)

    @classmethod
    def from_fraction(cls, p: int, q, prec: int = DEFAULT_PRECISION) -> "Padic":
        q = Fraction(q)
        if q == 0:
            return cls.zero(p, prec)
        num, den = q.numerator, q.denominator
        vn = int_valuation(num, p)
        vd = int_valuation(den, p)
        u = (num // p**vn) * pow(den // p**vd, -1, p**prec)
        return cls(p, vn - vd, u, prec)

    # -- predicates -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def valuation(self):
        """Exact valuation, or None for the exact zero."""
        return None if self.unit == 0 else self.val

    @property
    def abs_precision(self) -> int:
        """First power of p about which nothing is known."""
        return self.val + self.prec

    def unit_mod(self, k: int) -> int:
        if self.unit == 0:
            return 0
        if k > self.prec:
            raise PrecisionError(f"unit known only modulo p^{self.prec}")
        return self.unit % self.p**k

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Padic):
            if other.p != self.p:
                raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return Padic.from_int(self.p, other, self.prec)
        if isinstance(other, Fraction):
            return Padic.from_fraction(self.p, other, self.prec)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        a, b = (self, other) if self.val <= other.val else (other, self)
        dv = b.val - a.val
        m = min(a.prec, b.prec + dv)
        s = (a.unit + b.unit * a.p**dv) % a.p**m
        if s == 0:
            # cancelled below the known digits: exact zero at this precision
            return Padic.zero(a.p, a.prec)
        return Padic(a.p, a.val, s, m)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return Padic(self.p, self.val, -self.unit, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Padic.zero(self.p, min(self.prec, other.prec))
        m = min(self.prec, other.prec)
        return Padic(self.p, self.val + other.val, (self.unit * other.unit) % self.p**m, m)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by exact p-adic zero")
        if self.is_zero:
            return Padic.zero(self.p, min(self.prec, other.prec))
        m = min(self.prec, other.prec)
        inv = pow(other.unit, -1, self.p**m)
        return Padic(self.p, self.val - other.val, (self.unit * inv) % self.p**m, m)

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e == 0:
            return Padic.one(self.p, self.prec)
        if self.is_zero:
            if e < 0:
                raise ZeroDivisionError("negative power of exact zero")
            return self
        if e < 0:
            return Padic.one(self.p, self.prec) / self**(-e)
        return Padic(self.p, self.val * e, pow(self.unit, e, self.p**self.prec), self.prec)

    # -- comparison and display ------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.val != other.val:
            return False
        m = min(self.prec, other.prec)
        return (self.unit - other.unit) % self.p**m == 0

    __hash__ = None

    def balanced_unit(self) -> int:
        """Symmetric representative of the unit, handy for display."""
        if self.unit == 0:
            return 0
        pk = self.p**self.prec
        return self.unit if self.unit <= pk // 2 else self.unit - pk

    def to_fraction(self) -> Fraction:
        """Exact value of the balanced representative."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.balanced_unit()) * Fraction(self.p) ** self.val

    def __repr__(self):
        if self.is_zero:
            return f"Padic({self.p}, 0)"
        return f"Padic({self.p}, {self.p}^{self.val} * {self.balanced_unit()} + O({self.p}^{self.abs_precision}))"


# -- polynomial helpers over F_p (low-degree-first coefficient tuples) ----


def _poly_trim(f):
    d = len(f)
    while d > 0 and f[d - 1] == 0:
        d -= 1
    return tuple(f[:d])


def _poly_mulmod(a, b, mod, p):
    # mod is monic
    if not a or not b:
        return ()
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            res[i + j] = (res[i + j] + ai * bj) % p
    h = len(mod) - 1
    for i in range(len(res) - 1, h - 1, -1):
        c = res[i]
        if c == 0:
            continue
        res[i] = 0
        for j in range(h):
            res[i - h + j] = (res[i - h + j] - c * mod[j]) % p
    return _poly_trim(res)


def _poly_powmod_x(e: int, mod, p):
    """x**e modulo (mod, p); mod monic of degree >= 2."""
    result = (1,)
    base = (0, 1)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_mod(a, b, p):
    """Remainder of a modulo the nonzero polynomial b, over F_p."""
    a = list(_poly_trim(a))
    b = _poly_trim(b)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        a = list(_poly_trim(a))
        if not a:
            break
    return tuple(a)


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _minus_x(g, p):
    """g(x) - x over F_p."""
    coeffs = list(g) + [0] * max(0, 2 - len(g))
    coeffs[1] = (coeffs[1] - 1) % p
    return _poly_trim(coeffs)


def is_irreducible_mod_p(poly, p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p (Rabin's test)."""
    f = tuple(c % p for c in poly)
    h = len(f) - 1
    if h < 1 or f[-1] != 1:
        raise ValueError("expected a monic polynomial of positive degree")
    if f[0] == 0 and h > 1:
        return False  # divisible by x
    if h == 1:
        return True
    if _minus_x(_poly_powmod_x(p**h, f, p), p):
        return False  # x^{p^h} != x mod f
    for ell in _prime_factors(h):
        g = _minus_x(_poly_powmod_x(p**(h // ell), f, p), p)
        if len(_poly_gcd(g, f, p)) != 1:
            return False
    return True


def minimal_irreducible(p: int, degree: int):
    """Lexicographically least monic irreducible of given degree over F_p.

    Low coefficients enumerate first: the candidate for code c has
    constant coefficient c % p, then the next base-p digit, and so on.
    """
    for code in range(p**degree):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % p)
            c //= p
        candidate = tuple(coeffs) + (1,)
        if is_irreducible_mod_p(candidate, p):
            return candidate
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class UnramifiedRing:
    """Integers of the degree-h unramified extension of Q_p, modulo p**prec.

    Elements are polynomial residues Z[x]/(modulus, p**prec) for a fixed
    monic modulus irreducible modulo p.  The modulus is chosen
    deterministically (lexicographically least) unless one is supplied.
    """

    def __init__(self, p: int, degree: int, prec: int = DEFAULT_PRECISION, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if degree < 1:
            raise ValueError("degree must be positive")
        if prec < 1:
            raise ValueError("precision must be positive")
        self.p = p
        self.degree = degree
        self.prec = prec
        self.pk = p**prec
        if modulus is None:
            modulus = minimal_irreducible(p, degree)
        else:
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != degree + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of the ring degree")
            if not is_irreducible_mod_p(modulus, p):
                raise ValueError("modulus is reducible modulo p")
        self.modulus = modulus

    def element(self, coeffs) -> "UnramifiedElement":
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            raise ValueError("too many coefficients")
        coeffs += [0] * (self.degree - len(coeffs))
        return UnramifiedElement(self, tuple(c % self.pk for c in coeffs))

    def zero(self) -> "UnramifiedElement":
        return self.element([])

    def one(self) -> "UnramifiedElement":
        return self.element([1])

    def from_int(self, n: int) -> "UnramifiedElement":
        return self.element([n])

    def generator(self) -> "UnramifiedElement":
        """Residue class of x; only meaningful for degree >= 2."""
        if self.degree < 2:
            raise ValueError("generator needs degree >= 2; use from_int")
        return self.element([0, 1])

    def __eq__(self, other):
        return (
            isinstance(other, UnramifiedRing)
            and (self.p, self.degree, self.prec, self.modulus)
            == (other.p, other.degree, other.prec, other.modulus)
        )

    __hash__ = None

    def __repr__(self):
        return f"UnramifiedRing(p={self.p}, degree={self.degree}, prec={self.prec})"


class UnramifiedElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: UnramifiedRing, coeffs: tuple):
        self.ring = ring
        self.coeffs = coeffs

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _check(self, other):
        if not isinstance(other, UnramifiedElement) or other.ring != self.ring:
            raise ValueError("elements of different rings")

    def __add__(self, other):
        self._check(other)
        pk = self.ring.pk
        return UnramifiedElement(self.ring, tuple((a + b) % pk for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        pk = self.ring.pk
        return UnramifiedElement(self.ring, tuple(-a % pk for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        ring = self.ring
        pk, h, mod = ring.pk, ring.degree, ring.modulus
        res = [0] * (2 * h - 1) if h > 1 else [0]
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                res[i + j] = (res[i + j] + a * b) % pk
        for i in range(len(res) - 1, h - 1, -1):
            c = res[i]
            if c == 0:
                continue
            res[i] = 0
            for j in range(h):
                res[i - h + j] = (res[i - h + j] - c * mod[j]) % pk
        return UnramifiedElement(ring, tuple(res[:h]))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers not supported in the integer ring")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, UnramifiedElement):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    __hash__ = None

    def reduce_mod_p(self) -> tuple:
        return tuple(c % self.ring.p for c in self.coeffs)

    def __repr__(self):
        return f"UnramifiedElement({list(self.coeffs)} over {self.ring!r})"


def teichmuller(ring: UnramifiedRing, residue) -> UnramifiedElement:
    """Teichmuller lift: the unique (p^h - 1)-th root of unity (or zero)
    congruent to the given residue modulo p.

    Computed by iterating the q-power map, q = p^h, to its fixed point;
    each step adds at least one digit of agreement, so ring.prec steps
    suffice.
    """
    if isinstance(residue, UnramifiedElement):
        coeffs = residue.reduce_mod_p()
    elif isinstance(residue, int):
        coeffs = (residue % ring.p,)
    else:
        coeffs = tuple(int(c) % ring.p for c in residue)
    if all(c == 0 for c in coeffs):
        raise ValueError("residue must be nonzero modulo p")
    x = ring.element(coeffs)
    q = ring.p**ring.degree
    for _ in range(ring.prec):
        nxt = x**q
        if nxt == x:
            break
        x = nxt
    if x**q != x:
        raise PrecisionError("Teichmuller iteration failed to stabilize")
    return x


def valuation_of(x):
    """Valuation of a Padic or UnramifiedElement; None for exact zero.

    The unramified extension is unramified, so element valuations are the
    minimum of the coefficient valuations and stay integers.
    """
    if isinstance(x, Padic):
        return x.valuation
    if isinstance(x, UnramifiedElement):
        vals = [int_valuation(c, x.ring.p) for c in x.coeffs if c != 0]
        return min(vals) if vals else None
    raise TypeError(f"no valuation for {type(x).__name__}")
